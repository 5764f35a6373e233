#pragma once

#include "tada/labels.hpp"
#include "tada/sketched_adjacency.hpp"

#include <string>
#include <utility>
#include <vector>

namespace tada {

/// Learnable weights of the feature expander: one linear+ReLU branch for the
/// sketched structure, one for the attributes, and a single-layer softmax
/// classifier head used only for pre-training.
struct ExpanderParams {
  Matrix w_topo;  // k x h
  Matrix w_attr;  // d x h
  Matrix w_cls;   // h x |Y|
  Vector b_cls;   // |Y|
  double gamma = 0.5;
  Index hidden_dim = 0;
};

struct InitialFeatures {
  Matrix h0;  // n x h
  double gamma = 0.5;
  std::vector<double> loss_trace;  // one entry per pre-training epoch
};

struct PretrainConfig {
  Index hidden_dim = 128;
  double gamma = 0.5;
  Index epochs = 128;
  double lr = 0.05;
  std::uint64_t seed = 0;
};

/// max(0, M * W).
template <typename DerivedM, typename DerivedW>
Matrix relu_affine(const Eigen::MatrixBase<DerivedM>& m, const Eigen::MatrixBase<DerivedW>& w) {
  if (m.cols() != w.rows()) throw std::invalid_argument("relu_affine: inner dimensions differ");
  return (m.derived() * w.derived()).cwiseMax(0.0);
}

/// (1 - gamma) * H_attr + gamma * H_topo.
template <typename DerivedA, typename DerivedT>
Matrix combine(const Eigen::MatrixBase<DerivedA>& h_attr, const Eigen::MatrixBase<DerivedT>& h_topo,
               double gamma) {
  if (h_attr.rows() != h_topo.rows() || h_attr.cols() != h_topo.cols())
    throw std::invalid_argument("combine: shapes differ");
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw std::invalid_argument("combine: gamma outside [0,1]");
  return (1.0 - gamma) * h_attr.derived() + gamma * h_topo.derived();
}

/// Zero mean, unit variance per column; near-constant columns are centered
/// only.
Matrix standardize_columns(const Matrix& x);

ExpanderParams init_expander_params(Index k, Index d, Index hidden, Index classes, double gamma,
                                    std::uint64_t seed);

/// Deterministic forward pass: H_topo = relu(A' W_topo), H_attr = relu(X
/// W_attr), H0 = (1-gamma) H_attr + gamma H_topo. Takes X exactly as given.
InitialFeatures forward_initial_features(const SketchedAdjacency& a, const Matrix& x,
                                         const ExpanderParams& p);

/// Softmax rows of the classifier head applied to H0.
Matrix classifier_probabilities(const ExpanderParams& p, const Matrix& h0);

/// Mean softmax cross-entropy over train-tagged nodes, as a pure function of
/// the parameters (used by the finite-difference checks).
double pretrain_loss(const SketchedAdjacency& a, const Matrix& x, const LabelVector& y,
                     const ExpanderParams& p);

struct ExpanderGradients {
  Matrix w_topo, w_attr, w_cls;
  Vector b_cls;
};

/// Analytic gradient of pretrain_loss with respect to every parameter.
ExpanderGradients pretrain_gradients(const SketchedAdjacency& a, const Matrix& x,
                                     const LabelVector& y, const ExpanderParams& p);

/// Full-batch constant-step gradient descent for cfg.epochs epochs on the
/// train split. Attributes are column-standardized once up front; the returned
/// H0 is the forward pass of the final parameters on the standardized inputs.
std::pair<ExpanderParams, InitialFeatures> pretrain(const SketchedAdjacency& a, const Matrix& x,
                                                    const LabelVector& y,
                                                    const PretrainConfig& cfg);

/// Plain softmax regression head reused by the downstream evaluator.
struct SoftmaxModel {
  Matrix w;  // f x |Y|
  Vector b;
  std::vector<double> loss_trace;
};

SoftmaxModel train_softmax_classifier(const Matrix& features, const LabelVector& y, Index epochs,
                                      double lr, std::uint64_t seed);
double split_accuracy(const SoftmaxModel& model, const Matrix& features, const LabelVector& y,
                      Split split);

}  // namespace tada
