#include "tada/expander.hpp"

#include "tada/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace tada {

namespace {

void fill_glorot(Matrix& w, rng::SplitMix& gen) {
  const double bound = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
  for (Index r = 0; r < w.rows(); ++r)
    for (Index c = 0; c < w.cols(); ++c) w(r, c) = bound * (2.0 * gen.next_unit() - 1.0);
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix p(logits.rows(), logits.cols());
  for (Index i = 0; i < logits.rows(); ++i) {
    const double mx = logits.row(i).maxCoeff();
    p.row(i) = (logits.row(i).array() - mx).exp();
    p.row(i) /= p.row(i).sum();
  }
  return p;
}

/// Mean cross-entropy over train rows plus the softmax/one-hot residual used
/// as the logits gradient.
double softmax_loss_and_delta(const Matrix& logits, const LabelVector& y, Matrix* delta) {
  Index train = 0;
  for (auto m : y.mask)
    if (m == Split::train) ++train;
  if (train == 0) throw DataError("empty train split");

  if (delta) *delta = Matrix::Zero(logits.rows(), logits.cols());
  double loss = 0.0;
  for (Index i = 0; i < logits.rows(); ++i) {
    if (y.mask[static_cast<std::size_t>(i)] != Split::train) continue;
    const double mx = logits.row(i).maxCoeff();
    const Eigen::RowVectorXd shifted = logits.row(i).array() - mx;
    const double lse = std::log(shifted.array().exp().sum());
    const Index label = y.labels[static_cast<std::size_t>(i)];
    loss += lse - shifted[label];
    if (delta) {
      Eigen::RowVectorXd p = (shifted.array() - lse).exp();
      p[label] -= 1.0;
      delta->row(i) = p / static_cast<double>(train);
    }
  }
  return loss / static_cast<double>(train);
}

struct ForwardCache {
  Matrix pre_topo, pre_attr;  // pre-activation
  Matrix h0;
  Matrix logits;
};

ForwardCache forward(const SketchedAdjacency& a, const Matrix& x, const ExpanderParams& p) {
  if (a.values.rows() != x.rows())
    throw std::invalid_argument("expander: sketch and attribute row counts differ");
  if (a.values.cols() != p.w_topo.rows() || x.cols() != p.w_attr.rows() ||
      p.w_topo.cols() != p.w_attr.cols() || p.w_cls.rows() != p.w_topo.cols() ||
      p.b_cls.size() != p.w_cls.cols())
    throw std::invalid_argument("expander: parameter shapes inconsistent with inputs");
  ForwardCache f;
  f.pre_topo = a.values * p.w_topo;
  f.pre_attr = x * p.w_attr;
  f.h0 = combine(f.pre_attr.cwiseMax(0.0), f.pre_topo.cwiseMax(0.0), p.gamma);
  f.logits = (f.h0 * p.w_cls).rowwise() + p.b_cls.transpose();
  return f;
}

}  // namespace

Matrix standardize_columns(const Matrix& x) {
  Matrix out = x;
  const double n = static_cast<double>(x.rows());
  for (Index c = 0; c < x.cols(); ++c) {
    const double mean = x.col(c).mean();
    out.col(c).array() -= mean;
    const double sd = std::sqrt(out.col(c).squaredNorm() / n);
    if (sd > 1e-12) out.col(c) /= sd;
  }
  return out;
}

ExpanderParams init_expander_params(Index k, Index d, Index hidden, Index classes, double gamma,
                                    std::uint64_t seed) {
  if (hidden < 1 || classes < 1)
    throw std::invalid_argument("init_expander_params: hidden dim and class count must be >= 1");
  ExpanderParams p;
  p.gamma = gamma;
  p.hidden_dim = hidden;
  p.w_topo.resize(k, hidden);
  p.w_attr.resize(d, hidden);
  p.w_cls.resize(hidden, classes);
  p.b_cls = Vector::Zero(classes);
  rng::SplitMix gen(rng::mix64(seed ^ 0x657870616e646572ULL));
  fill_glorot(p.w_topo, gen);
  fill_glorot(p.w_attr, gen);
  fill_glorot(p.w_cls, gen);
  return p;
}

InitialFeatures forward_initial_features(const SketchedAdjacency& a, const Matrix& x,
                                         const ExpanderParams& p) {
  InitialFeatures out;
  out.gamma = p.gamma;
  out.h0 = forward(a, x, p).h0;
  return out;
}

Matrix classifier_probabilities(const ExpanderParams& p, const Matrix& h0) {
  return softmax_rows((h0 * p.w_cls).rowwise() + p.b_cls.transpose());
}

double pretrain_loss(const SketchedAdjacency& a, const Matrix& x, const LabelVector& y,
                     const ExpanderParams& p) {
  return softmax_loss_and_delta(forward(a, x, p).logits, y, nullptr);
}

ExpanderGradients pretrain_gradients(const SketchedAdjacency& a, const Matrix& x,
                                     const LabelVector& y, const ExpanderParams& p) {
  const ForwardCache f = forward(a, x, p);
  Matrix delta;
  softmax_loss_and_delta(f.logits, y, &delta);

  ExpanderGradients g;
  g.w_cls = f.h0.transpose() * delta;
  g.b_cls = delta.colwise().sum();

  const Matrix d_h0 = delta * p.w_cls.transpose();
  const Matrix d_pre_attr =
      ((1.0 - p.gamma) * d_h0.array() * (f.pre_attr.array() > 0.0).cast<double>()).matrix();
  const Matrix d_pre_topo =
      (p.gamma * d_h0.array() * (f.pre_topo.array() > 0.0).cast<double>()).matrix();
  g.w_attr = x.transpose() * d_pre_attr;
  g.w_topo = a.values.transpose() * d_pre_topo;
  return g;
}

std::pair<ExpanderParams, InitialFeatures> pretrain(const SketchedAdjacency& a, const Matrix& x,
                                                    const LabelVector& y,
                                                    const PretrainConfig& cfg) {
  if (y.size() != x.rows() || y.size() != a.values.rows())
    throw DataError("pretrain: label count does not match node count");
  y.require_contiguous_classes();
  if (y.count_split(Split::train) == 0) throw DataError("empty train split");
  if (!(cfg.gamma >= 0.0 && cfg.gamma <= 1.0))
    throw std::invalid_argument("pretrain: gamma outside [0,1]");
  if (cfg.epochs < 0 || cfg.lr <= 0.0)
    throw std::invalid_argument("pretrain: bad epoch count or learning rate");

  const Matrix xs = standardize_columns(x);
  ExpanderParams p =
      init_expander_params(a.k, xs.cols(), cfg.hidden_dim, y.num_classes, cfg.gamma, cfg.seed);

  InitialFeatures feats;
  feats.gamma = cfg.gamma;
  feats.loss_trace.reserve(static_cast<std::size_t>(cfg.epochs));
  for (Index epoch = 0; epoch < cfg.epochs; ++epoch) {
    const ForwardCache f = forward(a, xs, p);
    Matrix delta;
    const double loss = softmax_loss_and_delta(f.logits, y, &delta);
    if (!std::isfinite(loss))
      throw DataError("pre-training aborted: non-finite loss at epoch " + std::to_string(epoch) +
                      " (lr=" + std::to_string(cfg.lr) + ")");
    feats.loss_trace.push_back(loss);

    Matrix d_w_cls = f.h0.transpose() * delta;
    Vector d_b_cls = delta.colwise().sum();
    const Matrix d_h0 = delta * p.w_cls.transpose();
    const Matrix d_pre_attr =
        ((1.0 - p.gamma) * d_h0.array() * (f.pre_attr.array() > 0.0).cast<double>()).matrix();
    const Matrix d_pre_topo =
        (p.gamma * d_h0.array() * (f.pre_topo.array() > 0.0).cast<double>()).matrix();

    p.w_cls -= cfg.lr * d_w_cls;
    p.b_cls -= cfg.lr * d_b_cls;
    p.w_attr -= cfg.lr * (xs.transpose() * d_pre_attr);
    p.w_topo -= cfg.lr * (a.values.transpose() * d_pre_topo);
  }

  feats.h0 = forward(a, xs, p).h0;
  return {std::move(p), std::move(feats)};
}

SoftmaxModel train_softmax_classifier(const Matrix& features, const LabelVector& y, Index epochs,
                                      double lr, std::uint64_t seed) {
  if (y.size() != features.rows())
    throw DataError("classifier: label count does not match feature rows");
  if (y.count_split(Split::train) == 0) throw DataError("empty train split");
  SoftmaxModel model;
  model.w.resize(features.cols(), y.num_classes);
  model.b = Vector::Zero(y.num_classes);
  rng::SplitMix gen(rng::mix64(seed ^ 0x736f66746d617831ULL));
  fill_glorot(model.w, gen);
  model.loss_trace.reserve(static_cast<std::size_t>(epochs));
  for (Index epoch = 0; epoch < epochs; ++epoch) {
    const Matrix logits = (features * model.w).rowwise() + model.b.transpose();
    Matrix delta;
    const double loss = softmax_loss_and_delta(logits, y, &delta);
    if (!std::isfinite(loss))
      throw DataError("classifier training aborted: non-finite loss at epoch " +
                      std::to_string(epoch));
    model.loss_trace.push_back(loss);
    model.w -= lr * (features.transpose() * delta);
    model.b -= lr * delta.colwise().sum().transpose();
  }
  return model;
}

double split_accuracy(const SoftmaxModel& model, const Matrix& features, const LabelVector& y,
                      Split split) {
  const Matrix logits = (features * model.w).rowwise() + model.b.transpose();
  Index total = 0;
  Index correct = 0;
  for (Index i = 0; i < logits.rows(); ++i) {
    if (y.mask[static_cast<std::size_t>(i)] != split) continue;
    ++total;
    Index arg = 0;
    logits.row(i).maxCoeff(&arg);
    if (arg == y.labels[static_cast<std::size_t>(i)]) ++correct;
  }
  if (total == 0) throw DataError("accuracy: split has no nodes");
  return static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace tada
