#include "tada/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

namespace tada {

namespace {

constexpr char kMagic[4] = {'T', 'A', 'D', 'A'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_le(std::ostream& out, T value) {
  // Little-endian on every supported target; serialize bytes explicitly so the
  // format stays fixed regardless of host order.
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T read_le(std::istream& in, const std::string& context) {
  unsigned char buf[sizeof(T)];
  in.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!in) throw DataError("truncated matrix file: " + context);
  T value;
  std::memcpy(&value, buf, sizeof(T));
  return value;
}

}  // namespace

void write_matrix_block(std::ostream& out, const Matrix& m) {
  out.write(kMagic, 4);
  write_le<std::uint32_t>(out, kVersion);
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  write_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) write_le<float>(out, static_cast<float>(m(r, c)));
}

Matrix read_matrix_block(std::istream& in, const std::string& context) {
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw DataError("unknown magic in matrix file: " + context);
  const auto version = read_le<std::uint32_t>(in, context);
  if (version != kVersion)
    throw DataError("unsupported matrix container version " + std::to_string(version) + ": " +
                    context);
  const auto rows = read_le<std::uint64_t>(in, context);
  const auto cols = read_le<std::uint64_t>(in, context);
  if (rows > (1u << 28) || cols > (1u << 28))
    throw DataError("implausible matrix shape in " + context);
  Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      const float v = read_le<float>(in, context);
      if (!std::isfinite(v)) throw DataError("non-finite value in matrix file: " + context);
      m(r, c) = static_cast<double>(v);
    }
  return m;
}

void save_dense_matrix(const Matrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  write_matrix_block(out, m);
  if (!out) throw DataError("write failed: " + path);
}

void save_dense_matrix_csv(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write file: " + path);
  out.precision(17);
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << m(r, c);
    }
    out << '\n';
  }
}

namespace {

Matrix load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size()) {
      auto end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      std::string_view tok(line.data() + start, end - start);
      while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
      while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r'))
        tok.remove_suffix(1);
      double v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw DataError("CSV parse error at line " + std::to_string(line_no) + " in " + path);
      if (!std::isfinite(v))
        throw DataError("non-finite value at line " + std::to_string(line_no) + " in " + path);
      row.push_back(v);
      if (end == line.size()) break;
      start = end + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError("ragged CSV at line " + std::to_string(line_no) + " in " + path);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("empty matrix file: " + path);
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c)
      m(r, c) = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

}  // namespace

Matrix load_dense_matrix(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw DataError("cannot open file: " + path);
  char magic[4] = {0, 0, 0, 0};
  probe.read(magic, 4);
  if (probe.gcount() == 4 && std::memcmp(magic, kMagic, 4) == 0) {
    probe.seekg(0);
    return read_matrix_block(probe, path);
  }
  return load_csv(path);
}

}  // namespace tada
