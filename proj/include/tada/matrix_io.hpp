#pragma once

#include "tada/types.hpp"

#include <string>

namespace tada {

/// Binary dense-matrix container: magic "TADA", u32 version (=1), u64 rows,
/// u64 cols, then row-major little-endian f32 values.
void save_dense_matrix(const Matrix& m, const std::string& path);

/// Loads either the binary container (sniffed by magic) or header-less CSV.
/// Non-finite values are rejected.
Matrix load_dense_matrix(const std::string& path);

void save_dense_matrix_csv(const Matrix& m, const std::string& path);

/// Appends one matrix block to an already-open stream (multi-matrix files).
void write_matrix_block(std::ostream& out, const Matrix& m);
Matrix read_matrix_block(std::istream& in, const std::string& context);

}  // namespace tada
