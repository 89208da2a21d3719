#pragma once

#include <string>

#include "mapc/matrix.hpp"

namespace mapc {

/// Text form of a pair:
///
///   field GF(p) | field Q
///   n <dim>
///   <n rows of A>
///   <blank line>
///   <n rows of B>
///
/// Tokens are integers or a/b fractions. Lines starting with '#' are comments.
/// Parsing verifies AB = BA = 0 and cites the first nonzero entry otherwise.
MatPair parse_pair_file(const std::string& text);
std::string format_pair_file(const MatPair& pair);

/// A single square matrix in the same layout without the B block (witness files).
Mat parse_matrix_file(const std::string& text);
std::string format_matrix_file(const Mat& m);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace mapc
