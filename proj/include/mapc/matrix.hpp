#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mapc/field.hpp"

namespace mapc {

/// Dense row-major matrix over a FieldSpec. Algorithms in this library treat
/// matrices as values: they take const references and return new matrices.
class Mat {
 public:
  Mat() : field_(FieldSpec::rationals()) {}
  Mat(FieldSpec field, std::size_t rows, std::size_t cols);
  /// Integer literal rows, reduced into `field`.
  Mat(FieldSpec field, std::initializer_list<std::initializer_list<long long>> rows);

  static Mat identity(FieldSpec field, std::size_t n);
  static Mat zero(FieldSpec field, std::size_t rows, std::size_t cols) { return Mat(field, rows, cols); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const FieldSpec& field() const noexcept { return field_; }

  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Scalar& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_identity() const;

  Mat transpose() const;
  Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  /// Rows and columns picked by index, in the given order.
  Mat select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
  Mat select_cols(std::span<const std::size_t> cols) const;
  Mat select_rows(std::span<const std::size_t> rows) const;
  void set_block(std::size_t r0, std::size_t c0, const Mat& m);
  Mat column(std::size_t j) const { return block(0, j, rows_, 1); }

  Mat operator-() const;
  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const Scalar& s, const Mat& m);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  std::string to_string() const;

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

struct MatPair {
  Mat a;
  Mat b;
  friend bool operator==(const MatPair& x, const MatPair& y) { return x.a == y.a && x.b == y.b; }
};

Mat mat_mul(const Mat& a, const Mat& b);
Mat mat_pow(const Mat& a, std::size_t e);
Mat direct_sum(const Mat& a, const Mat& b);
Mat hstack(const Mat& a, const Mat& b);
Mat vstack(const Mat& a, const Mat& b);

/// Reduced row echelon form with the pivot columns it found.
struct Echelon {
  Mat reduced;
  std::vector<std::size_t> pivots;
};
Echelon rref(const Mat& m);

struct RankNullspace {
  std::size_t rank = 0;
  Mat nullspace;  // columns form a basis of ker(m); cols() == nullity
};
RankNullspace rank_and_nullspace(const Mat& m);
std::size_t rank(const Mat& m);

Mat inverse(const Mat& m);
bool is_invertible(const Mat& m);

/// Some x with a*x = b, or nullopt when the system is inconsistent.
std::optional<Mat> solve(const Mat& a, const Mat& b);

/// Indices of a maximal independent prefix-greedy subset of columns.
std::vector<std::size_t> independent_columns(const Mat& m);
/// Columns of `basis` (assumed independent) extended greedily by standard
/// basis vectors to a basis of the whole space.
Mat extend_to_basis(const Mat& basis);

/// (S^-1 A S, S^-1 B S).
MatPair similarity_conjugate(const MatPair& pair, const Mat& s);

/// Throws NotSquare / DimensionMismatch / FieldMismatch / NotAnnihilating.
void require_annihilating(const MatPair& pair);

}  // namespace mapc
