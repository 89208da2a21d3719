#include "mapc/matrix.hpp"

#include <sstream>

#include "mapc/error.hpp"

namespace mapc {

namespace {

void require_same_field(const Mat& a, const Mat& b) {
  if (a.field() != b.field())
    throw Error(ErrorKind::FieldMismatch, a.field().name() + " vs " + b.field().name());
}

std::string shape(const Mat& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

Mat::Mat(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

Mat::Mat(FieldSpec field, std::initializer_list<std::initializer_list<long long>> rows)
    : field_(field), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
    for (long long v : r) data_.push_back(field.from_int(v));
  }
}

Mat Mat::identity(FieldSpec field, std::size_t n) {
  Mat m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = field.one();
  return m;
}

bool Mat::is_zero() const {
  for (const auto& x : data_)
    if (!x.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (i == j ? !(*this)(i, j).is_one() : !(*this)(i, j).is_zero()) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(field_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = (*this)(i, j);
  return t;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_)
    throw Error(ErrorKind::DimensionMismatch, "block out of range of " + shape(*this));
  Mat b(field_, nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) b.at(i, j) = (*this)(r0 + i, c0 + j);
  return b;
}

Mat Mat::select(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
  Mat b(field_, rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) b.at(i, j) = (*this)(rows[i], cols[j]);
  return b;
}

Mat Mat::select_cols(std::span<const std::size_t> cols) const {
  Mat b(field_, rows_, cols.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) b.at(i, j) = (*this)(i, cols[j]);
  return b;
}

Mat Mat::select_rows(std::span<const std::size_t> rows) const {
  Mat b(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols_; ++j) b.at(i, j) = (*this)(rows[i], j);
  return b;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_)
    throw Error(ErrorKind::DimensionMismatch, "set_block out of range");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) at(r0 + i, c0 + j) = m(i, j);
}

Mat Mat::operator-() const {
  Mat r = *this;
  for (auto& x : r.data_) x = -x;
  return r;
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw Error(ErrorKind::DimensionMismatch, shape(a) + " + " + shape(b));
  Mat r = a;
  for (std::size_t k = 0; k < r.data_.size(); ++k) r.data_[k] += b.data_[k];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) { return a + (-b); }

Mat operator*(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, shape(a) + " * " + shape(b));
  Mat r(a.field_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) r.at(i, j) += x * y;
      }
    }
  return r;
}

Mat operator*(const Scalar& s, const Mat& m) {
  Mat r = m;
  for (auto& x : r.data_) x = s * x;
  return r;
}

bool operator==(const Mat& a, const Mat& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? " " : "") << (*this)(i, j);
    os << '\n';
  }
  return os.str();
}

Mat mat_mul(const Mat& a, const Mat& b) { return a * b; }

Mat mat_pow(const Mat& a, std::size_t e) {
  if (!a.square()) throw Error(ErrorKind::NotSquare, "power of " + shape(a));
  Mat r = Mat::identity(a.field(), a.rows()), base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Mat direct_sum(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  Mat r(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), a.cols(), b);
  return r;
}

Mat hstack(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "hstack " + shape(a) + " " + shape(b));
  Mat r(a.field(), a.rows(), a.cols() + b.cols());
  r.set_block(0, 0, a);
  r.set_block(0, a.cols(), b);
  return r;
}

Mat vstack(const Mat& a, const Mat& b) {
  require_same_field(a, b);
  if (a.cols() != b.cols()) throw Error(ErrorKind::DimensionMismatch, "vstack " + shape(a) + " " + shape(b));
  Mat r(a.field(), a.rows() + b.rows(), a.cols());
  r.set_block(0, 0, a);
  r.set_block(a.rows(), 0, b);
  return r;
}

Echelon rref(const Mat& m) {
  Mat r = m;
  std::vector<std::size_t> pivots;
  const bool rational = m.field().is_rationals();
  std::size_t row = 0;
  for (std::size_t col = 0; col < r.cols() && row < r.rows(); ++col) {
    // GF(p): first nonzero entry. Q: smallest bit-length entry.
    std::size_t best = r.rows();
    for (std::size_t i = row; i < r.rows(); ++i) {
      if (r(i, col).is_zero()) continue;
      if (best == r.rows()) {
        best = i;
        if (!rational) break;
      } else if (r(i, col).size_hint() < r(best, col).size_hint()) {
        best = i;
      }
    }
    if (best == r.rows()) continue;
    if (best != row)
      for (std::size_t j = 0; j < r.cols(); ++j) std::swap(r.at(best, j), r.at(row, j));
    Scalar inv = r(row, col).inverse();
    for (std::size_t j = col; j < r.cols(); ++j) r.at(row, j) = r(row, j) * inv;
    for (std::size_t i = 0; i < r.rows(); ++i) {
      if (i == row || r(i, col).is_zero()) continue;
      Scalar f = r(i, col);
      for (std::size_t j = col; j < r.cols(); ++j)
        if (!r(row, j).is_zero()) r.at(i, j) -= f * r(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return {std::move(r), std::move(pivots)};
}

RankNullspace rank_and_nullspace(const Mat& m) {
  auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::size_t nullity = m.cols() - pivots.size();
  Mat ns(m.field(), m.cols(), nullity);
  std::size_t k = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    ns.at(free, k) = m.field().one();
    for (std::size_t i = 0; i < pivots.size(); ++i) ns.at(pivots[i], k) = -red(i, free);
    ++k;
  }
  return {pivots.size(), std::move(ns)};
}

std::size_t rank(const Mat& m) { return rref(m).pivots.size(); }

Mat inverse(const Mat& m) {
  if (!m.square()) throw Error(ErrorKind::NotSquare, "inverse of " + shape(m));
  const std::size_t n = m.rows();
  auto [red, pivots] = rref(hstack(m, Mat::identity(m.field(), n)));
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
    throw Error(ErrorKind::Singular, "matrix is not invertible");
  return red.block(0, n, n, n);
}

bool is_invertible(const Mat& m) { return m.square() && rank(m) == m.rows(); }

std::optional<Mat> solve(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "solve " + shape(a) + " " + shape(b));
  auto [red, pivots] = rref(hstack(a, b));
  Mat x(a.field(), a.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= a.cols()) return std::nullopt;
    for (std::size_t j = 0; j < b.cols(); ++j) x.at(pivots[i], j) = red(i, a.cols() + j);
  }
  return x;
}

std::vector<std::size_t> independent_columns(const Mat& m) { return rref(m).pivots; }

Mat extend_to_basis(const Mat& basis) {
  const std::size_t n = basis.rows();
  Mat all = hstack(basis, Mat::identity(basis.field(), n));
  auto cols = independent_columns(all);
  return all.select_cols(cols);
}

MatPair similarity_conjugate(const MatPair& pair, const Mat& s) {
  if (!pair.a.square() || !pair.b.square() || !s.square())
    throw Error(ErrorKind::NotSquare, "similarity needs square matrices");
  if (pair.a.rows() != s.rows() || pair.b.rows() != s.rows())
    throw Error(ErrorKind::DimensionMismatch, "conjugator size differs from pair size");
  Mat si = inverse(s);
  return {si * pair.a * s, si * pair.b * s};
}

void require_annihilating(const MatPair& pair) {
  const auto& [a, b] = pair;
  if (!a.square() || !b.square()) throw Error(ErrorKind::NotSquare, "pair matrices must be square");
  if (a.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "A and B differ in size");
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, "A and B over different fields");
  for (const auto& [prod, label] : {std::pair{a * b, "AB"}, std::pair{b * a, "BA"}})
    for (std::size_t i = 0; i < prod.rows(); ++i)
      for (std::size_t j = 0; j < prod.cols(); ++j)
        if (!prod(i, j).is_zero())
          throw Error(ErrorKind::NotAnnihilating, std::string(label) + "[" + std::to_string(i + 1) + "," +
                                                      std::to_string(j + 1) + "] = " + prod(i, j).to_string());
}

}  // namespace mapc
