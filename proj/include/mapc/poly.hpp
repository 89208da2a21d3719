#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mapc/field.hpp"
#include "mapc/matrix.hpp"

namespace mapc {

/// Univariate polynomial, coefficients lowest degree first, no trailing zeros.
class Poly {
 public:
  explicit Poly(FieldSpec field) : field_(field) {}
  Poly(FieldSpec field, std::vector<Scalar> coeffs);
  /// Integer coefficients, lowest degree first.
  static Poly from_ints(FieldSpec field, std::initializer_list<long long> coeffs);
  static Poly constant(const Scalar& c);
  static Poly x(FieldSpec field);
  /// x^n
  static Poly monomial(FieldSpec field, std::size_t n);

  const FieldSpec& field() const noexcept { return field_; }
  const std::vector<Scalar>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  Scalar leading() const { return is_zero() ? field_.zero() : c_.back(); }
  bool is_monic() const { return !is_zero() && c_.back().is_one(); }
  Poly monic() const;
  Poly derivative() const;
  Scalar eval(const Scalar& at) const;

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(const Scalar& s, const Poly& a);
  friend bool operator==(const Poly& a, const Poly& b) { return a.field_ == b.field_ && a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  /// Canonical order: coefficient sequences compared lexicographically,
  /// lowest degree first (a proper prefix sorts first).
  friend bool operator<(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void trim();
  FieldSpec field_;
  std::vector<Scalar> c_;
};

struct PolyDivMod {
  Poly quotient;
  Poly remainder;
};
/// Throws DivisionByZeroPoly when d is zero.
PolyDivMod divmod(const Poly& a, const Poly& d);
Poly poly_mod(const Poly& a, const Poly& m);
/// Monic gcd (zero when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);
Poly pow(const Poly& a, std::size_t e);
/// a^e mod m
Poly powmod(const Poly& a, const mpz_class& e, const Poly& m);

/// p(M)
Mat evaluate(const Poly& p, const Mat& m);
/// p(M) v for a column v, by Horner on vectors.
Mat apply(const Poly& p, const Mat& m, const Mat& v);

/// Accepts "x^3+2x+1", "1/2x^2-x", "(x+1)"; coefficients reduced into field.
Poly parse_poly(const FieldSpec& field, const std::string& text);

}  // namespace mapc
