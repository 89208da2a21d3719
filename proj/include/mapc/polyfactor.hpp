#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mapc/matrix.hpp"
#include "mapc/poly.hpp"

namespace mapc {

/// base^exponent. Over GF(p) base is monic irreducible. Over Q the pipeline
/// stores invariant factors here with exponent 1, since Q factorization is
/// not available.
struct ElementaryDivisor {
  Poly base;
  unsigned exponent = 1;

  Poly power() const { return pow(base, exponent); }
  std::size_t degree() const { return static_cast<std::size_t>(base.degree()) * exponent; }
  /// "(x^2+1)^3"
  std::string to_string() const;

  friend bool operator==(const ElementaryDivisor& a, const ElementaryDivisor& b) {
    return a.base == b.base && a.exponent == b.exponent;
  }
  friend bool operator!=(const ElementaryDivisor& a, const ElementaryDivisor& b) { return !(a == b); }
  /// Base coefficients lexicographic (lowest degree first), then exponent.
  friend bool operator<(const ElementaryDivisor& a, const ElementaryDivisor& b);
};

/// Parses "(poly)^e" or a bare "poly" (exponent 1).
ElementaryDivisor parse_divisor(const FieldSpec& field, const std::string& text);

inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eed'f00dULL;

/// Irreducible factorization over GF(p), sorted by divisor order. The leading
/// coefficient is dropped. Throws UnsupportedField over Q.
std::vector<ElementaryDivisor> factor_gfp(const Poly& f, std::uint64_t seed = kDefaultFactorSeed);
/// Rabin's test over GF(p).
bool is_irreducible(const Poly& f);
/// All monic irreducibles of the given degree over GF(p), in divisor order.
std::vector<Poly> monic_irreducibles(const FieldSpec& field, unsigned degree);

/// Companion matrix: ones below the diagonal, last column -c_n ... -c_1.
Mat companion(const Poly& monic);
Mat frobenius_block(const ElementaryDivisor& d);

/// Least-degree monic p with p(M) v = 0.
Poly vector_minimal_polynomial(const Mat& m, const Mat& v);
Poly minimal_polynomial(const Mat& m);
Poly lcm(const Poly& a, const Poly& b);

}  // namespace mapc
