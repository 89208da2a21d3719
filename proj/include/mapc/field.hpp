#pragma once

#include <cstdint>
#include <gmpxx.h>
#include <iosfwd>
#include <string>
#include <variant>

namespace mapc {

class Scalar;

/// The coefficient field: a prime field GF(p) with word-sized p, or the
/// rationals. Cheap to copy.
class FieldSpec {
 public:
  enum class Kind { Prime, Rationals };

  static FieldSpec prime(std::uint64_t p);
  static FieldSpec rationals() { return FieldSpec(Kind::Rationals, 0); }

  Kind kind() const noexcept { return kind_; }
  bool is_prime() const noexcept { return kind_ == Kind::Prime; }
  bool is_rationals() const noexcept { return kind_ == Kind::Rationals; }
  /// 0 for the rationals.
  std::uint64_t characteristic() const noexcept { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_mpz(const mpz_class& v) const;
  /// num/den reduced into the field; den must be nonzero (and invertible mod p).
  Scalar from_fraction(const mpz_class& num, const mpz_class& den) const;

  /// "GF(p)" or "Q".
  std::string name() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) noexcept { return !(a == b); }

 private:
  friend class Scalar;
  FieldSpec(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

bool is_prime_u64(std::uint64_t n);

/// An exact field element. GF(p) residues are kept in 0..p-1, rationals in
/// lowest terms with positive denominator, so equality is structural.
class Scalar {
 public:
  Scalar() : p_(0), v_(mpq_class(0)) {}

  FieldSpec field() const;
  bool is_zero() const;
  bool is_one() const;

  /// Residue for GF(p) elements.
  std::uint64_t residue() const { return std::get<std::uint64_t>(v_); }
  /// Value for rational elements.
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }

  Scalar inverse() const;
  Scalar pow(std::uint64_t e) const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
  /// Total order used for canonical sorting: residues numerically, rationals by value.
  friend bool operator<(const Scalar& a, const Scalar& b);

  /// Bit length of numerator plus denominator; residues count as 1. Used as
  /// the pivot-size heuristic for elimination over Q.
  std::size_t size_hint() const;

  std::string to_string() const;

 private:
  friend class FieldSpec;
  Scalar(std::uint64_t p, std::uint64_t r) : p_(p), v_(r) {}
  explicit Scalar(mpq_class q) : p_(0), v_(std::move(q)) {}

  std::uint64_t p_;  // 0 means rational
  std::variant<std::uint64_t, mpq_class> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Parses an integer or "a/b" token into the field.
Scalar parse_scalar(const FieldSpec& field, const std::string& token);
/// "GF(p)" or "Q"; throws ParseError.
FieldSpec parse_field(const std::string& name);

}  // namespace mapc
