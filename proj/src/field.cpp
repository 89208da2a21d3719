#include "mapc/field.hpp"

#include <ostream>

#include "mapc/error.hpp"

namespace mapc {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotSquare: return "NotSquare";
    case ErrorKind::NotAnnihilating: return "NotAnnihilating";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::DivisionByZeroPoly: return "DivisionByZeroPoly";
    case ErrorKind::MalformedBoard: return "MalformedBoard";
    case ErrorKind::InapplicableOp: return "InapplicableOp";
    case ErrorKind::DegreeViolation: return "DegreeViolation";
    case ErrorKind::SingularMonodromy: return "SingularMonodromy";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SpecError: return "SpecError";
    case ErrorKind::Io: return "Io";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void require_same(const Scalar& a, const Scalar& b) {
  if (a.field() != b.field())
    throw Error(ErrorKind::FieldMismatch, "scalar operands from " + a.field().name() + " and " +
                                              b.field().name());
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (!is_prime_u64(p)) throw Error(ErrorKind::UnsupportedField, std::to_string(p) + " is not prime");
  if (p > (std::uint64_t{1} << 62))
    throw Error(ErrorKind::UnsupportedField, "prime too large for word-sized residues");
  return FieldSpec(Kind::Prime, p);
}

Scalar FieldSpec::zero() const { return from_int(0); }
Scalar FieldSpec::one() const { return from_int(1); }

Scalar FieldSpec::from_int(long long v) const {
  if (is_rationals()) return Scalar(mpq_class(static_cast<long>(v)));
  long long m = v % static_cast<long long>(p_);
  if (m < 0) m += static_cast<long long>(p_);
  return Scalar(p_, static_cast<std::uint64_t>(m));
}

Scalar FieldSpec::from_mpz(const mpz_class& v) const {
  if (is_rationals()) return Scalar(mpq_class(v));
  mpz_class m = v % mpz_class(std::to_string(p_));
  if (m < 0) m += mpz_class(std::to_string(p_));
  return Scalar(p_, std::stoull(m.get_str()));
}

Scalar FieldSpec::from_fraction(const mpz_class& num, const mpz_class& den) const {
  if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator");
  if (is_rationals()) {
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
  }
  Scalar d = from_mpz(den);
  if (d.is_zero()) throw Error(ErrorKind::ParseError, "denominator vanishes in " + name());
  return from_mpz(num) / d;
}

std::string FieldSpec::name() const {
  return is_rationals() ? std::string("Q") : "GF(" + std::to_string(p_) + ")";
}

FieldSpec Scalar::field() const {
  return p_ == 0 ? FieldSpec::rationals() : FieldSpec(FieldSpec::Kind::Prime, p_);
}

bool Scalar::is_zero() const {
  return p_ ? std::get<std::uint64_t>(v_) == 0 : std::get<mpq_class>(v_) == 0;
}

bool Scalar::is_one() const {
  return p_ ? std::get<std::uint64_t>(v_) == 1 : std::get<mpq_class>(v_) == 1;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorKind::Singular, "inverse of zero scalar");
  if (p_) return Scalar(p_, powmod(residue(), p_ - 2, p_));
  return Scalar(mpq_class(1) / rational());
}

Scalar Scalar::pow(std::uint64_t e) const {
  if (p_) return Scalar(p_, powmod(residue(), e, p_));
  mpq_class r(1), b = rational();
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return Scalar(std::move(r));
}

Scalar Scalar::operator-() const {
  if (p_) {
    auto r = residue();
    return Scalar(p_, r == 0 ? 0 : p_ - r);
  }
  return Scalar(mpq_class(-rational()));
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) require_same(a, b);
  if (a.p_) {
    std::uint64_t s = a.residue() + b.residue();
    if (s >= a.p_) s -= a.p_;
    return Scalar(a.p_, s);
  }
  return Scalar(mpq_class(a.rational() + b.rational()));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) require_same(a, b);
  if (a.p_) {
    std::uint64_t x = a.residue(), y = b.residue();
    return Scalar(a.p_, x >= y ? x - y : x + a.p_ - y);
  }
  return Scalar(mpq_class(a.rational() - b.rational()));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) require_same(a, b);
  if (a.p_) return Scalar(a.p_, mulmod(a.residue(), b.residue(), a.p_));
  return Scalar(mpq_class(a.rational() * b.rational()));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) require_same(a, b);
  return a * b.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  if (a.p_) return a.residue() == b.residue();
  return a.rational() == b.rational();
}

bool operator<(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) require_same(a, b);
  if (a.p_) return a.residue() < b.residue();
  return a.rational() < b.rational();
}

std::size_t Scalar::size_hint() const {
  if (p_) return 1;
  const auto& q = rational();
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

std::string Scalar::to_string() const {
  if (p_) return std::to_string(residue());
  return rational().get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar parse_scalar(const FieldSpec& field, const std::string& token) {
  auto parse_int = [&](const std::string& s) {
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty number in '" + token + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw Error(ErrorKind::ParseError, "bad number '" + token + "'");
    for (std::size_t i = start; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') throw Error(ErrorKind::ParseError, "bad number '" + token + "'");
    return mpz_class(s[0] == '+' ? s.substr(1) : s);
  };
  auto slash = token.find('/');
  if (slash == std::string::npos) return field.from_mpz(parse_int(token));
  return field.from_fraction(parse_int(token.substr(0, slash)), parse_int(token.substr(slash + 1)));
}

FieldSpec parse_field(const std::string& name) {
  if (name == "Q") return FieldSpec::rationals();
  if (name.size() > 4 && name.rfind("GF(", 0) == 0 && name.back() == ')') {
    const std::string digits = name.substr(3, name.size() - 4);
    if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 19)
      return FieldSpec::prime(std::stoull(digits));
  }
  throw Error(ErrorKind::ParseError, "unknown field '" + name + "'");
}

}  // namespace mapc
