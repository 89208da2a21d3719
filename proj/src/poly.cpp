#include "mapc/poly.hpp"

#include <algorithm>
#include <cctype>

#include "mapc/error.hpp"

namespace mapc {

namespace {

void require_same(const Poly& a, const Poly& b) {
  if (a.field() != b.field()) throw Error(ErrorKind::FieldMismatch, "polynomials over different fields");
}

}  // namespace

Poly::Poly(FieldSpec field, std::vector<Scalar> coeffs) : field_(field), c_(std::move(coeffs)) {
  for (const auto& c : c_)
    if (c.field() != field_) throw Error(ErrorKind::FieldMismatch, "coefficient outside polynomial field");
  trim();
}

Poly Poly::from_ints(FieldSpec field, std::initializer_list<long long> coeffs) {
  std::vector<Scalar> c;
  for (long long v : coeffs) c.push_back(field.from_int(v));
  return Poly(field, std::move(c));
}

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), {c}); }

Poly Poly::x(FieldSpec field) { return monomial(field, 1); }

Poly Poly::monomial(FieldSpec field, std::size_t n) {
  std::vector<Scalar> c(n + 1, field.zero());
  c[n] = field.one();
  return Poly(field, std::move(c));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Scalar inv = c_.back().inverse();
  Poly r = *this;
  for (auto& c : r.c_) c = c * inv;
  return r;
}

Poly Poly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(field_.from_int(static_cast<long long>(i)) * c_[i]);
  return Poly(field_, std::move(d));
}

Scalar Poly::eval(const Scalar& at) const {
  Scalar r = field_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * at + *it;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  require_same(a, b);
  std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return Poly(a.field_, std::move(c));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-a.field_.one()) * b; }

Poly operator*(const Poly& a, const Poly& b) {
  require_same(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(a.field_);
  std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(a.field_, std::move(c));
}

Poly operator*(const Scalar& s, const Poly& a) {
  std::vector<Scalar> c = a.c_;
  for (auto& x : c) x = s * x;
  return Poly(a.field_, std::move(c));
}

bool operator<(const Poly& a, const Poly& b) {
  return std::lexicographical_compare(a.c_.begin(), a.c_.end(), b.c_.begin(), b.c_.end());
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int d = degree(); d >= 0; --d) {
    Scalar c = c_[static_cast<std::size_t>(d)];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    bool negative = !cs.empty() && cs[0] == '-';
    if (negative) cs = cs.substr(1);
    if (!out.empty() || negative) out += negative ? "-" : "+";
    if (d == 0) {
      out += cs;
      continue;
    }
    if (cs != "1") out += cs;
    out += "x";
    if (d > 1) out += "^" + std::to_string(d);
  }
  return out;
}

PolyDivMod divmod(const Poly& a, const Poly& d) {
  require_same(a, d);
  if (d.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "division by the zero polynomial");
  const FieldSpec& f = a.field();
  std::vector<Scalar> rem = a.coeffs();
  const auto& dc = d.coeffs();
  const std::size_t dd = dc.size() - 1;
  Scalar inv = dc.back().inverse();
  if (rem.size() < dc.size()) return {Poly(f), a};
  std::vector<Scalar> q(rem.size() - dd, f.zero());
  for (std::size_t i = rem.size(); i-- > dd;) {
    Scalar coef = rem[i] * inv;
    q[i - dd] = coef;
    if (coef.is_zero()) continue;
    for (std::size_t j = 0; j <= dd; ++j) rem[i - dd + j] -= coef * dc[j];
  }
  rem.resize(dd);
  return {Poly(f, std::move(q)), Poly(f, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& m) { return divmod(a, m).remainder; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = poly_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly pow(const Poly& a, std::size_t e) {
  Poly r = Poly::constant(a.field().one()), base = a;
  while (e) {
    if (e & 1) r = r * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return r;
}

Poly powmod(const Poly& a, const mpz_class& e, const Poly& m) {
  Poly r = poly_mod(Poly::constant(a.field().one()), m), base = poly_mod(a, m);
  mpz_class k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = poly_mod(r * base, m);
    k >>= 1;
    if (k > 0) base = poly_mod(base * base, m);
  }
  return r;
}

Mat evaluate(const Poly& p, const Mat& m) {
  if (!m.square()) throw Error(ErrorKind::NotSquare, "evaluating a polynomial at a non-square matrix");
  const auto& c = p.coeffs();
  Mat r(m.field(), m.rows(), m.cols());
  Mat id = Mat::identity(m.field(), m.rows());
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * m + (*it) * id;
  return r;
}

Mat apply(const Poly& p, const Mat& m, const Mat& v) {
  const auto& c = p.coeffs();
  Mat r(m.field(), v.rows(), v.cols());
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = m * r + (*it) * v;
  return r;
}

Poly parse_poly(const FieldSpec& field, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.empty()) throw Error(ErrorKind::ParseError, "empty polynomial");
  Poly result(field);
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw Error(ErrorKind::ParseError, why + " in '" + text + "'"); };
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      fail("expected sign");
    }
    std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    std::string num = s.substr(start, i - start);
    Scalar coef = num.empty() ? field.one() : parse_scalar(field, num);
    std::size_t degree = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t es = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (es == i) fail("missing exponent");
        degree = std::stoul(s.substr(es, i - es));
      }
    } else if (num.empty()) {
      fail("empty term");
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') fail("unexpected character");
    if (negative) coef = -coef;
    result = result + Poly::constant(coef) * Poly::monomial(field, degree);
  }
  return result;
}

}  // namespace mapc
