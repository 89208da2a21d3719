#include "mapc/polyfactor.hpp"

#include <algorithm>
#include <cctype>

#include "mapc/error.hpp"

namespace mapc {

bool operator<(const ElementaryDivisor& a, const ElementaryDivisor& b) {
  if (a.base != b.base) return a.base < b.base;
  return a.exponent < b.exponent;
}

std::string ElementaryDivisor::to_string() const {
  return "(" + base.to_string() + ")^" + std::to_string(exponent);
}

ElementaryDivisor parse_divisor(const FieldSpec& field, const std::string& text) {
  auto close = text.rfind(')');
  if (close == std::string::npos) return {parse_poly(field, text).monic(), 1};
  std::string rest = text.substr(close + 1);
  unsigned e = 1;
  if (!rest.empty()) {
    if (rest[0] != '^' || rest.size() < 2) throw Error(ErrorKind::ParseError, "bad exponent in '" + text + "'");
    for (std::size_t i = 1; i < rest.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(rest[i])))
        throw Error(ErrorKind::ParseError, "bad exponent in '" + text + "'");
    e = static_cast<unsigned>(std::stoul(rest.substr(1)));
    if (e == 0) throw Error(ErrorKind::ParseError, "zero exponent in '" + text + "'");
  }
  Poly base = parse_poly(field, text.substr(0, close + 1));
  if (base.degree() < 1) throw Error(ErrorKind::ParseError, "constant divisor base in '" + text + "'");
  return {base.monic(), e};
}

namespace {

void require_prime_field(const Poly& f) {
  if (!f.field().is_prime())
    throw Error(ErrorKind::UnsupportedField, "irreducible factorization is only available over GF(p)");
}

Poly exact_div(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }

// f(x) = g(x^p) over GF(p): return g (p-th root is the identity on GF(p)).
Poly pth_root(const Poly& f) {
  const auto p = f.field().characteristic();
  std::vector<Scalar> c;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) c.push_back(f.coeffs()[i]);
  return Poly(f.field(), std::move(c));
}

// Monic squarefree parts: f = prod part^multiplicity.
void squarefree(const Poly& f, unsigned scale, std::vector<std::pair<Poly, unsigned>>& out) {
  if (f.degree() < 1) return;
  Poly c = gcd(f, f.derivative());
  Poly w = exact_div(f, c);
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly fac = exact_div(w, y);
    if (fac.degree() > 0) out.emplace_back(fac.monic(), i * scale);
    w = y;
    c = exact_div(c, y);
    ++i;
  }
  if (c.degree() > 0) squarefree(pth_root(c), scale * static_cast<unsigned>(f.field().characteristic()), out);
}

// (product of all irreducible factors of degree d, d)
std::vector<std::pair<Poly, unsigned>> distinct_degree(Poly g) {
  std::vector<std::pair<Poly, unsigned>> out;
  const FieldSpec& f = g.field();
  mpz_class p(static_cast<unsigned long>(f.characteristic()));
  Poly x = Poly::x(f);
  Poly h = poly_mod(x, g);
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(g.degree()); ++d) {
    h = powmod(h, p, g);
    Poly d_part = gcd(g, h - x);
    if (d_part.degree() > 0) {
      out.emplace_back(d_part, d);
      g = exact_div(g, d_part);
      h = poly_mod(h, g);
    }
  }
  if (g.degree() > 0) out.emplace_back(g.monic(), static_cast<unsigned>(g.degree()));
  return out;
}

Poly random_poly(const FieldSpec& f, int below_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, f.characteristic() - 1);
  std::vector<Scalar> c;
  for (int i = 0; i < below_degree; ++i) c.push_back(f.from_int(static_cast<long long>(dist(rng))));
  return Poly(f, std::move(c));
}

// Splits g (product of distinct irreducibles of degree d) by Cantor-Zassenhaus.
void equal_degree(const Poly& g, unsigned d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (static_cast<unsigned>(g.degree()) == d) {
    out.push_back(g.monic());
    return;
  }
  const FieldSpec& f = g.field();
  const auto p = f.characteristic();
  for (;;) {
    Poly a = random_poly(f, g.degree(), rng);
    if (a.degree() < 1) continue;
    Poly b(f);
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)).
      Poly t = a;
      b = a;
      for (unsigned j = 1; j < d; ++j) {
        t = poly_mod(t * t, g);
        b = b + t;
      }
    } else {
      mpz_class e;
      mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), d);
      e = (e - 1) / 2;
      b = powmod(a, e, g) - Poly::constant(f.one());
    }
    Poly s = gcd(g, b);
    if (s.degree() > 0 && s.degree() < g.degree()) {
      equal_degree(s, d, rng, out);
      equal_degree(exact_div(g, s), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<ElementaryDivisor> factor_gfp(const Poly& f, std::uint64_t seed) {
  require_prime_field(f);
  if (f.is_zero()) throw Error(ErrorKind::DivisionByZeroPoly, "factoring the zero polynomial");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Poly, unsigned>> parts;
  squarefree(f.monic(), 1, parts);
  std::vector<ElementaryDivisor> out;
  for (const auto& [part, mult] : parts) {
    for (const auto& [dd, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(dd, d, rng, irr);
      for (auto& q : irr) out.push_back({q, mult});
    }
  }
  // Defensive merge in case a base shows up in two squarefree levels.
  std::vector<ElementaryDivisor> result;
  for (auto& d : out) {
    auto it = std::find_if(result.begin(), result.end(), [&](const auto& r) { return r.base == d.base; });
    if (it != result.end())
      it->exponent += d.exponent;
    else
      result.push_back(d);
  }
  std::sort(result.begin(), result.end());
  return result;
}

bool is_irreducible(const Poly& f) {
  require_prime_field(f);
  const int n = f.degree();
  if (n < 1) return false;
  if (n == 1) return true;
  Poly g = f.monic();
  const FieldSpec& field = f.field();
  mpz_class p(static_cast<unsigned long>(field.characteristic()));
  Poly x = Poly::x(field);
  // x^(p^k) mod g for k = 0..n
  std::vector<Poly> frob{poly_mod(x, g)};
  for (int k = 1; k <= n; ++k) frob.push_back(powmod(frob.back(), p, g));
  if (!(frob[static_cast<std::size_t>(n)] - poly_mod(x, g)).is_zero()) return false;
  for (int q = 2; q <= n; ++q) {
    if (n % q) continue;
    bool prime = true;
    for (int r = 2; r * r <= q; ++r)
      if (q % r == 0) prime = false;
    if (!prime) continue;
    if (gcd(g, frob[static_cast<std::size_t>(n / q)] - x).degree() > 0) return false;
  }
  return true;
}

std::vector<Poly> monic_irreducibles(const FieldSpec& field, unsigned degree) {
  if (!field.is_prime()) throw Error(ErrorKind::UnsupportedField, "enumeration needs a finite field");
  const auto p = field.characteristic();
  std::vector<Poly> out;
  std::vector<std::uint64_t> digits(degree, 0);
  for (;;) {
    std::vector<Scalar> c;
    for (auto d : digits) c.push_back(field.from_int(static_cast<long long>(d)));
    c.push_back(field.one());
    Poly candidate(field, std::move(c));
    if (is_irreducible(candidate)) out.push_back(candidate);
    std::size_t i = 0;
    while (i < degree && ++digits[i] == p) digits[i++] = 0;
    if (i == degree) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Mat companion(const Poly& monic) {
  if (!monic.is_monic()) throw Error(ErrorKind::Internal, "companion matrix of a non-monic polynomial");
  const auto n = static_cast<std::size_t>(monic.degree());
  Mat c(monic.field(), n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) c.at(i + 1, i) = monic.field().one();
  for (std::size_t i = 0; i < n; ++i) c.at(i, n - 1) = -monic.coeff(i);
  return c;
}

Mat frobenius_block(const ElementaryDivisor& d) { return companion(d.power()); }

Poly vector_minimal_polynomial(const Mat& m, const Mat& v) {
  const FieldSpec& f = m.field();
  if (v.is_zero()) return Poly::constant(f.one());
  Mat krylov = v;
  Mat w = m * v;
  for (;;) {
    auto coeffs = solve(krylov, w);
    if (coeffs) {
      std::vector<Scalar> c;
      for (std::size_t i = 0; i < coeffs->rows(); ++i) c.push_back(-(*coeffs)(i, 0));
      c.push_back(f.one());
      return Poly(f, std::move(c));
    }
    krylov = hstack(krylov, w);
    w = m * w;
  }
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly(a.field());
  return divmod(a * b, gcd(a, b)).quotient.monic();
}

Poly minimal_polynomial(const Mat& m) {
  if (!m.square()) throw Error(ErrorKind::NotSquare, "minimal polynomial of a non-square matrix");
  Poly acc = Poly::constant(m.field().one());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    Mat e(m.field(), m.rows(), 1);
    e.at(j, 0) = m.field().one();
    // Skip basis vectors already killed by the running lcm.
    if (apply(acc, m, e).is_zero()) continue;
    acc = lcm(acc, vector_minimal_polynomial(m, e));
  }
  return acc;
}

}  // namespace mapc
