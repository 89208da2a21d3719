#include "mapc/normal_form.hpp"

#include <algorithm>
#include <numeric>

#include "mapc/error.hpp"

namespace mapc {

namespace {

Mat unit(const FieldSpec& f, std::size_t n, std::size_t j) {
  Mat e(f, n, 1);
  e.at(j, 0) = f.one();
  return e;
}

Mat krylov(const Mat& m, const Mat& v, std::size_t d) {
  Mat k(m.field(), m.rows(), 0);
  Mat w = v;
  for (std::size_t i = 0; i < d; ++i) {
    k = hstack(k, w);
    w = m * w;
  }
  return k;
}

Poly exact_div(const Poly& a, const Poly& b) { return divmod(a, b).quotient; }

// Strip from f every prime factor it shares with q.
Poly remove_primes_of(Poly f, const Poly& q) {
  for (Poly h = gcd(f, q); h.degree() > 0; h = gcd(f, q)) f = exact_div(f, h);
  return f;
}

// A vector whose minimal polynomial is the minimal polynomial of m.
Mat maximal_vector(const Mat& m, Poly& minpoly) {
  const FieldSpec& f = m.field();
  const std::size_t n = m.rows();
  Mat u = unit(f, n, 0);
  Poly fu = vector_minimal_polynomial(m, u);
  for (std::size_t j = 1; j < n; ++j) {
    Mat w = unit(f, n, j);
    if (apply(fu, m, w).is_zero()) continue;
    Poly gw = vector_minimal_polynomial(m, w);
    // lcm(fu, gw) = a * b with a | fu, b | gw coprime.
    Poly b0 = exact_div(gw, gcd(fu, gw));
    Poly b_rest = remove_primes_of(gw, b0);
    Poly b = exact_div(gw, b_rest);
    Poly a = remove_primes_of(fu, b0);
    u = apply(exact_div(fu, a), m, u) + apply(exact_div(gw, b), m, w);
    fu = (a * b).monic();
  }
  minpoly = fu;
  return u;
}

void decompose(const Mat& m, const Mat& embed, std::vector<CyclicPiece>& out) {
  const std::size_t n = m.rows();
  if (n == 0) return;
  Poly f(m.field());
  Mat v = maximal_vector(m, f);
  const auto d = static_cast<std::size_t>(f.degree());
  Mat k = krylov(m, v, d);
  out.push_back({f, embed * k});
  if (d == n) return;
  // phi = coordinate along M^{d-1} v in a basis extending the Krylov basis.
  Mat basis = extend_to_basis(k);
  Mat phi = inverse(basis).block(d - 1, 0, 1, n);
  Mat conditions(m.field(), 0, n);
  Mat row = phi;
  for (std::size_t j = 0; j < d; ++j) {
    conditions = vstack(conditions, row);
    row = row * m;
  }
  Mat w = rank_and_nullspace(conditions).nullspace;
  if (w.cols() != n - d) throw Error(ErrorKind::Internal, "cyclic complement has the wrong dimension");
  auto restricted = solve(w, m * w);
  if (!restricted) throw Error(ErrorKind::Internal, "cyclic complement is not invariant");
  decompose(*restricted, embed * w, out);
}

}  // namespace

std::vector<CyclicPiece> cyclic_decomposition(const Mat& m) {
  if (!m.square()) throw Error(ErrorKind::NotSquare, "cyclic decomposition of a non-square matrix");
  std::vector<CyclicPiece> out;
  decompose(m, Mat::identity(m.field(), m.rows()), out);
  return out;
}

Mat RationalForm::matrix() const {
  const FieldSpec f = transform.field();
  Mat r(f, 0, 0);
  for (const auto& b : blocks) r = direct_sum(r, b.matrix);
  return r;
}

std::vector<ElementaryDivisor> RationalForm::divisors() const {
  std::vector<ElementaryDivisor> out;
  for (const auto& b : blocks) out.push_back(b.divisor);
  return out;
}

RationalForm rational_canonical_form(const Mat& m) {
  const FieldSpec& f = m.field();
  auto pieces = cyclic_decomposition(m);
  struct Item {
    ElementaryDivisor divisor;
    Mat basis;
  };
  std::vector<Item> items;
  for (auto& piece : pieces) {
    if (f.is_rationals()) {
      items.push_back({{piece.poly, 1}, piece.basis});
      continue;
    }
    Mat v = piece.basis.column(0);
    for (const auto& d : factor_gfp(piece.poly)) {
      Poly q = d.power();
      Mat gen = apply(exact_div(piece.poly, q), m, v);
      items.push_back({d, krylov(m, gen, d.degree())});
    }
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.divisor < b.divisor; });
  RationalForm out;
  out.invariant_factor_form = f.is_rationals();
  out.transform = Mat(f, m.rows(), 0);
  for (auto& it : items) {
    out.blocks.push_back({it.divisor, frobenius_block(it.divisor)});
    out.transform = hstack(out.transform, it.basis);
  }
  return out;
}

FittingSplit fitting_split(const MatPair& pair) {
  require_annihilating(pair);
  const Mat& a = pair.a;
  const FieldSpec& f = a.field();
  const std::size_t n = a.rows();
  Mat an = mat_pow(a, n);
  Mat ker = rank_and_nullspace(an).nullspace;
  Mat img = an.select_cols(independent_columns(an));
  Mat s = hstack(ker, img);
  auto conj = similarity_conjugate(pair, s);
  const std::size_t k = ker.cols(), r = img.cols();
  if (!conj.a.block(0, k, k, r).is_zero() || !conj.a.block(k, 0, r, k).is_zero())
    throw Error(ErrorKind::Internal, "Fitting split did not block-diagonalize A");
  // AB = BA = 0 forces B to vanish on im A^n and to map into ker A^n.
  if (!conj.b.block(0, k, k, r).is_zero() || !conj.b.block(k, 0, r, n).is_zero())
    throw Error(ErrorKind::Internal, "B does not vanish on the nonsingular part");
  FittingSplit out;
  out.nilpotent_pair = {conj.a.block(0, 0, k, k), conj.b.block(0, 0, k, k)};
  auto rcf = rational_canonical_form(conj.a.block(k, k, r, r));
  out.nonsingular_blocks = rcf.blocks;
  out.transform = s * direct_sum(Mat::identity(f, k), rcf.transform);
  return out;
}

std::size_t JPlusForm::block_offset(std::size_t i) const {
  std::size_t off = 0;
  for (std::size_t j = 0; j < i; ++j) off += sizes[j] * multiplicities[j];
  return off;
}

Mat jplus_matrix(const FieldSpec& field, const std::vector<std::size_t>& sizes,
                 const std::vector<std::size_t>& multiplicities) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) n += sizes[i] * multiplicities[i];
  Mat j(field, n, n);
  std::size_t off = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t r = multiplicities[i];
    for (std::size_t level = 1; level < sizes[i]; ++level)
      for (std::size_t c = 0; c < r; ++c) j.at(off + level * r + c, off + (level - 1) * r + c) = field.one();
    off += sizes[i] * r;
  }
  return j;
}

JPlusForm nilpotent_jplus(const Mat& a) {
  if (!a.square()) throw Error(ErrorKind::NotSquare, "J+ form of a non-square matrix");
  const FieldSpec& f = a.field();
  const std::size_t n = a.rows();
  // kernels[k] spans ker a^k
  std::vector<Mat> kernels{Mat(f, n, 0)};
  Mat power = Mat::identity(f, n);
  while (kernels.back().cols() < n) {
    if (kernels.size() > n) throw Error(ErrorKind::NotNilpotent, "matrix is not nilpotent");
    power = power * a;
    kernels.push_back(rank_and_nullspace(power).nullspace);
    if (kernels.back().cols() == kernels[kernels.size() - 2].cols())
      throw Error(ErrorKind::NotNilpotent, "matrix is not nilpotent");
  }
  const std::size_t top = kernels.size() - 1;
  JPlusForm out;
  // chains[m] holds the chain heads of length m
  std::vector<std::vector<Mat>> chains(top + 1);
  for (std::size_t m = top; m >= 1; --m) {
    Mat span = kernels[m - 1];
    if (m < top) span = hstack(span, a * kernels[m + 1]);
    std::size_t have = rank(span);
    const Mat& candidates = kernels[m];
    for (std::size_t j = 0; j < candidates.cols(); ++j) {
      Mat trial = hstack(span, candidates.column(j));
      std::size_t rk = rank(trial);
      if (rk > have) {
        span = trial;
        have = rk;
        chains[m].push_back(candidates.column(j));
      }
    }
  }
  out.transform = Mat(f, n, 0);
  for (std::size_t m = 1; m <= top; ++m) {
    if (chains[m].empty()) continue;
    out.sizes.push_back(m);
    out.multiplicities.push_back(chains[m].size());
    std::vector<Mat> level(chains[m]);
    for (std::size_t l = 1; l <= m; ++l) {
      for (auto& v : level) {
        out.transform = hstack(out.transform, v);
        v = a * v;
      }
    }
  }
  out.matrix = jplus_matrix(f, out.sizes, out.multiplicities);
  if (inverse(out.transform) * a * out.transform != out.matrix)
    throw Error(ErrorKind::Internal, "chain basis does not realize the J+ form");
  return out;
}

}  // namespace mapc
