#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mapc/error.hpp"
#include "mapc/normal_form.hpp"
#include "mapc/pair_canon.hpp"
#include "fixtures.hpp"

using namespace mapc;
using namespace mapc::fixtures;

namespace {

const FieldSpec GF2 = FieldSpec::prime(2);
const FieldSpec GF3 = FieldSpec::prime(3);
const FieldSpec QQ = FieldSpec::rationals();

Mat random_matrix(const FieldSpec& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> d(-2, 2);
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f.from_int(d(rng));
  return m;
}

Mat random_invertible(const FieldSpec& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Mat s = random_matrix(f, n, n, rng);
    if (is_invertible(s)) return s;
  }
}

// Exhaustive orbit test over GF(2).
bool brute_similar_gf2(const MatPair& p, const MatPair& q) {
  const std::size_t n = p.a.rows();
  const std::size_t cells = n * n;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
    Mat s(GF2, n, n);
    for (std::size_t c = 0; c < cells; ++c)
      if (bits >> c & 1) s.at(c / n, c % n) = GF2.one();
    if (!is_invertible(s)) continue;
    if (p.a * s == s * q.a && p.b * s == s * q.b) return true;
  }
  return false;
}

Decomposition random_decomposition(const FieldSpec& f, std::mt19937_64& rng, std::size_t max_dim) {
  std::uniform_int_distribution<int> coin(0, 1), len(0, 3), cyc(1, 4), pick(0, 3);
  Decomposition d{f, {}};
  std::size_t dim = 0;
  while (dim < max_dim) {
    Summand s;
    if (coin(rng)) {
      s.kind = SummandKind::Path;
      for (int i = len(rng); i > 0; --i) s.word.push_back(1 + coin(rng));
    } else {
      s.kind = SummandKind::Cycle;
      do {
        s.word.clear();
        for (int i = cyc(rng); i > 0; --i) s.word.push_back(1 + coin(rng));
      } while (!is_aperiodic(s.word));
      const char* bases_q[] = {"x-1", "x+1", "x-2", "x^2+1"};
      const char* bases_p[] = {"x+1", "x-1", "x^2+1", "x+2"};
      Poly base = parse_poly(f, f.is_rationals() ? bases_q[pick(rng)] : bases_p[pick(rng)]);
      if (base.coeff(0).is_zero() || base.degree() < 1) continue;
      s.phi_class.push_back({base.monic(), static_cast<unsigned>(1 + coin(rng))});
    }
    if (dim + s.dim() > max_dim + 2) continue;
    dim += s.dim();
    d.summands.push_back(s);
  }
  return normalize(d);
}

MatPair scramble(const MatPair& p, std::mt19937_64& rng) {
  return similarity_conjugate(p, random_invertible(p.a.field(), p.a.rows(), rng));
}

void check_witness(const MatPair& p, const Canonicalized& c) {
  CHECK(similarity_conjugate(p, c.witness) == build_canonical(c.decomposition));
  CHECK(c.decomposition.total_dim() == p.a.rows());
}

}  // namespace

TEST_CASE("one-dimensional zero pair") {
  auto c = canonicalize({Mat(QQ, 1, 1), Mat(QQ, 1, 1)});
  CHECK(serialize(c.decomposition) == "field Q\n# invariant-factor form\npath -\n");
  auto e = canonicalize({Mat(GF2, 0, 0), Mat(GF2, 0, 0)});
  CHECK(e.decomposition.summands.empty());
}

TEST_CASE("path example") {
  MatPair p{Mat(QQ, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}}),
            Mat(QQ, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}})};
  auto c = canonicalize(p);
  REQUIRE(c.decomposition.summands.size() == 1);
  CHECK(c.decomposition.summands[0].kind == SummandKind::Path);
  CHECK(c.decomposition.summands[0].word == Word{1, 1, 2});
  check_witness(p, c);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) CHECK(canonicalize(scramble(p, rng)).decomposition == c.decomposition);
}

TEST_CASE("cycle example") {
  Mat phi = frobenius_block({parse_poly(GF2, "x^3+x+1"), 1});
  MatPair p = four_cycle(GF2, phi);
  auto c = canonicalize(p);
  CHECK(serialize(c.decomposition) == "field GF(2)\ncycle 1 1 2 2 | (x^3+x+1)^1\n");
  check_witness(p, c);
  CHECK(pairs_similar(p, four_cycle_renumbered(GF2, phi)));

  // Over Q the 3x3 Phi diag(2, 2, 3) has invariant factors x-2 and (x-2)(x-3).
  Mat d3(QQ, {{2, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  auto q = canonicalize(four_cycle(QQ, d3));
  REQUIRE(q.decomposition.summands.size() == 2);
  Poly prod = q.decomposition.summands[0].phi_class[0].base * q.decomposition.summands[1].phi_class[0].base;
  CHECK(prod == parse_poly(QQ, "(x-2)") * parse_poly(QQ, "x-2") * parse_poly(QQ, "x-3"));
  for (const auto& s : q.decomposition.summands) CHECK(s.word == Word{1, 1, 2, 2});
  CHECK(pairs_similar(four_cycle(QQ, d3), four_cycle_renumbered(QQ, d3)));
}

TEST_CASE("paths 1 2 and 2 1 are not similar") {
  MatPair p12 = build_summand(GF2, {SummandKind::Path, {1, 2}, {}});
  MatPair p21 = build_summand(GF2, {SummandKind::Path, {2, 1}, {}});
  CHECK_FALSE(pairs_similar(p12, p21));
  CHECK_FALSE(brute_similar_gf2(p12, p21));
  std::mt19937_64 rng(11);
  MatPair s = scramble(p12, rng);
  CHECK(pairs_similar(p12, s));
  CHECK(brute_similar_gf2(p12, s));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(canonicalize({Mat(QQ, {{0, 1}, {0, 0}}), Mat(QQ, {{0, 0}, {1, 0}})}), Error);
  CHECK_THROWS_AS(canonicalize({Mat(QQ, 2, 3), Mat(QQ, 2, 3)}), Error);
  CHECK_THROWS_AS(pairs_similar({Mat(QQ, 1, 1), Mat(QQ, 1, 1)}, {Mat(GF2, 1, 1), Mat(GF2, 1, 1)}), Error);
}

TEST_CASE("arrow graph") {
  auto g0 = build_graph({Mat(GF3, 3, 3), Mat(GF3, 3, 3)}, {{0}, {1}, {2}});
  CHECK(g0.arrows.empty());
  CHECK(components(g0).size() == 3);

  MatPair path = build_summand(GF3, {SummandKind::Path, {1, 1, 2}, {}});
  auto g = build_graph(path, {{0}, {1}, {2}, {3}});
  REQUIRE(g.arrows.size() == 3);
  auto comps = components(g);
  REQUIRE(comps.size() == 1);
  CHECK_FALSE(comps[0].cycle);
  CHECK(comps[0].order == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(comps[0].word == Word{1, 1, 2});

  Mat phi = frobenius_block({parse_poly(GF2, "x^3+x+1"), 1});
  auto gc = build_graph(four_cycle(GF2, phi), {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {9, 10, 11}});
  auto cc = components(gc);
  REQUIRE(cc.size() == 1);
  CHECK(cc[0].cycle);
  CHECK(cc[0].word == Word{2, 2, 1, 1});
  int phis = 0;
  for (const auto& a : gc.arrows) phis += a.block == phi;
  CHECK(phis == 1);

  // Two ordinary arrows into one vertex.
  Mat a(GF2, {{0, 0, 0}, {0, 0, 0}, {1, 1, 0}});
  CHECK_THROWS_AS(build_graph({a, Mat(GF2, 3, 3)}, {{0}, {1}, {2}}), Error);
  // Ordinary arrow in, double arrow out.
  Mat a2(GF2, {{0, 0, 0}, {1, 0, 0}, {0, 0, 0}});
  Mat b2(GF2, {{0, 0, 0}, {0, 0, 0}, {0, 1, 0}});
  CHECK_THROWS_AS(build_graph({a2, b2}, {{0}, {1}, {2}}), Error);
}

TEST_CASE("aperiodic reduction") {
  CycleWalk w12{{1, 2}, {{0}, {1}}};
  CHECK(aperiodic_reduce(w12).word == Word{1, 2});
  CycleWalk w22{{2, 2}, {{0}, {1}}};
  auto r22 = aperiodic_reduce(w22);
  CHECK(r22.word == Word{2});
  CHECK(r22.spaces == std::vector<Coords>{{0, 1}});
  CycleWalk w1212{{1, 2, 1, 2}, {{0}, {1}, {2}, {3}}};
  auto r = aperiodic_reduce(w1212);
  CHECK(r.word == Word{1, 2});
  CHECK(r.spaces == std::vector<Coords>{{0, 2}, {1, 3}});
}

TEST_CASE("cycle monodromy") {
  // All blocks identity.
  MatPair idc = four_cycle(GF3, Mat::identity(GF3, 2));
  CycleWalk w{{2, 2, 1, 1}, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}};
  CHECK(cycle_monodromy(idc, w).phi == Mat::identity(GF3, 2));
  // One-vertex double loop.
  Mat phi(GF3, {{0, 1}, {1, 1}});
  CHECK(cycle_monodromy({Mat(GF3, 2, 2), phi}, CycleWalk{{2}, {{0, 1}}}).phi == phi);
  // Each rotation gives a conjugate monodromy; the bases make every other edge the identity.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    MatPair p = four_cycle(GF3, phi);
    // random vertex bases
    Mat s(GF3, 0, 0);
    for (int i = 0; i < 4; ++i) s = direct_sum(s, random_invertible(GF3, 2, rng));
    MatPair q = similarity_conjugate(p, s);
    auto divisors = rational_canonical_form(phi).divisors();
    for (std::size_t r = 0; r < 4; ++r) {
      CycleWalk rw{{}, {}};
      for (std::size_t i = 0; i < 4; ++i) {
        rw.word.push_back(w.word[(i + r) % 4]);
        rw.spaces.push_back(w.spaces[(i + r) % 4]);
      }
      Monodromy m = cycle_monodromy(q, rw);
      CHECK(rational_canonical_form(m.phi).divisors() == divisors);
      auto blocks = cycle_blocks(q, rw);
      std::size_t p_idx = 0;
      while (rw.word[p_idx] != 2) ++p_idx;
      for (std::size_t i = 0; i < 4; ++i) {
        const Mat& here = m.bases[i];
        const Mat& next = m.bases[(i + 1) % 4];
        Mat lhs = rw.word[i] == 1 ? blocks[i] * here : blocks[i] * next;
        Mat rhs = rw.word[i] == 1 ? next : here;
        CHECK(lhs == (i == p_idx ? rhs * m.phi : rhs));
      }
    }
  }
}

TEST_CASE("scramble invariance and idempotence") {
  std::mt19937_64 rng(77);
  const FieldSpec fields[] = {GF2, GF3, FieldSpec::prime(7), QQ};
  for (int t = 0; t < 160; ++t) {
    const FieldSpec& f = fields[t % 4];
    Decomposition d = random_decomposition(f, rng, 1 + static_cast<std::size_t>(t % 8));
    MatPair canon = build_canonical(d);
    auto c0 = canonicalize(canon);
    CAPTURE(serialize(d));
    CHECK(c0.decomposition == d);
    MatPair p = scramble(canon, rng);
    auto c1 = canonicalize(p);
    CHECK(c1.decomposition == d);
    check_witness(p, c1);
  }
}

TEST_CASE("random annihilating pairs") {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> dim(1, 7);
  for (int t = 0; t < 150; ++t) {
    const FieldSpec& f = t % 3 == 0 ? GF2 : t % 3 == 1 ? GF3 : QQ;
    const std::size_t n = static_cast<std::size_t>(dim(rng));
    // Low-rank A, then B = K M L with AK = 0 and LA = 0.
    std::size_t rk = static_cast<std::size_t>(dim(rng)) % (n + 1);
    Mat a = random_matrix(f, n, rk, rng) * random_matrix(f, rk, n, rng);
    if (t % 4 == 0) a = a * a;
    Mat k = rank_and_nullspace(a).nullspace;
    Mat l = rank_and_nullspace(a.transpose()).nullspace.transpose();
    Mat b = k * random_matrix(f, k.cols(), l.rows(), rng) * l;
    MatPair p{a, b};
    auto c = canonicalize(p);
    check_witness(p, c);
    CHECK(canonicalize(scramble(p, rng)).decomposition == c.decomposition);
    CHECK(canonicalize(build_canonical(c.decomposition)).decomposition == c.decomposition);
  }
}
