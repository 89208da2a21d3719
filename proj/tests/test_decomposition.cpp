#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mapc/decomposition.hpp"
#include "mapc/error.hpp"

using namespace mapc;

namespace {

const FieldSpec GF2 = FieldSpec::prime(2);
const FieldSpec GF3 = FieldSpec::prime(3);
const FieldSpec QQ = FieldSpec::rationals();

Mat blocks(const FieldSpec& f, std::size_t k, const std::vector<std::vector<int>>& layout, const Mat& phi) {
  // layout entries: 0 zero block, 1 identity, 2 phi
  const std::size_t t = layout.size();
  Mat m(f, t * k, t * k);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      if (layout[i][j] == 1) m.set_block(i * k, j * k, Mat::identity(f, k));
      if (layout[i][j] == 2) m.set_block(i * k, j * k, phi);
    }
  return m;
}

}  // namespace

TEST_CASE("words") {
  CHECK(is_aperiodic({1, 2}));
  CHECK(is_aperiodic({1}));
  CHECK_FALSE(is_aperiodic({2, 2}));
  CHECK_FALSE(is_aperiodic({1, 2, 1, 2}));
  CHECK(least_rotation({2, 2, 1, 1}) == Word{1, 1, 2, 2});
  CHECK(least_rotation({2, 1, 2, 1, 1}) == Word{1, 1, 2, 1, 2});
}

TEST_CASE("path summand matrices") {
  // 1 -> 2 -> 3 <= 4
  Summand s{SummandKind::Path, {1, 1, 2}, {}};
  MatPair p = build_summand(QQ, s);
  CHECK(p.a == Mat(QQ, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}}));
  CHECK(p.b == Mat(QQ, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}));
  // A + B^T is the lower shift for every path word.
  for (Word w : {Word{}, Word{2}, Word{1, 2, 2, 1}}) {
    MatPair q = build_summand(GF2, {SummandKind::Path, w, {}});
    Mat shift(GF2, w.size() + 1, w.size() + 1);
    for (std::size_t i = 0; i < w.size(); ++i) shift.at(i + 1, i) = GF2.one();
    CHECK(q.a + q.b.transpose() == shift);
  }
}

TEST_CASE("cycle summand matrices") {
  ElementaryDivisor d{parse_poly(GF2, "x^3+x+1"), 1};
  Mat phi = frobenius_block(d);
  // Least rotation 1 1 2 2 of the four-vertex example: 1->2->3 <= 4 <= 1, phi on 3 <= 4.
  MatPair p = build_summand(GF2, {SummandKind::Cycle, {1, 1, 2, 2}, {d}});
  CHECK(p.a == blocks(GF2, 3, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}}, phi));
  CHECK(p.b == blocks(GF2, 3, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 2}, {1, 0, 0, 0}}, phi));
  MatPair loop_a = build_summand(GF2, {SummandKind::Cycle, {1}, {d}});
  CHECK(loop_a.a == phi);
  CHECK(loop_a.b.is_zero());
  MatPair loop_b = build_summand(GF2, {SummandKind::Cycle, {2}, {d}});
  CHECK(loop_b.a.is_zero());
  CHECK(loop_b.b == phi);
}

TEST_CASE("build_canonical") {
  Decomposition empty{GF3, {}};
  MatPair z = build_canonical(empty);
  CHECK(z.a.rows() == 0);
  Decomposition d = parse_decomposition("field GF(3)\npath 1\ncycle 1 2 | (x+1)^2\n");
  MatPair p = build_canonical(d);
  CHECK(p.a.rows() == 2 + 4);
  CHECK(d.total_dim() == 6);
  CHECK((p.a * p.b).is_zero());
  CHECK((p.b * p.a).is_zero());
}

TEST_CASE("serialization") {
  Decomposition d = normalize(parse_decomposition(
      "field GF(3)\n"
      "cycle 2 1 | (x+2)^1\n"
      "path 2 1\n"
      "path -\n"
      "path 1 2\n"
      "cycle 1 | (x^2+1)^1\n"));
  CHECK(serialize(d) ==
        "field GF(3)\n"
        "path -\n"
        "path 1 2\n"
        "path 2 1\n"
        "cycle 1 | (x^2+1)^1\n"
        "cycle 1 2 | (x+2)^1\n");
  CHECK(parse_decomposition(serialize(d)) == d);
  CHECK_THROWS_AS(parse_decomposition("path 1\n"), Error);
  CHECK_THROWS_AS(parse_decomposition("field GF(3)\npath 3\n"), Error);
  CHECK_THROWS_AS(parse_decomposition("field GF(3)\ncycle 1 2\n"), Error);
  CHECK_THROWS_AS(parse_decomposition("field GF(3)\nloop 1\n"), Error);
}

TEST_CASE("normalize") {
  // Reducible Phi splits into primary parts over GF(p).
  Decomposition d = normalize(parse_decomposition("field GF(2)\ncycle 2 1 | (x^2+1)^1, (x^2+x+1)^1\n"));
  CHECK(serialize(d) == "field GF(2)\ncycle 1 2 | (x+1)^2\ncycle 1 2 | (x^2+x+1)^1\n");
  // Over Q, Phi blocks sharing a word pool into invariant factors.
  Decomposition q = normalize(parse_decomposition("field Q\ncycle 1 2 | (x-2)^1\ncycle 2 1 | (x-2)^1, (x-3)^1\n"));
  REQUIRE(q.summands.size() == 2);
  Poly f1 = q.summands[0].phi_class[0].base, f2 = q.summands[1].phi_class[0].base;
  CHECK(f1 * f2 == parse_poly(QQ, "x-2") * parse_poly(QQ, "x-2") * parse_poly(QQ, "x-3"));
  CHECK(((f1.degree() == 1 && f2.degree() == 2) || (f1.degree() == 2 && f2.degree() == 1)));
  CHECK_THROWS_AS(normalize(parse_decomposition("field GF(2)\ncycle 1 2 1 2 | (x+1)^1\n")), Error);
  CHECK_THROWS_AS(normalize(parse_decomposition("field GF(2)\ncycle 1 2 | (x)^1\n")), Error);
  CHECK(normalize(q) == q);
}
