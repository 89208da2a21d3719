#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mapc/error.hpp"
#include "mapc/normal_form.hpp"

using namespace mapc;

namespace {

const FieldSpec GF2 = FieldSpec::prime(2);
const FieldSpec GF3 = FieldSpec::prime(3);
const FieldSpec QQ = FieldSpec::rationals();

Mat random_matrix(const FieldSpec& f, std::size_t r, std::size_t c, std::mt19937_64& rng, long long lo, long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  Mat m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = f.from_int(d(rng));
  return m;
}

Mat random_invertible(const FieldSpec& f, std::size_t n, std::mt19937_64& rng) {
  for (;;) {
    Mat s = random_matrix(f, n, n, rng, -2, 2);
    if (is_invertible(s)) return s;
  }
}

// Jordan type from the rank sequence: #blocks of size >= k is rank(a^{k-1}) - rank(a^k).
std::vector<std::size_t> partition_from_ranks(const Mat& a) {
  std::vector<std::size_t> ranks{a.rows()};
  Mat p = Mat::identity(a.field(), a.rows());
  while (ranks.back() > 0) {
    p = p * a;
    ranks.push_back(rank(p));
  }
  std::vector<std::size_t> parts;
  for (std::size_t k = 1; k < ranks.size(); ++k) {
    std::size_t at_least_k = ranks[k - 1] - ranks[k];
    std::size_t at_least_next = k + 1 < ranks.size() ? ranks[k] - ranks[k + 1] : 0;
    for (std::size_t c = 0; c < at_least_k - at_least_next; ++c) parts.push_back(k);
  }
  return parts;
}

std::vector<std::size_t> partition_of(const JPlusForm& j) {
  std::vector<std::size_t> parts;
  for (std::size_t i = 0; i < j.sizes.size(); ++i)
    for (std::size_t c = 0; c < j.multiplicities[i]; ++c) parts.push_back(j.sizes[i]);
  return parts;
}

}  // namespace

TEST_CASE("nilpotent_jplus") {
  auto z = nilpotent_jplus(Mat(QQ, 3, 3));
  CHECK(z.sizes == std::vector<std::size_t>{1});
  CHECK(z.multiplicities == std::vector<std::size_t>{3});
  CHECK(z.matrix.is_zero());
  auto j3 = nilpotent_jplus(Mat(QQ, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}));
  CHECK(j3.sizes == std::vector<std::size_t>{3});
  CHECK(j3.multiplicities == std::vector<std::size_t>{1});
  CHECK_THROWS_AS(nilpotent_jplus(Mat::identity(QQ, 2)), Error);

  Mat base = jplus_matrix(GF3, {1, 2}, {1, 2});
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    Mat s = random_invertible(GF3, base.rows(), rng);
    Mat a = inverse(s) * base * s;
    auto j = nilpotent_jplus(a);
    CHECK(j.sizes == std::vector<std::size_t>{1, 2});
    CHECK(j.multiplicities == std::vector<std::size_t>{1, 2});
    CHECK(inverse(j.transform) * a * j.transform == j.matrix);
  }
  for (int t = 0; t < 40; ++t) {
    FieldSpec f = t % 2 ? GF2 : QQ;
    std::size_t n = 1 + t % 7;
    // Strictly lower triangular then scrambled: always nilpotent.
    Mat low = random_matrix(f, n, n, rng, -1, 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = i; k < n; ++k) low.at(i, k) = f.zero();
    Mat s = random_invertible(f, n, rng);
    Mat a = inverse(s) * low * s;
    auto j = nilpotent_jplus(a);
    auto parts = partition_of(j);
    CHECK(parts == partition_from_ranks(a));
    CHECK(inverse(j.transform) * a * j.transform == j.matrix);
  }
}

TEST_CASE("rational_canonical_form") {
  auto id = rational_canonical_form(Mat::identity(GF2, 2));
  REQUIRE(id.blocks.size() == 2);
  CHECK(id.blocks[0].divisor == ElementaryDivisor{Poly::from_ints(GF2, {1, 1}), 1});
  auto c = rational_canonical_form(companion(Poly::from_ints(GF2, {1, 0, 1})));
  REQUIRE(c.blocks.size() == 1);
  CHECK(c.blocks[0].divisor == ElementaryDivisor{Poly::from_ints(GF2, {1, 1}), 2});
  CHECK(c.blocks[0].matrix == companion(Poly::from_ints(GF2, {1, 0, 1})));

  std::mt19937_64 rng(23);
  for (int t = 0; t < 40; ++t) {
    FieldSpec f = t % 3 == 0 ? QQ : GF3;
    std::size_t n = 1 + t % 5;
    Mat m = random_matrix(f, n, n, rng, -1, 1);
    if (t % 4 == 0) m = direct_sum(m, m);
    auto r = rational_canonical_form(m);
    CHECK(inverse(r.transform) * m * r.transform == r.matrix());
    Mat s = random_invertible(f, m.rows(), rng);
    auto r2 = rational_canonical_form(inverse(s) * m * s);
    CHECK(r2.divisors() == r.divisors());
    // Idempotent on its own output.
    auto again = rational_canonical_form(r.matrix());
    CHECK(again.divisors() == r.divisors());
    CHECK(again.matrix() == r.matrix());
    Poly prod = Poly::constant(f.one());
    for (const auto& d : r.divisors()) prod = prod * d.power();
    CHECK(prod.degree() == static_cast<int>(m.rows()));
  }
}

TEST_CASE("invariant factors over Q divide each other") {
  Mat m = direct_sum(direct_sum(Mat(QQ, {{2}}), Mat(QQ, {{2}})), Mat(QQ, {{3}}));
  auto pieces = cyclic_decomposition(m);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].poly == Poly::from_ints(QQ, {6, -5, 1}));
  CHECK(pieces[1].poly == Poly::from_ints(QQ, {-2, 1}));
}

TEST_CASE("fitting_split") {
  auto z = fitting_split({Mat(QQ, 3, 3), Mat(QQ, 3, 3)});
  CHECK(z.nilpotent_pair.a.rows() == 3);
  CHECK(z.nonsingular_blocks.empty());
  auto i = fitting_split({Mat::identity(QQ, 2), Mat(QQ, 2, 2)});
  CHECK(i.nilpotent_pair.a.rows() == 0);
  REQUIRE(i.nonsingular_blocks.size() == 2);
  CHECK(i.nonsingular_blocks[0].matrix == Mat(QQ, {{1}}));

  MatPair p{Mat(QQ, {{0, 0, 0}, {1, 0, 0}, {0, 0, 1}}), Mat(QQ, 3, 3)};
  auto s = fitting_split(p);
  CHECK(s.nilpotent_pair.a == Mat(QQ, {{0, 0}, {1, 0}}));
  REQUIRE(s.nonsingular_blocks.size() == 1);
  CHECK(s.nonsingular_blocks[0].matrix == Mat(QQ, {{1}}));

  CHECK_THROWS_AS(fitting_split({Mat::identity(QQ, 1), Mat::identity(QQ, 1)}), Error);
}
