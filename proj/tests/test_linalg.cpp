#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mapc/error.hpp"
#include "mapc/matrix.hpp"
#include "mapc/poly.hpp"

using namespace mapc;

namespace {

const FieldSpec GF2 = FieldSpec::prime(2);
const FieldSpec GF3 = FieldSpec::prime(3);
const FieldSpec QQ = FieldSpec::rationals();

// Product of random elementary matrices; invertible by construction.
Mat random_elementary_product(FieldSpec f, std::size_t n, std::mt19937_64& rng) {
  Mat s = Mat::identity(f, n);
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<long long> val(1, static_cast<long long>(f.characteristic()) - 1);
  for (int step = 0; step < 4 * static_cast<int>(n) + 3; ++step) {
    std::size_t i = idx(rng), j = idx(rng);
    Mat e = Mat::identity(f, n);
    if (i == j)
      e.at(i, i) = f.from_int(val(rng));
    else
      e.at(i, j) = f.from_int(val(rng));
    s = s * e;
  }
  return s;
}

}  // namespace

TEST_CASE("field construction and canonical residues") {
  CHECK_THROWS_AS(FieldSpec::prime(4), Error);
  CHECK(GF3.from_int(-1).residue() == 2);
  CHECK(QQ.from_fraction(2, -4).to_string() == "-1/2");
  CHECK(parse_scalar(GF3, "1/2").residue() == 2);
}

TEST_CASE("Fermat identity x^p = x") {
  for (std::uint64_t p : {2u, 3u, 5u, 7u}) {
    FieldSpec f = FieldSpec::prime(p);
    for (long long x = 0; x < static_cast<long long>(p); ++x) CHECK(f.from_int(x).pow(p) == f.from_int(x));
  }
}

TEST_CASE("mat_mul") {
  CHECK(Mat::identity(QQ, 2) * Mat::identity(QQ, 2) == Mat::identity(QQ, 2));
  Mat a(GF2, {{1, 1}, {0, 1}}), b(GF2, {{1, 0}, {1, 1}});
  CHECK(a * b == Mat(GF2, {{0, 1}, {1, 1}}));
  Mat pa(QQ, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}});
  Mat pb(QQ, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
  CHECK((pa * pb).is_zero());
  CHECK((pb * pa).is_zero());
  CHECK_THROWS_AS(Mat(QQ, 2, 3) * Mat(QQ, 2, 3), Error);
  CHECK_THROWS_AS(Mat::identity(GF2, 2) * Mat::identity(GF3, 2), Error);
}

TEST_CASE("rank and nullspace") {
  auto z = rank_and_nullspace(Mat(QQ, 3, 3));
  CHECK(z.rank == 0);
  CHECK(z.nullspace == Mat::identity(QQ, 3));
  auto id = rank_and_nullspace(Mat::identity(QQ, 3));
  CHECK(id.rank == 3);
  CHECK(id.nullspace.cols() == 0);
  Mat j3(GF2, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}});
  auto jr = rank_and_nullspace(j3);
  CHECK(jr.rank == 2);
  REQUIRE(jr.nullspace.cols() == 1);
  CHECK((j3 * jr.nullspace).is_zero());
  CHECK(jr.nullspace == Mat(GF2, {{0}, {0}, {1}}));
}

TEST_CASE("inverse") {
  CHECK(inverse(Mat::identity(GF3, 4)) == Mat::identity(GF3, 4));
  Mat d(QQ, {{2, 0}, {0, 3}});
  Mat expect(QQ, 2, 2);
  expect.at(0, 0) = QQ.from_fraction(1, 2);
  expect.at(1, 1) = QQ.from_fraction(1, 3);
  CHECK(inverse(d) == expect);
  CHECK_THROWS_AS(inverse(Mat(QQ, {{1, 2}, {2, 4}})), Error);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + trial % 6;
    Mat s = random_elementary_product(GF3, n, rng);
    CHECK(s * inverse(s) == Mat::identity(GF3, n));
  }
}

TEST_CASE("similarity_conjugate") {
  Mat pa(GF2, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}});
  Mat pb(GF2, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
  MatPair p{pa, pb};
  CHECK(similarity_conjugate(p, Mat::identity(GF2, 4)) == p);
  Mat rev(GF2, {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}});
  auto r = similarity_conjugate(p, rev);
  // Reversing the basis sends entry (i,j) to (n-1-i, n-1-j).
  CHECK(r.a == Mat(GF2, {{0, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}}));
  CHECK(r.b == Mat(GF2, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 4 + trial % 3;
    Mat pad(GF2, n - 4, n - 4);
    MatPair big{direct_sum(pa, pad), direct_sum(pb, pad)};
    Mat s = random_elementary_product(GF2, n, rng);
    auto c = similarity_conjugate(big, s);
    CHECK_NOTHROW(require_annihilating(c));
    CHECK(rank(c.a) == rank(big.a));
    CHECK(similarity_conjugate(c, inverse(s)) == big);
  }
  auto back = similarity_conjugate(similarity_conjugate(p, rev), inverse(rev));
  CHECK(back == p);
}

TEST_CASE("annihilation check cites the first bad entry") {
  MatPair bad{Mat(QQ, {{1, 0}, {0, 0}}), Mat(QQ, {{1, 0}, {0, 0}})};
  try {
    require_annihilating(bad);
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotAnnihilating);
    CHECK(std::string(e.what()).find("AB[1,1]") != std::string::npos);
  }
}

TEST_CASE("polynomial arithmetic") {
  Poly a = Poly::from_ints(QQ, {-1, 0, 1}), b = Poly::from_ints(QQ, {-1, 1});
  CHECK(gcd(a, b) == b);
  CHECK(pow(Poly::from_ints(GF2, {1, 1}), 2) == Poly::from_ints(GF2, {1, 0, 1}));
  auto qr = divmod(Poly::monomial(GF3, 3), Poly::from_ints(GF3, {-1, 1}));
  CHECK(qr.quotient == Poly::from_ints(GF3, {1, 1, 1}));
  CHECK(qr.remainder == Poly::from_ints(GF3, {1}));
  CHECK_THROWS_AS(divmod(a, Poly(QQ)), Error);
}

TEST_CASE("polynomial text") {
  CHECK(parse_poly(GF3, "x^3+2x+1") == Poly::from_ints(GF3, {1, 2, 0, 1}));
  CHECK(parse_poly(QQ, "1/2x^2-x").to_string() == "1/2x^2-x");
  CHECK(parse_poly(GF2, "(x^2+1)").to_string() == "x^2+1");
  CHECK(parse_poly(GF3, "x+5").to_string() == "x+2");
  CHECK_THROWS_AS(parse_poly(QQ, "x^"), Error);
  CHECK_THROWS_AS(parse_poly(QQ, "2y"), Error);
}

TEST_CASE("polynomial at a matrix") {
  Mat j(QQ, {{0, 0}, {1, 0}});
  CHECK(evaluate(Poly::monomial(QQ, 2), j).is_zero());
  CHECK(evaluate(Poly::from_ints(QQ, {1, 1}), j) == Mat(QQ, {{1, 0}, {1, 1}}));
  Mat v(QQ, {{1}, {0}});
  CHECK(apply(Poly::x(QQ), j, v) == Mat(QQ, {{0}, {1}}));
}
