#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mapc/error.hpp"
#include "mapc/oracle.hpp"
#include "mapc/pair_canon.hpp"

#include <set>

using namespace mapc;

namespace {

const FieldSpec GF2 = FieldSpec::prime(2);
const FieldSpec GF3 = FieldSpec::prime(3);
const FieldSpec QQ = FieldSpec::rationals();

}  // namespace

TEST_CASE("small class counts") {
  CHECK(classify_all(GF2, 0).class_count == 1);
  OrbitReport one = classify_all(GF2, 1);
  // (0,0), (1,0), (0,1)
  CHECK(one.class_count == 3);
  CHECK(one.instances == 3);
  std::size_t total = 0;
  for (const auto& c : one.classes) total += c.orbit_size;
  CHECK(total == one.instances);
  CHECK(format_report(one).find("dim=1 decomposition=path - orbit=1") != std::string::npos);
  CHECK_THROWS_AS(classify_all(GF2, 4), Error);
  CHECK_THROWS_AS(classify_all(GF3, 3), Error);
  CHECK_THROWS_AS(classify_all(QQ, 1), Error);
}

TEST_CASE("orbit_similar") {
  Mat j(GF2, {{0, 0}, {1, 0}}), z(GF2, 2, 2);
  CHECK_FALSE(orbit_similar({j, z}, {z, j}));
  CHECK(orbit_similar({j, z}, {j.transpose(), z}));
  CHECK(orbit_similar({j, z}, {j, z}));
  Mat big(GF3, 4, 4);
  CHECK_THROWS_AS(orbit_similar({big, big}, {big, big}), Error);
}

TEST_CASE("solve_witness") {
  Mat j(GF3, {{0, 0}, {1, 0}}), z(GF3, 2, 2);
  MatPair p{j, z};
  auto id = solve_witness(p, p);
  REQUIRE(id.has_value());
  CHECK(*id == Mat::identity(GF3, 2));
  MatPair q{j.transpose(), z};
  auto s = solve_witness(p, q);
  REQUIRE(s.has_value());
  CHECK(similarity_conjugate(p, *s) == q);
  CHECK_FALSE(solve_witness(p, {z, j}).has_value());
  Mat jq(QQ, {{0, 0}, {1, 0}});
  auto sq = solve_witness({jq, Mat(QQ, 2, 2)}, {jq.transpose(), Mat(QQ, 2, 2)});
  REQUIRE(sq.has_value());
}

TEST_CASE("decomposition counter") {
  // n = 1 over GF(2): path -, cycle 1 | x+1, cycle 2 | x+1
  DecompositionCounter c1(GF2, 1, 1);
  CHECK(c1.total() == 3);
  DecompositionCounter c2(GF3, 2, 2);
  std::set<std::string> seen;
  for (mpz_class i = 0; i < c2.total(); ++i) {
    Decomposition d = c2.nth(i);
    CHECK(d.total_dim() == 2);
    seen.insert(serialize(d));
  }
  CHECK(seen.size() == c2.total().get_ui());
  CHECK_THROWS_AS(c2.nth(c2.total()), Error);
}

TEST_CASE("cross check against orbits") {
  for (std::size_t n = 0; n <= 3; ++n) {
    CrossCheck cc = cross_check(GF2, n);
    INFO("GF(2) n=" << n << " classes=" << cc.classes << " expected=" << cc.expected_classes);
    CHECK(cc.pass());
  }
  for (std::size_t n = 0; n <= 2; ++n) {
    CrossCheck cc = cross_check(GF3, n);
    INFO("GF(3) n=" << n << " classes=" << cc.classes << " expected=" << cc.expected_classes);
    CHECK(cc.pass());
  }
}
