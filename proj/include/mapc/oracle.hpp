#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "mapc/decomposition.hpp"
#include "mapc/matrix.hpp"

namespace mapc {

/// Brute-force similarity over GF(p) by enumerating GL(n, p) in lexicographic
/// order. Limits: n <= 3 over GF(2) and GF(3), n = 4 over GF(2). Throws TooLarge.
bool orbit_similar(const MatPair& p, const MatPair& q);

struct OrbitClass {
  MatPair representative;
  std::size_t orbit_size;
};

struct OrbitReport {
  FieldSpec field = FieldSpec::prime(2);
  std::size_t n = 0;
  std::size_t class_count = 0;
  std::size_t instances = 0;  // annihilating pairs enumerated
  std::vector<OrbitClass> classes;
};

/// Complete orbit partition of all annihilating n x n pairs. Limits: n <= 3
/// over GF(2), n <= 2 over GF(3). Throws TooLarge.
OrbitReport classify_all(const FieldSpec& field, std::size_t n);

/// Single-line form of a decomposition: summand lines joined by "; ".
std::string inline_decomposition(const Decomposition& d);
/// `dim=<n> decomposition=<serialized> orbit=<size>` per class.
std::string format_report(const OrbitReport& r);

struct CrossCheck {
  std::size_t instances = 0;
  std::size_t classes = 0;
  std::size_t fibers = 0;         // distinct canonical decompositions seen
  std::size_t split_orbits = 0;   // orbits whose members canonicalize differently
  std::size_t merged_orbits = 0;  // decompositions shared by two orbits
  std::size_t expected_classes = 0;
  std::uint64_t ordered_pairs = 0;   // instance pairs compared
  std::uint64_t discrepancies = 0;   // pairs where orbit test and canonical forms disagree
  bool pass() const {
    return discrepancies == 0 && split_orbits == 0 && merged_orbits == 0 && fibers == classes &&
           expected_classes == classes;
  }
};

/// Canonicalizes every annihilating pair of size n, compares orbit membership
/// with decomposition equality on every ordered pair of instances, and checks
/// the class count against the combinatorial count.
CrossCheck cross_check(const FieldSpec& field, std::size_t n);

constexpr std::uint64_t kDefaultWitnessSeed = 0x0dd5'eed5ULL;

/// Solves p.a S = S q.a, p.b S = S q.b and samples the solution space for an
/// invertible S (identity first). nullopt means no witness was found among the
/// samples; that is advisory, not a proof of non-similarity.
std::optional<Mat> solve_witness(const MatPair& p, const MatPair& q, std::uint64_t seed = kDefaultWitnessSeed,
                                 std::size_t tries = 64);

/// Summand types of a given dimension: paths, and cycles whose Phi is one
/// primary Frobenius block with base degree at most max_base_degree. Over Q the
/// bases come from the fixed list x-1, x+1, x-2, x^2+1, x^2-2.
std::vector<Summand> summand_types(const FieldSpec& field, std::size_t dim, unsigned max_base_degree);

/// Ranks all decompositions of total dimension n built from summand_types
/// (multisets, so each decomposition appears once before normalization).
class DecompositionCounter {
 public:
  DecompositionCounter(const FieldSpec& field, std::size_t n, unsigned max_base_degree);
  const mpz_class& total() const { return ways_.front()[n_]; }
  /// The decomposition with the given rank, 0 <= index < total(), normalized.
  Decomposition nth(mpz_class index) const;

 private:
  FieldSpec field_;
  std::size_t n_;
  std::vector<Summand> types_;
  // ways_[i][r]: multisets of total dimension r using types i, i+1, ...
  std::vector<std::vector<mpz_class>> ways_;
};

}  // namespace mapc
