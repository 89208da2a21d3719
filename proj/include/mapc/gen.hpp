#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "mapc/decomposition.hpp"
#include "mapc/matrix.hpp"

namespace mapc {

/// Largest base degree of Phi divisors sampled by random_decomposition.
constexpr unsigned kGenMaxBaseDegree = 2;

/// Decomposition text for gen: summand lines separated by newlines or ';'.
/// A missing `field` line is taken from `field`. Errors surface as SpecError.
Decomposition parse_gen_spec(const std::string& text, const FieldSpec& field);

/// Uniform over every decomposition of total dimension n whose cycle divisors
/// have base degree at most kGenMaxBaseDegree.
Decomposition random_decomposition(const FieldSpec& field, std::size_t n, std::uint64_t seed);

/// Seeded invertible matrix; entries in [0, p) over GF(p), in [-3, 3] over Q.
Mat random_invertible(const FieldSpec& field, std::size_t n, std::mt19937_64& rng);

/// S^-1 P S for a seeded random invertible S.
MatPair scramble(const MatPair& pair, std::uint64_t seed);

}  // namespace mapc
