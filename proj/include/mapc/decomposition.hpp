#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mapc/matrix.hpp"
#include "mapc/polyfactor.hpp"

namespace mapc {

enum class SummandKind { Path, Cycle };

/// Word entries: 1 for an ordinary arrow i -> i+1 (A maps V_i into V_{i+1}),
/// 2 for a double arrow i <= i+1 (B maps V_{i+1} into V_i).
using Word = std::vector<int>;

/// One indecomposable (path) or one Frobenius-block cycle summand.
struct Summand {
  SummandKind kind = SummandKind::Path;
  Word word;
  /// Cycles only. Canonical summands carry exactly one divisor.
  std::vector<ElementaryDivisor> phi_class;

  std::size_t dim() const;
  friend bool operator==(const Summand& a, const Summand& b) {
    return a.kind == b.kind && a.word == b.word && a.phi_class == b.phi_class;
  }
  /// Paths before cycles; paths by (length, word); cycles by (word, divisors).
  friend bool operator<(const Summand& a, const Summand& b);
};

struct Decomposition {
  FieldSpec field = FieldSpec::rationals();
  std::vector<Summand> summands;

  std::size_t total_dim() const;
  friend bool operator==(const Decomposition& a, const Decomposition& b) {
    return a.field == b.field && a.summands == b.summands;
  }
};

bool is_aperiodic(const Word& w);
/// Lexicographically least rotation.
Word least_rotation(const Word& w);

/// Rotates every cycle word to its least rotation, splits Phi into Frobenius
/// blocks (over Q: invariant factors of everything sharing a word), sorts.
/// Throws SpecError for periodic cycle words, bad letters, or a singular Phi.
Decomposition normalize(Decomposition d);

/// One summand per line after a `field` header; over Q a comment line marks
/// the invariant-factor form.
std::string serialize(const Decomposition& d);
/// Throws ParseError. The result is not normalized.
Decomposition parse_decomposition(const std::string& text);

/// Direct sum of the canonical pairs, in summand order.
MatPair build_canonical(const Decomposition& d);
/// The canonical pair of a single summand.
MatPair build_summand(const FieldSpec& field, const Summand& s);

}  // namespace mapc
