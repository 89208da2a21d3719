#pragma once

#include <cstddef>
#include <vector>

#include "mapc/decomposition.hpp"
#include "mapc/matrix.hpp"

namespace mapc {

using Coords = std::vector<std::size_t>;

enum class ArrowKind { Ordinary, Double };

/// Ordinary: A maps V_src into V_dst with block A[dst, src].
/// Double: B maps V_src into V_dst with block B[dst, src].
struct Arrow {
  std::size_t src;
  std::size_t dst;
  ArrowKind kind;
  Mat block;
};

struct ArrowGraph {
  /// Coordinates spanning each vertex space; vertex order is the index order.
  std::vector<Coords> vertices;
  std::vector<Arrow> arrows;
};

/// One arrow per nonzero block between vertex spaces. Throws DegreeViolation
/// when a vertex has two arrows of one kind in the same direction, or an
/// ordinary and a double arrow that cannot both occur when AB = BA = 0.
ArrowGraph build_graph(const MatPair& sparse, const std::vector<Coords>& vertices);

/// A component read along its arrows: ordinary arrows forward, double arrows
/// backward. word[i] describes the edge between order[i] and order[i + 1]
/// (wrapping around for cycles).
struct Component {
  bool cycle = false;
  std::vector<std::size_t> order;
  Word word;
};

/// Paths start at their source; cycles start at their least vertex.
std::vector<Component> components(const ArrowGraph& g);

/// A cycle given by its vertex spaces and word; blocks are read from the pair.
struct CycleWalk {
  Word word;
  std::vector<Coords> spaces;
};

/// Edge blocks: A[V_{i+1}, V_i] for ordinary, B[V_i, V_{i+1}] for double.
std::vector<Mat> cycle_blocks(const MatPair& pair, const CycleWalk& walk);

/// Shortens a periodic word to its minimal period, merging
/// V_i + V_{i+tau} + V_{i+2tau} + ... into one space.
CycleWalk aperiodic_reduce(const CycleWalk& walk);

/// Bases S_i of the vertex spaces (S_{p+1} = I, p the first double arrow or
/// the loop) making every edge block the identity except at p, where the
/// block becomes phi. phi is similar to the product of the edge maps around
/// the cycle. Throws SingularMonodromy.
struct Monodromy {
  Mat phi;
  std::vector<Mat> bases;
};
Monodromy cycle_monodromy(const MatPair& pair, const CycleWalk& walk);

struct Canonicalized {
  Decomposition decomposition;
  /// witness^-1 (A, B) witness = build_canonical(decomposition)
  Mat witness;
};

/// Throws NotSquare, DimensionMismatch, NotAnnihilating.
Canonicalized canonicalize(const MatPair& pair);

/// Throws FieldMismatch, NotAnnihilating.
bool pairs_similar(const MatPair& p, const MatPair& q);

}  // namespace mapc
