#pragma once

#include <cstddef>
#include <vector>

#include "mapc/matrix.hpp"
#include "mapc/polyfactor.hpp"

namespace mapc {

struct FrobeniusBlock {
  ElementaryDivisor divisor;
  Mat matrix;
};

/// A cyclic summand: minimal polynomial f and Krylov basis v, Mv, ..., M^{d-1}v.
struct CyclicPiece {
  Poly poly;
  Mat basis;
};

/// Invariant-factor decomposition, largest factor first. The concatenated
/// bases conjugate m to the direct sum of companion matrices.
std::vector<CyclicPiece> cyclic_decomposition(const Mat& m);

struct RationalForm {
  /// Over GF(p): elementary-divisor blocks in divisor order. Over Q:
  /// invariant-factor companions (exponent 1) in divisor order.
  std::vector<FrobeniusBlock> blocks;
  Mat transform;
  bool invariant_factor_form = false;

  Mat matrix() const;
  std::vector<ElementaryDivisor> divisors() const;
};

RationalForm rational_canonical_form(const Mat& m);

struct FittingSplit {
  MatPair nilpotent_pair;
  std::vector<FrobeniusBlock> nonsingular_blocks;
  Mat transform;
};

/// S^-1 (A,B) S = (A',B') + (Phi_1,0) + ... with A' nilpotent.
FittingSplit fitting_split(const MatPair& pair);

/// Equal-size nilpotent Jordan blocks grouped: J_{m1}(0_{r1}) + ... with
/// m1 < ... < mt. Block i occupies levels 1..m_i, each of r_i coordinates,
/// and the matrix has I_{r_i} from level l to level l+1.
struct JPlusForm {
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> multiplicities;
  Mat matrix;
  Mat transform;

  std::size_t block_offset(std::size_t i) const;
  /// First coordinate of level l (1-based) of block i.
  std::size_t level_offset(std::size_t i, std::size_t level) const {
    return block_offset(i) + (level - 1) * multiplicities[i];
  }
};

JPlusForm nilpotent_jplus(const Mat& a);

/// The J+ matrix for given sizes and multiplicities.
Mat jplus_matrix(const FieldSpec& field, const std::vector<std::size_t>& sizes,
                 const std::vector<std::size_t>& multiplicities);

}  // namespace mapc
