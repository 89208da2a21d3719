#pragma once

#include <vector>

#include "mapc/matrix.hpp"

namespace mapc::fixtures {

// Block matrix from a layout: 0 zero block, 1 identity, 2 phi.
inline Mat grid(const FieldSpec& f, std::size_t k, const std::vector<std::vector<int>>& layout, const Mat& phi) {
  const std::size_t t = layout.size();
  Mat m(f, t * k, t * k);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j) {
      if (layout[i][j] == 1) m.set_block(i * k, j * k, Mat::identity(f, k));
      if (layout[i][j] == 2) m.set_block(i * k, j * k, phi);
    }
  return m;
}

// 1 -> 2 -> 3 <= 4
inline MatPair path_example(const FieldSpec& f) {
  return {Mat(f, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 0}}),
          Mat(f, {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}})};
}

// 1 <= 2 <=(phi) 3 -> 4 -> 1
inline MatPair four_cycle(const FieldSpec& f, const Mat& phi) {
  return {grid(f, phi.rows(), {{0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}}, phi),
          grid(f, phi.rows(), {{0, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}}, phi)};
}

// 4 <=(phi) 1 <= 2 -> 3 -> 4
inline MatPair four_cycle_renumbered(const FieldSpec& f, const Mat& phi) {
  return {grid(f, phi.rows(), {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}}, phi),
          grid(f, phi.rows(), {{0, 1, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {2, 0, 0, 0}}, phi)};
}

}  // namespace mapc::fixtures
