#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mapc/matrix.hpp"

namespace mapc {

/// Block matrix with horizontal strips of heights `rows`, vertical strips of
/// widths `cols`, and scored (row strip, column strip) pairs. Admissible
/// transformations: D -> P^-1 D Q with P block lower triangular over the row
/// strips, Q block upper triangular over the column strips, and P_hh = Q_vv
/// for every scored pair (h, v).
struct Board {
  Mat matrix;
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<std::pair<std::size_t, std::size_t>> scored;

  std::size_t row_start(std::size_t h) const;
  std::size_t col_start(std::size_t v) const;
  /// Throws MalformedBoard.
  void validate() const;

  friend bool operator==(const Board& a, const Board& b) {
    return a.matrix == b.matrix && a.rows == b.rows && a.cols == b.cols && a.scored == b.scored;
  }
};

namespace op {
/// D[h] <- M^-1 D[h] on an unscored row strip.
struct RowOpWithinStrip {
  std::size_t strip;
  Mat m;
};
/// D[:,v] <- D[:,v] M on an unscored column strip.
struct ColOpWithinStrip {
  std::size_t strip;
  Mat m;
};
/// D[h] <- S^-1 D[h] and D[:,v] <- D[:,v] S for a scored pair.
struct ScoredSimilarity {
  std::size_t row_strip;
  std::size_t col_strip;
  Mat s;
};
/// D[dst] += M D[src], src < dst.
struct CrossRowAdd {
  std::size_t src;
  std::size_t dst;
  Mat m;
};
/// D[:,dst] += D[:,src] M, src < dst.
struct CrossColAdd {
  std::size_t src;
  std::size_t dst;
  Mat m;
};
/// Refines one strip into pieces of the given sizes.
struct SubCut {
  bool horizontal;
  std::size_t strip;
  std::vector<std::size_t> pieces;
};
}  // namespace op

using BoardOp = std::variant<op::RowOpWithinStrip, op::ColOpWithinStrip, op::ScoredSimilarity, op::CrossRowAdd,
                             op::CrossColAdd, op::SubCut>;

struct BoardLedger {
  std::vector<BoardOp> ops;
  /// Rejects ops that break the direction rule or the scoring rule.
  void push(const Board& board, BoardOp o);
};

struct SolvedBoard {
  Board board;
  /// Piece sizes refining each strip.
  std::vector<std::vector<std::size_t>> row_pieces;
  std::vector<std::vector<std::size_t>> col_pieces;
  BoardLedger ledger;
  /// board.matrix = p^-1 * input * q
  Mat p;
  Mat q;
};

SolvedBoard solve(const Board& board);
bool verify_lye(const SolvedBoard& sb);

/// Result of replaying a ledger: the transformed board and any sub-cuts.
struct ReplayResult {
  Board board;
  std::vector<std::vector<std::size_t>> row_pieces;
  std::vector<std::vector<std::size_t>> col_pieces;
};
/// Throws InapplicableOp.
ReplayResult replay(const Board& board, const BoardLedger& ledger);

/// Is (p, q) an admissible transformation of `board`?
bool in_board_group(const Board& board, const Mat& p, const Mat& q);

/// Text format:
///   field GF(p) | field Q
///   board R C
///   hstrips h1 h2 ...
///   vstrips w1 w2 ...
///   scored i j          (0-based strip indices, any number of lines)
///   R rows of C entries
Board parse_board(const std::string& text);
std::string format_board(const Board& board);

}  // namespace mapc
