#include "mapc/chessboard.hpp"

#include <numeric>
#include <optional>
#include <sstream>

#include "mapc/error.hpp"

namespace mapc {

namespace {

using Index = std::vector<std::size_t>;

std::size_t total(const std::vector<std::size_t>& v) { return std::accumulate(v.begin(), v.end(), std::size_t{0}); }

std::optional<std::size_t> partner_of_row(const Board& b, std::size_t h) {
  for (const auto& [sh, sv] : b.scored)
    if (sh == h) return sv;
  return std::nullopt;
}

std::optional<std::size_t> partner_of_col(const Board& b, std::size_t v) {
  for (const auto& [sh, sv] : b.scored)
    if (sv == v) return sh;
  return std::nullopt;
}

Mat row_block(const Board& b, const Mat& m, std::size_t h, std::size_t h2) {
  return m.block(b.row_start(h), b.row_start(h2), b.rows[h], b.rows[h2]);
}

Mat col_block(const Board& b, const Mat& m, std::size_t v, std::size_t v2) {
  return m.block(b.col_start(v), b.col_start(v2), b.cols[v], b.cols[v2]);
}

[[noreturn]] void inapplicable(const std::string& why) { throw Error(ErrorKind::InapplicableOp, why); }

}  // namespace

std::size_t Board::row_start(std::size_t h) const {
  return std::accumulate(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(h), std::size_t{0});
}

std::size_t Board::col_start(std::size_t v) const {
  return std::accumulate(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(v), std::size_t{0});
}

void Board::validate() const {
  auto bad = [](const std::string& why) { throw Error(ErrorKind::MalformedBoard, why); };
  if (total(rows) != matrix.rows() || total(cols) != matrix.cols()) bad("strip sizes do not cover the matrix");
  std::vector<bool> row_used(rows.size()), col_used(cols.size());
  for (const auto& [h, v] : scored) {
    if (h >= rows.size() || v >= cols.size()) bad("scored block outside the board");
    if (rows[h] != cols[v]) bad("scored block is not square");
    if (row_used[h] || col_used[v]) bad("a strip holds two scored blocks");
    row_used[h] = col_used[v] = true;
  }
}

bool in_board_group(const Board& b, const Mat& p, const Mat& q) {
  if (p.rows() != b.matrix.rows() || !p.square() || q.rows() != b.matrix.cols() || !q.square()) return false;
  for (std::size_t h = 0; h < b.rows.size(); ++h)
    for (std::size_t h2 = h + 1; h2 < b.rows.size(); ++h2)
      if (!row_block(b, p, h, h2).is_zero()) return false;
  for (std::size_t v = 0; v < b.cols.size(); ++v)
    for (std::size_t v2 = 0; v2 < v; ++v2)
      if (!col_block(b, q, v, v2).is_zero()) return false;
  for (const auto& [h, v] : b.scored)
    if (row_block(b, p, h, h) != col_block(b, q, v, v)) return false;
  return is_invertible(p) && is_invertible(q);
}

bool verify_lye(const SolvedBoard& sb) {
  const Board& b = sb.board;
  if (sb.row_pieces.size() != b.rows.size() || sb.col_pieces.size() != b.cols.size()) return false;
  for (std::size_t h = 0; h < b.rows.size(); ++h)
    if (total(sb.row_pieces[h]) != b.rows[h]) return false;
  for (std::size_t v = 0; v < b.cols.size(); ++v)
    if (total(sb.col_pieces[v]) != b.cols[v]) return false;
  for (const auto& [h, v] : b.scored)
    if (sb.row_pieces[h] != sb.col_pieces[v]) return false;
  std::vector<std::size_t> rp, cp;
  for (const auto& v : sb.row_pieces)
    for (auto s : v)
      if (s) rp.push_back(s);
  for (const auto& v : sb.col_pieces)
    for (auto s : v)
      if (s) cp.push_back(s);
  std::vector<int> row_hits(rp.size()), col_hits(cp.size());
  std::size_t r0 = 0;
  for (std::size_t i = 0; i < rp.size(); r0 += rp[i++]) {
    std::size_t c0 = 0;
    for (std::size_t j = 0; j < cp.size(); c0 += cp[j++]) {
      Mat blk = b.matrix.block(r0, c0, rp[i], cp[j]);
      if (blk.is_zero()) continue;
      if (!is_invertible(blk)) return false;
      ++row_hits[i];
      ++col_hits[j];
    }
  }
  for (int h : row_hits)
    if (h > 1) return false;
  for (int h : col_hits)
    if (h > 1) return false;
  return true;
}

void BoardLedger::push(const Board& b, BoardOp o) {
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, op::RowOpWithinStrip>) {
          if (x.strip >= b.rows.size() || partner_of_row(b, x.strip)) inapplicable("row op on a scored or missing strip");
          if (x.m.rows() != b.rows[x.strip] || !is_invertible(x.m)) inapplicable("row op matrix has the wrong shape");
        } else if constexpr (std::is_same_v<T, op::ColOpWithinStrip>) {
          if (x.strip >= b.cols.size() || partner_of_col(b, x.strip)) inapplicable("column op on a scored or missing strip");
          if (x.m.rows() != b.cols[x.strip] || !is_invertible(x.m)) inapplicable("column op matrix has the wrong shape");
        } else if constexpr (std::is_same_v<T, op::ScoredSimilarity>) {
          if (partner_of_row(b, x.row_strip) != x.col_strip) inapplicable("similarity on an unscored pair");
          if (x.s.rows() != b.rows[x.row_strip] || !is_invertible(x.s)) inapplicable("similarity matrix has the wrong shape");
        } else if constexpr (std::is_same_v<T, op::CrossRowAdd>) {
          if (x.src >= x.dst || x.dst >= b.rows.size()) inapplicable("row addition must go from top to bottom");
          if (x.m.rows() != b.rows[x.dst] || x.m.cols() != b.rows[x.src]) inapplicable("row addition has the wrong shape");
        } else if constexpr (std::is_same_v<T, op::CrossColAdd>) {
          if (x.src >= x.dst || x.dst >= b.cols.size()) inapplicable("column addition must go from left to right");
          if (x.m.rows() != b.cols[x.src] || x.m.cols() != b.cols[x.dst]) inapplicable("column addition has the wrong shape");
        } else {
          const auto& sizes = x.horizontal ? b.rows : b.cols;
          if (x.strip >= sizes.size() || total(x.pieces) != sizes[x.strip]) inapplicable("sub-cut does not partition its strip");
        }
      },
      o);
  ops.push_back(std::move(o));
}

ReplayResult replay(const Board& board, const BoardLedger& ledger) {
  board.validate();
  ReplayResult out{board, {}, {}};
  for (auto s : board.rows) out.row_pieces.push_back(s ? Index{s} : Index{});
  for (auto s : board.cols) out.col_pieces.push_back(s ? Index{s} : Index{});
  Mat& d = out.board.matrix;
  BoardLedger check;
  for (const auto& o : ledger.ops) {
    check.push(board, o);
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, op::RowOpWithinStrip>) {
            std::size_t r0 = board.row_start(x.strip);
            d.set_block(r0, 0, inverse(x.m) * d.block(r0, 0, x.m.rows(), d.cols()));
          } else if constexpr (std::is_same_v<T, op::ColOpWithinStrip>) {
            std::size_t c0 = board.col_start(x.strip);
            d.set_block(0, c0, d.block(0, c0, d.rows(), x.m.rows()) * x.m);
          } else if constexpr (std::is_same_v<T, op::ScoredSimilarity>) {
            std::size_t r0 = board.row_start(x.row_strip), c0 = board.col_start(x.col_strip), n = x.s.rows();
            d.set_block(r0, 0, inverse(x.s) * d.block(r0, 0, n, d.cols()));
            d.set_block(0, c0, d.block(0, c0, d.rows(), n) * x.s);
          } else if constexpr (std::is_same_v<T, op::CrossRowAdd>) {
            std::size_t rs = board.row_start(x.src), rd = board.row_start(x.dst);
            Mat add = x.m * d.block(rs, 0, x.m.cols(), d.cols());
            d.set_block(rd, 0, d.block(rd, 0, x.m.rows(), d.cols()) + add);
          } else if constexpr (std::is_same_v<T, op::CrossColAdd>) {
            std::size_t cs = board.col_start(x.src), cd = board.col_start(x.dst);
            Mat add = d.block(0, cs, d.rows(), x.m.rows()) * x.m;
            d.set_block(0, cd, d.block(0, cd, d.rows(), x.m.cols()) + add);
          } else {
            (x.horizontal ? out.row_pieces : out.col_pieces)[x.strip] = x.pieces;
          }
        },
        o);
  }
  return out;
}

namespace {

std::vector<std::size_t> read_sizes(std::istringstream& in) {
  std::vector<std::size_t> v;
  long long s;
  while (in >> s) {
    if (s < 0) throw Error(ErrorKind::ParseError, "negative strip size");
    v.push_back(static_cast<std::size_t>(s));
  }
  return v;
}

}  // namespace

Board parse_board(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  auto next = [&](bool required) -> std::optional<std::string> {
    while (std::getline(lines, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return line;
    }
    if (required) throw Error(ErrorKind::ParseError, "unexpected end of board text");
    return std::nullopt;
  };
  std::istringstream head(*next(true));
  std::string kw, fname;
  head >> kw >> fname;
  if (kw != "field") throw Error(ErrorKind::ParseError, "board text must start with 'field'");
  const FieldSpec field = parse_field(fname);
  std::istringstream dims(*next(true));
  std::size_t r = 0, c = 0;
  if (!(dims >> kw >> r >> c) || kw != "board") throw Error(ErrorKind::ParseError, "expected 'board R C'");
  Board b{Mat(field, r, c), {}, {}, {}};
  bool have_rows = false, have_cols = false;
  std::size_t filled = 0;
  while (filled < r) {
    std::istringstream in(*next(true));
    std::string first;
    in >> first;
    if (first == "hstrips") {
      b.rows = read_sizes(in);
      have_rows = true;
    } else if (first == "vstrips") {
      b.cols = read_sizes(in);
      have_cols = true;
    } else if (first == "scored") {
      std::size_t h, v;
      if (!(in >> h >> v)) throw Error(ErrorKind::ParseError, "expected 'scored i j'");
      b.scored.emplace_back(h, v);
    } else {
      std::istringstream row(line);
      std::string tok;
      std::size_t j = 0;
      while (row >> tok) {
        if (j >= c) throw Error(ErrorKind::ParseError, "too many entries in board row " + std::to_string(filled + 1));
        b.matrix.at(filled, j++) = parse_scalar(field, tok);
      }
      if (j != c) throw Error(ErrorKind::ParseError, "too few entries in board row " + std::to_string(filled + 1));
      ++filled;
    }
  }
  if (!have_rows) b.rows = r ? std::vector<std::size_t>{r} : std::vector<std::size_t>{};
  if (!have_cols) b.cols = c ? std::vector<std::size_t>{c} : std::vector<std::size_t>{};
  b.validate();
  return b;
}

std::string format_board(const Board& b) {
  std::ostringstream out;
  out << "field " << b.matrix.field().name() << "\n";
  out << "board " << b.matrix.rows() << " " << b.matrix.cols() << "\n";
  out << "hstrips";
  for (auto s : b.rows) out << " " << s;
  out << "\nvstrips";
  for (auto s : b.cols) out << " " << s;
  out << "\n";
  for (const auto& [h, v] : b.scored) out << "scored " << h << " " << v << "\n";
  for (std::size_t i = 0; i < b.matrix.rows(); ++i) {
    for (std::size_t j = 0; j < b.matrix.cols(); ++j) out << (j ? " " : "") << b.matrix(i, j).to_string();
    out << "\n";
  }
  return out.str();
}

}  // namespace mapc
