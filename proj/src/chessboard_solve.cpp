#include <algorithm>
#include <numeric>
#include <optional>

#include "mapc/chessboard.hpp"
#include "mapc/error.hpp"
#include "mapc/normal_form.hpp"

namespace mapc {

namespace {

using Index = std::vector<std::size_t>;
using Pieces = std::vector<Index>;

// A group element (p, q) bringing the board to normal form, with the pieces
// refining every strip.
struct Reduction {
  Mat p;
  Mat q;
  Pieces row_pieces;
  Pieces col_pieces;
};

[[noreturn]] void internal(const std::string& why) { throw Error(ErrorKind::Internal, "chessboard: " + why); }

Index span_of(std::size_t start, std::size_t len) {
  Index r(len);
  std::iota(r.begin(), r.end(), start);
  return r;
}

Index concat(Index a, const Index& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Index flatten(const std::vector<Index>& parts) {
  Index out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Index minus(const Index& a, const Index& b) {
  Index out;
  for (auto x : a)
    if (std::find(b.begin(), b.end(), x) == b.end()) out.push_back(x);
  return out;
}

// Position of every element of `sub` inside `whole`.
Index positions(const Index& sub, const Index& whole) {
  Index out;
  for (auto x : sub) out.push_back(static_cast<std::size_t>(std::find(whole.begin(), whole.end(), x) - whole.begin()));
  return out;
}

Index all_of(std::size_t n) { return span_of(0, n); }

void put(Mat& m, const Index& r, const Index& c, const Mat& v) {
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j) m.at(r[i], c[j]) = v(i, j);
}

std::vector<Index> row_strips(const Board& b) {
  std::vector<Index> out;
  for (std::size_t h = 0; h < b.rows.size(); ++h) out.push_back(span_of(b.row_start(h), b.rows[h]));
  return out;
}

std::vector<Index> col_strips(const Board& b) {
  std::vector<Index> out;
  for (std::size_t v = 0; v < b.cols.size(); ++v) out.push_back(span_of(b.col_start(v), b.cols[v]));
  return out;
}

Index trivial(std::size_t n) { return n ? Index{n} : Index{}; }

std::optional<std::size_t> row_partner(const Board& b, std::size_t h) {
  for (const auto& [sh, sv] : b.scored)
    if (sh == h) return sv;
  return std::nullopt;
}

std::optional<std::size_t> col_partner(const Board& b, std::size_t v) {
  for (const auto& [sh, sv] : b.scored)
    if (sv == v) return sh;
  return std::nullopt;
}

// Strips of a sub-board given as lists of parent coordinates.
struct Sub {
  std::vector<Index> rows;
  std::vector<Index> cols;
  std::vector<std::pair<std::size_t, std::size_t>> scored;

  std::size_t add_row(Index r) {
    rows.push_back(std::move(r));
    return rows.size() - 1;
  }
  std::size_t add_col(Index c) {
    cols.push_back(std::move(c));
    return cols.size() - 1;
  }
  Board board(const Mat& d) const {
    Board b{d.select(flatten(rows), flatten(cols)), {}, {}, scored};
    for (const auto& r : rows) b.rows.push_back(r.size());
    for (const auto& c : cols) b.cols.push_back(c.size());
    return b;
  }
};

Reduction reduce(const Board& b);

// The sub-board's transformation embedded in parent coordinates.
std::pair<Mat, Mat> expand(const Sub& s, const Reduction& e, const Mat& d) {
  Mat p = Mat::identity(d.field(), d.rows());
  Mat q = Mat::identity(d.field(), d.cols());
  put(p, flatten(s.rows), flatten(s.rows), e.p);
  put(q, flatten(s.cols), flatten(s.cols), e.q);
  return {p, q};
}

// First row strip vanishes: drop it and let it follow its scored partner.
Reduction drop_top(const Board& b) {
  const auto rs = row_strips(b);
  const auto cs = col_strips(b);
  const auto partner = row_partner(b, 0);
  Sub s;
  for (std::size_t h = 1; h < rs.size(); ++h) s.add_row(rs[h]);
  s.cols = cs;
  for (const auto& [h, v] : b.scored)
    if (h != 0) s.scored.emplace_back(h - 1, v);
  Reduction e = reduce(s.board(b.matrix));
  auto [p, q] = expand(s, e, b.matrix);
  if (partner) put(p, rs[0], rs[0], q.select(cs[*partner], cs[*partner]));
  Reduction out{p, q, {partner ? e.col_pieces[*partner] : trivial(b.rows[0])}, e.col_pieces};
  out.row_pieces.insert(out.row_pieces.end(), e.row_pieces.begin(), e.row_pieces.end());
  return out;
}

struct Cleared {
  Mat d;
  Mat p;
  Mat q;
};

// Uses the nonsingular block d[rc, cc] to clear the rest of its rows (to the
// right) and columns (below).
Cleared clear(const Board& b, std::size_t k, const Mat& d, const Index& rc, const Index& cc) {
  const auto rs = row_strips(b);
  const auto cs = col_strips(b);
  const FieldSpec& f = d.field();
  Mat zi = inverse(d.select(rc, cc));
  Index later, lower;
  for (std::size_t v = k + 1; v < cs.size(); ++v) later = concat(later, cs[v]);
  for (std::size_t h = 1; h < rs.size(); ++h) lower = concat(lower, rs[h]);
  Cleared out{d, Mat::identity(f, d.rows()), Mat::identity(f, d.cols())};
  if (!later.empty()) put(out.q, cc, later, -(zi * d.select(rc, later)));
  out.d = out.d * out.q;
  if (!lower.empty()) {
    Mat blk = out.d.select(lower, cc) * zi;
    Mat pinv = Mat::identity(f, d.rows());
    put(out.p, lower, rc, blk);
    put(pinv, lower, rc, -blk);
    out.d = pinv * out.d;
  }
  Index other_rows = minus(all_of(d.rows()), rc);
  Index other_cols = minus(all_of(d.cols()), cc);
  if (!out.d.select(rc, other_cols).is_zero() || !out.d.select(other_rows, cc).is_zero())
    internal("pivot block was not isolated");
  return out;
}

struct Pivot {
  std::size_t k;
  Index rc;
  Index cc;
};

// Lifts the sub-board's solution back to the parent. sr and sc are the forced
// diagonal blocks on row strip 0 and column strip k.
std::pair<Mat, Mat> lift(const Board& b, const Mat& d2, const Sub& s, const Reduction& e, const Pivot& pv, const Mat& sr,
                         const Mat& sc) {
  const FieldSpec& f = d2.field();
  const Index strip0 = span_of(0, b.rows[0]);
  const Index stripk = span_of(b.col_start(pv.k), b.cols[pv.k]);
  const Index re = flatten(s.rows), ce = flatten(s.cols);
  Mat dprime = d2;
  put(dprime, re, ce, inverse(e.p) * d2.select(re, ce) * e.q);
  Mat zi = inverse(d2.select(pv.rc, pv.cc));
  const Index fnon = minus(strip0, pv.rc), gnon = minus(stripk, pv.cc);
  const Index rc_l = positions(pv.rc, strip0), cc_l = positions(pv.cc, stripk);

  Mat p = Mat::identity(f, d2.rows());
  put(p, re, re, e.p);
  put(p, pv.rc, strip0, sr.select(rc_l, all_of(strip0.size())));
  if (!gnon.empty()) put(p, re, pv.rc, d2.select(re, gnon) * sc.select(positions(gnon, stripk), cc_l) * zi);

  Mat q = Mat::identity(f, d2.cols());
  put(q, ce, ce, e.q);
  if (!fnon.empty()) put(q, pv.cc, ce, zi * sr.select(rc_l, positions(fnon, strip0)) * dprime.select(fnon, ce));
  put(q, stripk, pv.cc, sc.select(all_of(stripk.size()), cc_l));

  if (p.select(strip0, strip0) != sr || q.select(stripk, stripk) != sc) internal("lifted diagonal blocks disagree");
  if (p * dprime != d2 * q) internal("lift does not intertwine");
  return {p, q};
}

// (p1, q1) normalizing, (p2, q2) clearing, (p3, q3) lifted from the sub-board.
Reduction compose(const Mat& p1, const Mat& q1, const Cleared& c, const std::pair<Mat, Mat>& l) {
  return {p1 * c.p * l.first, q1 * c.q * l.second, {}, {}};
}

// Block (0, k) unscored: normalize to [[I_r, 0], [0, 0]].
Reduction pivot_unscored(const Board& b, std::size_t k) {
  const FieldSpec& f = b.matrix.field();
  const auto rs = row_strips(b);
  const auto cs = col_strips(b);
  const std::size_t a = b.rows[0], w = b.cols[k];
  Mat m = b.matrix.select(rs[0], cs[k]);
  Mat ker = rank_and_nullspace(m).nullspace;
  const std::size_t r = w - ker.cols();
  Mat ext = extend_to_basis(ker);
  Mat tc = hstack(ext.block(0, ker.cols(), w, r), ker);
  Mat tr = extend_to_basis(m * tc.block(0, 0, w, r));
  const auto fk = row_partner(b, 0);
  const auto gh = col_partner(b, k);

  Mat p1 = Mat::identity(f, b.matrix.rows()), q1 = Mat::identity(f, b.matrix.cols());
  put(p1, rs[0], rs[0], tr);
  put(q1, cs[k], cs[k], tc);
  if (fk) put(q1, cs[*fk], cs[*fk], tr);
  if (gh) put(p1, rs[*gh], rs[*gh], tc);
  Mat d1 = inverse(p1) * b.matrix * q1;
  Mat want(f, a, w);
  for (std::size_t i = 0; i < r; ++i) want.at(i, i) = f.one();
  if (d1.select(rs[0], cs[k]) != want) internal("rank normalization failed");

  const Pivot pv{k, span_of(0, r), span_of(b.col_start(k), r)};
  Cleared c = clear(b, k, d1, pv.rc, pv.cc);

  auto head = [r](const Index& x) { return Index(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(r)); };
  auto tail = [r](const Index& x) { return Index(x.begin() + static_cast<std::ptrdiff_t>(r), x.end()); };
  Sub s;
  std::vector<std::size_t> erow(rs.size()), ecol(cs.size());
  const std::size_t r2 = s.add_row(tail(rs[0]));
  std::size_t g1 = 0, g2 = 0, f1 = 0, f2 = 0, c2 = 0;
  for (std::size_t h = 1; h < rs.size(); ++h) {
    if (gh && h == *gh) {
      g1 = s.add_row(head(rs[h]));
      g2 = s.add_row(tail(rs[h]));
    } else {
      erow[h] = s.add_row(rs[h]);
    }
  }
  for (std::size_t v = 0; v < cs.size(); ++v) {
    if (v == k) {
      c2 = s.add_col(tail(cs[v]));
    } else if (fk && v == *fk) {
      f1 = s.add_col(head(cs[v]));
      f2 = s.add_col(tail(cs[v]));
    } else {
      ecol[v] = s.add_col(cs[v]);
    }
  }
  for (const auto& [h, v] : b.scored)
    if (h != 0 && v != k) s.scored.emplace_back(erow[h], ecol[v]);
  if (fk) s.scored.emplace_back(r2, f2);
  if (gh) s.scored.emplace_back(g2, c2);
  if (fk && gh) s.scored.emplace_back(g1, f1);

  Reduction e = reduce(s.board(c.d));
  auto [pe, qe] = expand(s, e, c.d);
  Mat x = Mat::identity(f, r);
  if (fk)
    x = qe.select(s.cols[f1], s.cols[f1]);
  else if (gh)
    x = pe.select(s.rows[g1], s.rows[g1]);
  Mat sr(f, a, a), sc(f, w, w);
  put(sr, span_of(0, r), span_of(0, r), x);
  if (fk) put(sr, span_of(0, r), span_of(r, a - r), qe.select(s.cols[f1], s.cols[f2]));
  put(sr, span_of(r, a - r), span_of(r, a - r), pe.select(s.rows[r2], s.rows[r2]));
  put(sc, span_of(0, r), span_of(0, r), x);
  if (gh) put(sc, span_of(r, w - r), span_of(0, r), pe.select(s.rows[g2], s.rows[g1]));
  put(sc, span_of(r, w - r), span_of(r, w - r), qe.select(s.cols[c2], s.cols[c2]));

  Reduction out = compose(p1, q1, c, lift(b, c.d, s, e, pv, sr, sc));
  const Index p_one = fk ? e.col_pieces[f1] : gh ? e.row_pieces[g1] : Index{r};
  out.row_pieces.push_back(concat(p_one, e.row_pieces[r2]));
  for (std::size_t h = 1; h < rs.size(); ++h)
    out.row_pieces.push_back(gh && h == *gh ? concat(e.row_pieces[g1], e.row_pieces[g2]) : e.row_pieces[erow[h]]);
  for (std::size_t v = 0; v < cs.size(); ++v) {
    if (v == k)
      out.col_pieces.push_back(concat(p_one, e.col_pieces[c2]));
    else if (fk && v == *fk)
      out.col_pieces.push_back(concat(e.col_pieces[f1], e.col_pieces[f2]));
    else
      out.col_pieces.push_back(e.col_pieces[ecol[v]]);
  }
  return out;
}

// Block (0, k) scored and not nilpotent: split off its nonsingular part.
Reduction pivot_nonsingular(const Board& b, std::size_t k) {
  const FieldSpec& f = b.matrix.field();
  const auto rs = row_strips(b);
  const auto cs = col_strips(b);
  const std::size_t a = b.rows[0];
  Mat m = b.matrix.select(rs[0], cs[k]);
  Mat ma = mat_pow(m, a);
  Mat img = ma.select_cols(independent_columns(ma));
  Mat t = hstack(img, rank_and_nullspace(ma).nullspace);
  const std::size_t sz = img.cols();

  Mat p1 = Mat::identity(f, b.matrix.rows()), q1 = Mat::identity(f, b.matrix.cols());
  put(p1, rs[0], rs[0], t);
  put(q1, cs[k], cs[k], t);
  Mat d1 = inverse(p1) * b.matrix * q1;
  Mat blk = d1.select(rs[0], cs[k]);
  if (!blk.block(0, sz, sz, a - sz).is_zero() || !blk.block(sz, 0, a - sz, sz).is_zero())
    internal("Fitting split of a scored block failed");

  const Pivot pv{k, span_of(0, sz), span_of(b.col_start(k), sz)};
  Cleared c = clear(b, k, d1, pv.rc, pv.cc);
  Sub s;
  const std::size_t nrow = s.add_row(span_of(sz, a - sz));
  for (std::size_t h = 1; h < rs.size(); ++h) s.add_row(rs[h]);
  for (std::size_t v = 0; v < cs.size(); ++v) s.add_col(v == k ? span_of(b.col_start(k) + sz, a - sz) : cs[v]);
  s.scored.emplace_back(nrow, k);
  for (const auto& [h, v] : b.scored)
    if (h != 0) s.scored.emplace_back(h, v);

  Reduction e = reduce(s.board(c.d));
  auto [pe, qe] = expand(s, e, c.d);
  Mat sr = direct_sum(Mat::identity(f, sz), pe.select(s.rows[nrow], s.rows[nrow]));
  Reduction out = compose(p1, q1, c, lift(b, c.d, s, e, pv, sr, sr));
  out.row_pieces.push_back(concat({sz}, e.row_pieces[nrow]));
  for (std::size_t h = 1; h < rs.size(); ++h) out.row_pieces.push_back(e.row_pieces[h]);
  out.col_pieces = e.col_pieces;
  out.col_pieces[k] = concat({sz}, e.col_pieces[k]);
  return out;
}

// Block (0, k) scored and nilpotent: Jordan chains, longest first.
Reduction pivot_nilpotent(const Board& b, std::size_t k) {
  const FieldSpec& f = b.matrix.field();
  const auto rs = row_strips(b);
  const auto cs = col_strips(b);
  const std::size_t a = b.rows[0], k0 = b.col_start(k);
  JPlusForm jp = nilpotent_jplus(b.matrix.select(rs[0], cs[k]));
  const std::size_t t = jp.sizes.size();
  std::vector<std::size_t> m(jp.sizes.rbegin(), jp.sizes.rend());
  std::vector<std::size_t> r(jp.multiplicities.rbegin(), jp.multiplicities.rend());
  std::vector<std::size_t> base(t, 0);
  for (std::size_t i = 1; i < t; ++i) base[i] = base[i - 1] + m[i - 1] * r[i - 1];
  auto off = [&](std::size_t i, std::size_t level) { return base[i] + (level - 1) * r[i]; };
  Index order;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t l = 1; l <= m[i]; ++l)
      for (std::size_t c = 0; c < r[i]; ++c) order.push_back(jp.level_offset(t - 1 - i, l) + c);
  Mat tr = jp.transform.select_cols(order);
  Mat jd = jplus_matrix(f, m, r);

  Mat p1 = Mat::identity(f, b.matrix.rows()), q1 = Mat::identity(f, b.matrix.cols());
  put(p1, rs[0], rs[0], tr);
  put(q1, cs[k], cs[k], tr);
  Mat d1 = inverse(p1) * b.matrix * q1;
  if (d1.select(rs[0], cs[k]) != jd) internal("nilpotent normalization failed");

  Pivot pv{k, {}, {}};
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t l = 2; l <= m[i]; ++l) {
      pv.rc = concat(pv.rc, span_of(off(i, l), r[i]));
      pv.cc = concat(pv.cc, span_of(k0 + off(i, l - 1), r[i]));
    }
  Cleared c = clear(b, k, d1, pv.rc, pv.cc);

  Sub s;
  for (std::size_t i = 0; i < t; ++i) s.add_row(span_of(off(i, 1), r[i]));
  for (std::size_t h = 1; h < rs.size(); ++h) s.add_row(rs[h]);
  for (std::size_t v = 0; v < k; ++v) s.add_col(cs[v]);
  for (std::size_t i = 0; i < t; ++i) s.add_col(span_of(k0 + off(i, m[i]), r[i]));
  for (std::size_t v = k + 1; v < cs.size(); ++v) s.add_col(cs[v]);
  auto ecol = [&](std::size_t v) { return v < k ? v : v + t - 1; };
  for (std::size_t i = 0; i < t; ++i) s.scored.emplace_back(i, k + i);
  for (const auto& [h, v] : b.scored)
    if (h != 0) s.scored.emplace_back(t + h - 1, ecol(v));

  Reduction e = reduce(s.board(c.d));
  auto [pe, qe] = expand(s, e, c.d);
  // Centralizer element of jd whose level-one data comes from the sub-board.
  Mat sm(f, a, a);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t i = 0; i < t; ++i) {
      const Index cols_j = span_of(off(j, 1), r[j]);
      if (i >= j)
        put(sm, span_of(off(i, 1), r[i]), cols_j, pe.select(s.rows[i], s.rows[j]));
      else
        put(sm, span_of(off(i, m[i] - m[j] + 1), r[i]), cols_j, qe.select(s.cols[k + i], s.cols[k + j]));
    }
    for (std::size_t l = 2; l <= m[j]; ++l)
      sm.set_block(0, off(j, l), jd * sm.block(0, off(j, l - 1), a, r[j]));
  }
  Reduction out = compose(p1, q1, c, lift(b, c.d, s, e, pv, sm, sm));
  Index strip_pieces;
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t l = 1; l <= m[i]; ++l) strip_pieces = concat(strip_pieces, e.row_pieces[i]);
  out.row_pieces.push_back(strip_pieces);
  for (std::size_t h = 1; h < rs.size(); ++h) out.row_pieces.push_back(e.row_pieces[t + h - 1]);
  for (std::size_t v = 0; v < cs.size(); ++v) out.col_pieces.push_back(v == k ? strip_pieces : e.col_pieces[ecol(v)]);
  return out;
}

Reduction reduce(const Board& b) {
  b.validate();
  const FieldSpec& f = b.matrix.field();
  if (b.rows.empty()) {
    Reduction out{Mat::identity(f, 0), Mat::identity(f, b.matrix.cols()), {}, {}};
    for (auto w : b.cols) out.col_pieces.push_back(trivial(w));
    return out;
  }
  const Mat top = b.matrix.block(0, 0, b.rows[0], b.matrix.cols());
  if (top.is_zero()) return drop_top(b);
  std::size_t k = 0;
  while (top.block(0, b.col_start(k), b.rows[0], b.cols[k]).is_zero()) ++k;
  if (row_partner(b, 0) != k) return pivot_unscored(b, k);
  Mat blk = top.block(0, b.col_start(k), b.rows[0], b.cols[k]);
  if (mat_pow(blk, blk.rows()).is_zero()) return pivot_nilpotent(b, k);
  return pivot_nonsingular(b, k);
}

// P = L * Diag with L unit lower triangular, Q = Qd * U with U unit upper.
BoardLedger ledger_from(const Board& b, const Mat& p, const Mat& q, const Pieces& rp, const Pieces& cp) {
  const FieldSpec& f = b.matrix.field();
  const auto rs = row_strips(b);
  const auto cs = col_strips(b);
  Mat pd(f, p.rows(), p.cols()), qd(f, q.rows(), q.cols());
  for (const auto& r : rs) put(pd, r, r, p.select(r, r));
  for (const auto& c : cs) put(qd, c, c, q.select(c, c));
  Mat n = pd * inverse(p);  // L^-1
  Mat u = inverse(qd) * q;
  BoardLedger ledger;
  for (std::size_t h = rs.size(); h-- > 0;)
    for (std::size_t h2 = 0; h2 < h; ++h2) {
      Mat m = n.select(rs[h], rs[h2]);
      if (!m.is_zero()) ledger.push(b, op::CrossRowAdd{h2, h, m});
    }
  for (std::size_t h = 0; h < rs.size(); ++h) {
    Mat m = p.select(rs[h], rs[h]);
    if (m.is_identity()) continue;
    if (auto v = row_partner(b, h))
      ledger.push(b, op::ScoredSimilarity{h, *v, m});
    else
      ledger.push(b, op::RowOpWithinStrip{h, m});
  }
  for (std::size_t v = 0; v < cs.size(); ++v) {
    Mat m = q.select(cs[v], cs[v]);
    if (!m.is_identity() && !col_partner(b, v)) ledger.push(b, op::ColOpWithinStrip{v, m});
  }
  for (std::size_t v = cs.size(); v-- > 0;)
    for (std::size_t v2 = 0; v2 < v; ++v2) {
      Mat m = u.select(cs[v2], cs[v]);
      if (!m.is_zero()) ledger.push(b, op::CrossColAdd{v2, v, m});
    }
  for (std::size_t h = 0; h < rs.size(); ++h)
    if (rp[h].size() > 1) ledger.push(b, op::SubCut{true, h, rp[h]});
  for (std::size_t v = 0; v < cs.size(); ++v)
    if (cp[v].size() > 1) ledger.push(b, op::SubCut{false, v, cp[v]});
  return ledger;
}

}  // namespace

SolvedBoard solve(const Board& board) {
  board.validate();
  const FieldSpec& f = board.matrix.field();
  SolvedBoard already{board, {}, {}, {}, Mat::identity(f, board.matrix.rows()), Mat::identity(f, board.matrix.cols())};
  for (auto h : board.rows) already.row_pieces.push_back(trivial(h));
  for (auto w : board.cols) already.col_pieces.push_back(trivial(w));
  if (verify_lye(already)) return already;

  Reduction red = reduce(board);
  if (!in_board_group(board, red.p, red.q)) internal("transformation left the admissible group");
  SolvedBoard out{board, red.row_pieces, red.col_pieces, {}, red.p, red.q};
  out.board.matrix = inverse(red.p) * board.matrix * red.q;
  out.ledger = ledger_from(board, red.p, red.q, red.row_pieces, red.col_pieces);
  if (!verify_lye(out)) internal("result is not in normal form");
  return out;
}

}  // namespace mapc
