#include "mapc/pair_canon.hpp"

#include <algorithm>
#include <map>

#include "mapc/chessboard.hpp"
#include "mapc/error.hpp"
#include "mapc/normal_form.hpp"

namespace mapc {

namespace {

Coords span_of(std::size_t start, std::size_t len) {
  Coords r(len);
  for (std::size_t i = 0; i < len; ++i) r[i] = start + i;
  return r;
}

// Columns of `local` (coordinates of one vertex space) as vectors of the whole space.
Mat embed(std::size_t n, const Coords& coords, const Mat& local) {
  Mat out(local.field(), n, local.cols());
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (std::size_t j = 0; j < local.cols(); ++j) out.at(coords[i], j) = local(i, j);
  return out;
}

Word rotate(const Word& w, std::size_t r) {
  Word out(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
  return out;
}

struct Item {
  Summand summand;
  Mat basis;  // columns in the frame of the stage that produced them
};

// Nilpotent part in the J+ frame after the chessboard step: A is J+ and B is
// sparse with nonsingular blocks. Vertices are (block, level, piece).
struct SparseNilpotent {
  MatPair pair;
  Mat frame;  // pair = frame^-1 (A', B') frame
  std::vector<Coords> vertices;
};

SparseNilpotent sparsify(const MatPair& nil) {
  const FieldSpec& f = nil.a.field();
  const std::size_t k = nil.a.rows();
  JPlusForm jp = nilpotent_jplus(nil.a);
  Mat c = inverse(jp.transform) * nil.b * jp.transform;
  const std::size_t t = jp.sizes.size();
  const auto& m = jp.sizes;
  const auto& r = jp.multiplicities;

  // B lives on (top level of block i) x (level one of block j).
  Board board{Mat(f, 0, 0), r, r, {}};
  for (std::size_t i = 0; i < t; ++i) board.scored.emplace_back(i, i);
  Coords tops, bottoms;
  for (std::size_t i = 0; i < t; ++i) {
    Coords top = span_of(jp.level_offset(i, m[i]), r[i]), bottom = span_of(jp.level_offset(i, 1), r[i]);
    tops.insert(tops.end(), top.begin(), top.end());
    bottoms.insert(bottoms.end(), bottom.begin(), bottom.end());
  }
  board.matrix = c.select(tops, bottoms);
  SolvedBoard sb = solve(board);

  // Centralizer element of J+ realizing the chessboard transformation.
  Mat s(f, k, k);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t i = 0; i < t; ++i) {
      const std::size_t r0 = board.row_start(i), c0 = board.col_start(j);
      if (i <= j) s.set_block(jp.level_offset(i, 1), jp.level_offset(j, 1), sb.q.block(r0, c0, r[i], r[j]));
      if (i >= j) s.set_block(jp.level_offset(i, m[i] - m[j] + 1), jp.level_offset(j, 1), sb.p.block(r0, c0, r[i], r[j]));
    }
    for (std::size_t l = 2; l <= m[j]; ++l)
      s.set_block(0, jp.level_offset(j, l), jp.matrix * s.block(0, jp.level_offset(j, l - 1), k, r[j]));
  }
  SparseNilpotent out;
  out.frame = jp.transform * s;
  out.pair = similarity_conjugate(nil, out.frame);
  if (out.pair.a != jp.matrix || out.pair.b.select(tops, bottoms) != sb.board.matrix)
    throw Error(ErrorKind::Internal, "centralizer lift does not reproduce the solved board");

  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t l = 1; l <= m[i]; ++l) {
      std::size_t off = jp.level_offset(i, l);
      for (std::size_t piece : sb.row_pieces[i]) {
        out.vertices.push_back(span_of(off, piece));
        off += piece;
      }
    }
  return out;
}

// d path summands from a path component of vertex dimension d.
void emit_paths(const SparseNilpotent& sp, const Component& comp, std::vector<Item>& items) {
  const std::size_t len = comp.order.size(), n = sp.pair.a.rows();
  const FieldSpec& f = sp.pair.a.field();
  auto space = [&](std::size_t i) -> const Coords& { return sp.vertices[comp.order[i]]; };
  auto block = [&](std::size_t i) {
    return comp.word[i] == 1 ? sp.pair.a.select(space(i + 1), space(i)) : sp.pair.b.select(space(i), space(i + 1));
  };
  const std::size_t start =
      static_cast<std::size_t>(std::min_element(comp.order.begin(), comp.order.end()) - comp.order.begin());
  const std::size_t d = space(start).size();
  std::vector<Mat> bases(len, Mat(f, 0, 0));
  bases[start] = Mat::identity(f, d);
  for (std::size_t i = start; i + 1 < len; ++i)
    bases[i + 1] = comp.word[i] == 1 ? block(i) * bases[i] : inverse(block(i)) * bases[i];
  for (std::size_t i = start; i-- > 0;)
    bases[i] = comp.word[i] == 1 ? inverse(block(i)) * bases[i + 1] : block(i) * bases[i + 1];
  for (std::size_t c = 0; c < d; ++c) {
    Mat basis(f, n, 0);
    for (std::size_t i = 0; i < len; ++i) basis = hstack(basis, embed(n, space(i), bases[i].column(c)));
    items.push_back({{SummandKind::Path, comp.word, {}}, basis});
  }
}

struct CyclePart {
  std::vector<Coords> spaces;
  Monodromy mono;
};

// Cycles sharing a word are normalized together, so over Q their Phi blocks
// pool into one set of invariant factors.
void emit_cycles(const MatPair& pair, const Word& word, const std::vector<CyclePart>& parts, std::vector<Item>& items) {
  const FieldSpec& f = pair.a.field();
  const std::size_t n = pair.a.rows(), t = word.size();
  Mat phi(f, 0, 0);
  std::vector<Mat> frames(t, Mat(f, n, 0));
  for (const auto& part : parts) {
    phi = direct_sum(phi, part.mono.phi);
    for (std::size_t i = 0; i < t; ++i) frames[i] = hstack(frames[i], embed(n, part.spaces[i], part.mono.bases[i]));
  }
  RationalForm rcf = rational_canonical_form(phi);
  for (auto& fr : frames) fr = fr * rcf.transform;
  std::size_t off = 0;
  for (const auto& blk : rcf.blocks) {
    const std::size_t kb = blk.matrix.rows();
    Mat basis(f, n, 0);
    for (std::size_t i = 0; i < t; ++i) basis = hstack(basis, frames[i].block(0, off, n, kb));
    items.push_back({{SummandKind::Cycle, word, {blk.divisor}}, basis});
    off += kb;
  }
}

std::vector<Item> nilpotent_items(const MatPair& nil) {
  std::vector<Item> items;
  if (nil.a.rows() == 0) return items;
  SparseNilpotent sp = sparsify(nil);
  ArrowGraph g = build_graph(sp.pair, sp.vertices);
  std::map<Word, std::vector<CyclePart>> cycles;
  for (const auto& comp : components(g)) {
    if (!comp.cycle) {
      emit_paths(sp, comp, items);
      continue;
    }
    CycleWalk walk{comp.word, {}};
    for (auto v : comp.order) walk.spaces.push_back(sp.vertices[v]);
    walk = aperiodic_reduce(walk);
    const Word least = least_rotation(walk.word);
    std::size_t r = 0;
    while (rotate(walk.word, r) != least) ++r;
    CycleWalk turned{least, {}};
    for (std::size_t i = 0; i < walk.spaces.size(); ++i) turned.spaces.push_back(walk.spaces[(i + r) % walk.spaces.size()]);
    cycles[least].push_back({turned.spaces, cycle_monodromy(sp.pair, turned)});
  }
  for (const auto& [word, parts] : cycles) emit_cycles(sp.pair, word, parts, items);
  for (auto& it : items) it.basis = sp.frame * it.basis;
  return items;
}

}  // namespace

Canonicalized canonicalize(const MatPair& pair) {
  if (!pair.a.square() || !pair.b.square()) throw Error(ErrorKind::NotSquare, "pair matrices must be square");
  if (pair.a.rows() != pair.b.rows()) throw Error(ErrorKind::DimensionMismatch, "pair matrices differ in size");
  require_annihilating(pair);
  const FieldSpec& f = pair.a.field();
  const std::size_t n = pair.a.rows();
  FittingSplit fs = fitting_split(pair);
  const std::size_t k = fs.nilpotent_pair.a.rows();

  std::vector<Item> items;
  for (auto& it : nilpotent_items(fs.nilpotent_pair)) items.push_back({it.summand, vstack(it.basis, Mat(f, n - k, it.basis.cols()))});
  std::size_t off = k;
  for (const auto& blk : fs.nonsingular_blocks) {
    const std::size_t d = blk.matrix.rows();
    items.push_back({{SummandKind::Cycle, {1}, {blk.divisor}}, embed(n, span_of(off, d), Mat::identity(f, d))});
    off += d;
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& x, const Item& y) { return x.summand < y.summand; });

  Canonicalized out{{f, {}}, Mat(f, n, 0)};
  for (auto& it : items) {
    out.decomposition.summands.push_back(it.summand);
    out.witness = hstack(out.witness, it.basis);
  }
  out.witness = fs.transform * out.witness;
  if (!is_invertible(out.witness) || similarity_conjugate(pair, out.witness) != build_canonical(out.decomposition))
    throw Error(ErrorKind::Internal, "witness does not conjugate the pair to its canonical form");
  return out;
}

bool pairs_similar(const MatPair& p, const MatPair& q) {
  if (!(p.a.field() == q.a.field())) throw Error(ErrorKind::FieldMismatch, "pairs over different fields");
  return canonicalize(p).decomposition == canonicalize(q).decomposition;
}

}  // namespace mapc
