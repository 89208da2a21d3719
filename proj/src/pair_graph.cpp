#include <algorithm>
#include <optional>

#include "mapc/error.hpp"
#include "mapc/pair_canon.hpp"

namespace mapc {

namespace {

[[noreturn]] void degree_violation(std::size_t v, const std::string& why) {
  throw Error(ErrorKind::DegreeViolation, "vertex " + std::to_string(v + 1) + ": " + why);
}

Coords concat(Coords a, const Coords& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct Step {
  std::size_t to;
  int letter;
};

}  // namespace

ArrowGraph build_graph(const MatPair& sparse, const std::vector<Coords>& vertices) {
  ArrowGraph g{vertices, {}};
  const std::size_t nv = vertices.size();
  for (std::size_t u = 0; u < nv; ++u)
    for (std::size_t w = 0; w < nv; ++w)
      for (ArrowKind kind : {ArrowKind::Ordinary, ArrowKind::Double}) {
        const Mat& m = kind == ArrowKind::Ordinary ? sparse.a : sparse.b;
        Mat blk = m.select(vertices[w], vertices[u]);
        if (blk.is_zero()) continue;
        if (!blk.square() || !is_invertible(blk))
          throw Error(ErrorKind::Internal, "arrow block between vertices is not an isomorphism");
        g.arrows.push_back({u, w, kind, blk});
      }
  std::vector<int> in_ord(nv), out_ord(nv), in_dbl(nv), out_dbl(nv);
  for (const auto& a : g.arrows) {
    if (a.kind == ArrowKind::Ordinary) {
      ++out_ord[a.src];
      ++in_ord[a.dst];
    } else {
      ++out_dbl[a.src];
      ++in_dbl[a.dst];
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    if (in_ord[v] > 1 || out_ord[v] > 1) degree_violation(v, "two ordinary arrows in the same direction");
    if (in_dbl[v] > 1 || out_dbl[v] > 1) degree_violation(v, "two double arrows in the same direction");
    if (in_ord[v] && out_dbl[v]) degree_violation(v, "ordinary arrow in and double arrow out");
    if (in_dbl[v] && out_ord[v]) degree_violation(v, "double arrow in and ordinary arrow out");
  }
  return g;
}

std::vector<Component> components(const ArrowGraph& g) {
  const std::size_t nv = g.vertices.size();
  std::vector<std::optional<Step>> succ(nv);
  std::vector<bool> has_pred(nv), seen(nv);
  for (const auto& a : g.arrows) {
    // Reading direction: ordinary arrows forward, double arrows backward.
    std::size_t from = a.kind == ArrowKind::Ordinary ? a.src : a.dst;
    std::size_t to = a.kind == ArrowKind::Ordinary ? a.dst : a.src;
    succ[from] = Step{to, a.kind == ArrowKind::Ordinary ? 1 : 2};
    has_pred[to] = true;
  }
  std::vector<Component> out;
  auto walk = [&](std::size_t start, bool cycle) {
    Component c;
    c.cycle = cycle;
    std::size_t v = start;
    for (;;) {
      seen[v] = true;
      c.order.push_back(v);
      if (!succ[v]) break;
      c.word.push_back(succ[v]->letter);
      v = succ[v]->to;
      if (v == start) break;
      if (seen[v]) throw Error(ErrorKind::Internal, "component walk revisited a vertex");
    }
    out.push_back(std::move(c));
  };
  for (std::size_t v = 0; v < nv; ++v)
    if (!has_pred[v]) walk(v, false);
  for (std::size_t v = 0; v < nv; ++v)
    if (!seen[v]) walk(v, true);
  return out;
}

std::vector<Mat> cycle_blocks(const MatPair& pair, const CycleWalk& walk) {
  std::vector<Mat> out;
  const std::size_t t = walk.word.size();
  for (std::size_t i = 0; i < t; ++i) {
    const Coords& here = walk.spaces[i];
    const Coords& next = walk.spaces[(i + 1) % t];
    out.push_back(walk.word[i] == 1 ? pair.a.select(next, here) : pair.b.select(here, next));
  }
  return out;
}

CycleWalk aperiodic_reduce(const CycleWalk& walk) {
  const std::size_t t = walk.word.size();
  std::size_t tau = t;
  for (std::size_t d = 1; d < t; ++d) {
    if (t % d) continue;
    bool periodic = true;
    for (std::size_t i = 0; i + d < t && periodic; ++i) periodic = walk.word[i] == walk.word[i + d];
    if (periodic) {
      tau = d;
      break;
    }
  }
  if (tau == t) return walk;
  CycleWalk out{Word(walk.word.begin(), walk.word.begin() + static_cast<std::ptrdiff_t>(tau)), {}};
  for (std::size_t i = 0; i < tau; ++i) {
    Coords merged;
    for (std::size_t j = i; j < t; j += tau) merged = concat(merged, walk.spaces[j]);
    out.spaces.push_back(merged);
  }
  return out;
}

Monodromy cycle_monodromy(const MatPair& pair, const CycleWalk& walk) {
  const std::size_t t = walk.word.size();
  if (t == 0) throw Error(ErrorKind::Internal, "empty cycle");
  const FieldSpec& f = pair.a.field();
  const std::vector<Mat> blocks = cycle_blocks(pair, walk);
  for (const auto& b : blocks)
    if (!b.square() || !is_invertible(b)) throw Error(ErrorKind::SingularMonodromy, "cycle edge is not invertible");
  const std::size_t p = static_cast<std::size_t>(
      std::find(walk.word.begin(), walk.word.end(), 2) - walk.word.begin()) % t;
  Monodromy out{Mat(f, 0, 0), std::vector<Mat>(t, Mat(f, 0, 0))};
  std::size_t i = (p + 1) % t;
  out.bases[i] = Mat::identity(f, blocks[i].cols());
  for (std::size_t step = 0; step + 1 < t; ++step, i = (i + 1) % t) {
    const std::size_t next = (i + 1) % t;
    out.bases[next] = walk.word[i] == 1 ? blocks[i] * out.bases[i] : inverse(blocks[i]) * out.bases[i];
  }
  const std::size_t after = (p + 1) % t;
  out.phi = walk.word[p] == 2 ? inverse(out.bases[p]) * blocks[p] * out.bases[after]
                              : inverse(out.bases[after]) * blocks[p] * out.bases[p];
  if (!is_invertible(out.phi)) throw Error(ErrorKind::SingularMonodromy, "cycle monodromy is singular");
  return out;
}

}  // namespace mapc
