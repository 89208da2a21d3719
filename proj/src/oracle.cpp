#include "mapc/oracle.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "mapc/error.hpp"
#include "mapc/pair_canon.hpp"

namespace mapc {

namespace {

// Small matrices over GF(p) as plain residues, row-major, independent of Mat.
using Tiny = std::vector<std::uint32_t>;

struct Space {
  std::size_t n;
  std::uint32_t p;
  std::uint64_t count;  // p^(n*n)

  Space(std::size_t n_, std::uint32_t p_) : n(n_), p(p_), count(1) {
    for (std::size_t i = 0; i < n * n; ++i) count *= p;
  }
  // Lexicographic: entry (0, 0) is the most significant digit.
  Tiny decode(std::uint64_t code) const {
    Tiny e(n * n);
    for (std::size_t i = n * n; i-- > 0;) {
      e[i] = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
    return e;
  }
  std::uint64_t encode(const Tiny& e) const {
    std::uint64_t code = 0;
    for (auto x : e) code = code * p + x;
    return code;
  }
  Tiny mul(const Tiny& a, const Tiny& b) const {
    Tiny c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (!a[i * n + k]) continue;
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] = (c[i * n + j] + a[i * n + k] * b[k * n + j]) % p;
      }
    return c;
  }
  bool invertible(Tiny a) const {
    for (std::size_t col = 0, row = 0; col < n; ++col, ++row) {
      std::size_t piv = row;
      while (piv < n && a[piv * n + col] == 0) ++piv;
      if (piv == n) return false;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[row * n + j], a[piv * n + j]);
      std::uint32_t inv = 1;
      for (std::uint32_t t = 1; t < p; ++t)
        if (a[row * n + col] * t % p == 1) inv = t;
      for (std::size_t r = row + 1; r < n; ++r) {
        std::uint32_t factor = a[r * n + col] * inv % p;
        for (std::size_t j = 0; j < n; ++j) a[r * n + j] = (a[r * n + j] + (p - factor) * a[row * n + j]) % p;
      }
    }
    return true;
  }
  Tiny from(const Mat& m) const {
    Tiny e(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e[i * n + j] = static_cast<std::uint32_t>(m(i, j).residue());
    return e;
  }
  Mat to(const FieldSpec& f, const Tiny& e) const {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = f.from_int(e[i * n + j]);
    return m;
  }
};

void require_limits(const FieldSpec& f, std::size_t n, std::size_t max_gf2, std::size_t max_gf3, const char* what) {
  if (!f.is_prime()) throw Error(ErrorKind::TooLarge, std::string(what) + " needs GF(2) or GF(3)");
  const auto p = f.characteristic();
  if ((p == 2 && n <= max_gf2) || (p == 3 && n <= max_gf3)) return;
  throw Error(ErrorKind::TooLarge, std::string(what) + " is limited to n <= " + std::to_string(max_gf2) +
                                       " over GF(2) and n <= " + std::to_string(max_gf3) + " over GF(3)");
}

// Orbits of GL(n, p) acting by simultaneous conjugation on annihilating pairs.
struct Partition {
  Space space;
  std::vector<std::int64_t> class_of;  // per pair code a * M + b; -1 if not annihilating
  std::vector<std::pair<std::uint64_t, std::uint64_t>> reps;
  std::vector<std::size_t> sizes;
  std::size_t instances = 0;
};

Partition partition(const FieldSpec& f, std::size_t n) {
  require_limits(f, n, 3, 2, "classify_all");
  Partition out{Space(n, static_cast<std::uint32_t>(f.characteristic())), {}, {}, {}, 0};
  const Space& sp = out.space;
  const std::uint64_t m = sp.count;
  std::vector<Tiny> mats;
  for (std::uint64_t c = 0; c < m; ++c) mats.push_back(sp.decode(c));
  std::vector<std::uint32_t> mul(m * m);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) mul[a * m + b] = static_cast<std::uint32_t>(sp.encode(sp.mul(mats[a], mats[b])));
  Tiny id(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) id[i * n + i] = 1;
  const std::uint64_t id_code = sp.encode(id);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> gl;  // (g, g^-1)
  for (std::uint64_t g = 0; g < m; ++g)
    for (std::uint64_t h = 0; h < m; ++h)
      if (mul[g * m + h] == id_code) gl.emplace_back(g, h);

  out.class_of.assign(m * m, -1);
  std::vector<bool> seen(m * m);
  for (std::uint64_t a = 0; a < m; ++a)
    for (std::uint64_t b = 0; b < m; ++b) {
      if (mul[a * m + b] != 0 || mul[b * m + a] != 0) continue;
      ++out.instances;
      if (seen[a * m + b]) continue;
      const auto id_class = static_cast<std::int64_t>(out.reps.size());
      std::size_t size = 0;
      for (const auto& [g, gi] : gl) {
        std::uint64_t a2 = mul[mul[gi * m + a] * m + g], b2 = mul[mul[gi * m + b] * m + g];
        if (seen[a2 * m + b2]) continue;
        seen[a2 * m + b2] = true;
        out.class_of[a2 * m + b2] = id_class;
        ++size;
      }
      out.reps.emplace_back(a, b);
      out.sizes.push_back(size);
    }
  return out;
}

std::string word_text(const Word& w) {
  std::string s;
  for (int c : w) s += (s.empty() ? "" : " ") + std::to_string(c);
  return s;
}

}  // namespace

bool orbit_similar(const MatPair& p, const MatPair& q) {
  const FieldSpec& f = p.a.field();
  const std::size_t n = p.a.rows();
  require_limits(f, n, 4, 3, "orbit_similar");
  if (!(q.a.field() == f)) throw Error(ErrorKind::FieldMismatch, "pairs over different fields");
  if (q.a.rows() != n) return false;
  Space sp(n, static_cast<std::uint32_t>(f.characteristic()));
  const Tiny pa = sp.from(p.a), pb = sp.from(p.b), qa = sp.from(q.a), qb = sp.from(q.b);
  for (std::uint64_t c = 0; c < sp.count; ++c) {
    Tiny s = sp.decode(c);
    // p S = S q, i.e. S^-1 p S = q
    if (sp.mul(pa, s) != sp.mul(s, qa) || sp.mul(pb, s) != sp.mul(s, qb)) continue;
    if (sp.invertible(s)) return true;
  }
  return false;
}

OrbitReport classify_all(const FieldSpec& field, std::size_t n) {
  Partition part = partition(field, n);
  OrbitReport r{field, n, part.reps.size(), part.instances, {}};
  for (std::size_t i = 0; i < part.reps.size(); ++i) {
    const auto [a, b] = part.reps[i];
    r.classes.push_back({{part.space.to(field, part.space.decode(a)), part.space.to(field, part.space.decode(b))},
                         part.sizes[i]});
  }
  return r;
}

std::string inline_decomposition(const Decomposition& d) {
  if (d.summands.empty()) return "(empty)";
  std::string out;
  for (const auto& s : d.summands) {
    if (!out.empty()) out += "; ";
    if (s.kind == SummandKind::Path) {
      out += "path " + (s.word.empty() ? std::string("-") : word_text(s.word));
    } else {
      out += "cycle " + word_text(s.word) + " |";
      for (std::size_t i = 0; i < s.phi_class.size(); ++i) out += (i ? ", " : " ") + s.phi_class[i].to_string();
    }
  }
  return out;
}

std::string format_report(const OrbitReport& r) {
  std::ostringstream out;
  for (const auto& c : r.classes)
    out << "dim=" << r.n << " decomposition=" << inline_decomposition(canonicalize(c.representative).decomposition)
        << " orbit=" << c.orbit_size << "\n";
  return out.str();
}

CrossCheck cross_check(const FieldSpec& field, std::size_t n) {
  Partition part = partition(field, n);
  const Space& sp = part.space;
  const std::uint64_t m = sp.count;
  CrossCheck out;
  out.instances = part.instances;
  out.classes = part.reps.size();
  std::map<std::string, std::int64_t> fiber_class, fiber_id;
  std::vector<std::string> class_key(out.classes);
  std::vector<bool> split(out.classes), merged(out.classes);
  std::vector<std::pair<std::int64_t, std::int64_t>> tags;  // (orbit, fiber) per instance
  for (std::uint64_t code = 0; code < m * m; ++code) {
    const std::int64_t cls = part.class_of[code];
    if (cls < 0) continue;
    MatPair pr{sp.to(field, sp.decode(code / m)), sp.to(field, sp.decode(code % m))};
    std::string key = serialize(canonicalize(pr).decomposition);
    auto& known = class_key[static_cast<std::size_t>(cls)];
    if (known.empty()) known = key;
    if (known != key) split[static_cast<std::size_t>(cls)] = true;
    auto [it, fresh] = fiber_class.emplace(key, cls);
    if (!fresh && it->second != cls) merged[static_cast<std::size_t>(cls)] = true;
    fiber_id.emplace(key, static_cast<std::int64_t>(fiber_id.size()));
    tags.emplace_back(cls, fiber_id[key]);
  }
  for (const auto& x : tags)
    for (const auto& y : tags) {
      ++out.ordered_pairs;
      if ((x.first == y.first) != (x.second == y.second)) ++out.discrepancies;
    }
  out.fibers = fiber_class.size();
  out.split_orbits = static_cast<std::size_t>(std::count(split.begin(), split.end(), true));
  out.merged_orbits = static_cast<std::size_t>(std::count(merged.begin(), merged.end(), true));
  DecompositionCounter counter(field, n, static_cast<unsigned>(std::max<std::size_t>(n, 1)));
  out.expected_classes = counter.total().get_ui();
  return out;
}

std::optional<Mat> solve_witness(const MatPair& p, const MatPair& q, std::uint64_t seed, std::size_t tries) {
  const FieldSpec& f = p.a.field();
  const std::size_t n = p.a.rows();
  if (!(q.a.field() == f) || q.a.rows() != n) return std::nullopt;
  if (p == q) return Mat::identity(f, n);
  // Unknown S as vec(S) with index i * n + j; equations (pS - Sq)[i][j] = 0.
  Mat sys(f, 2 * n * n, n * n);
  for (int which = 0; which < 2; ++which) {
    const Mat& x = which ? p.b : p.a;
    const Mat& y = which ? q.b : q.a;
    const std::size_t base = static_cast<std::size_t>(which) * n * n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          sys.at(base + i * n + j, k * n + j) += x(i, k);
          sys.at(base + i * n + j, i * n + k) -= y(k, j);
        }
  }
  Mat basis = rank_and_nullspace(sys).nullspace;
  if (basis.cols() == 0) return std::nullopt;
  std::mt19937_64 rng(seed);
  const long long hi = f.is_prime() ? static_cast<long long>(f.characteristic()) - 1 : 2;
  std::uniform_int_distribution<long long> coeff(f.is_prime() ? 0 : -2, hi);
  for (std::size_t t = 0; t < tries; ++t) {
    Mat c(f, basis.cols(), 1);
    for (std::size_t i = 0; i < basis.cols(); ++i) c.at(i, 0) = f.from_int(coeff(rng));
    Mat v = basis * c;
    Mat s(f, n, n);
    for (std::size_t i = 0; i < n * n; ++i) s.at(i / n, i % n) = v(i, 0);
    if (is_invertible(s)) return s;
  }
  return std::nullopt;
}

std::vector<Summand> summand_types(const FieldSpec& field, std::size_t dim, unsigned max_base_degree) {
  std::vector<Summand> out;
  if (dim == 0) return out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (dim - 1)); ++bits) {
    Word w;
    for (std::size_t i = dim - 1; i-- > 0;) w.push_back(bits >> i & 1 ? 2 : 1);
    out.push_back({SummandKind::Path, w, {}});
  }
  // Bases with nonzero constant term, by degree.
  std::map<unsigned, std::vector<Poly>> bases;
  for (unsigned b = 1; b <= max_base_degree && b <= dim; ++b) {
    if (field.is_prime()) {
      for (auto& q : monic_irreducibles(field, b))
        if (!q.coeff(0).is_zero()) bases[b].push_back(q);
    } else {
      for (const char* s : {"x-1", "x+1", "x-2", "x^2+1", "x^2-2"}) {
        Poly q = parse_poly(field, s);
        if (static_cast<unsigned>(q.degree()) == b) bases[b].push_back(q);
      }
    }
  }
  for (std::size_t tau = 1; tau <= dim; ++tau) {
    if (dim % tau) continue;
    const std::size_t k = dim / tau;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << tau); ++bits) {
      Word w;
      for (std::size_t i = tau; i-- > 0;) w.push_back(bits >> i & 1 ? 2 : 1);
      if (!is_aperiodic(w) || least_rotation(w) != w) continue;
      for (const auto& [b, list] : bases) {
        if (k % b) continue;
        for (const auto& q : list) out.push_back({SummandKind::Cycle, w, {{q, static_cast<unsigned>(k / b)}}});
      }
    }
  }
  return out;
}

DecompositionCounter::DecompositionCounter(const FieldSpec& field, std::size_t n, unsigned max_base_degree)
    : field_(field), n_(n) {
  for (std::size_t d = 1; d <= n; ++d)
    for (auto& s : summand_types(field, d, max_base_degree)) types_.push_back(std::move(s));
  ways_.assign(types_.size() + 1, std::vector<mpz_class>(n + 1, 0));
  ways_.back()[0] = 1;
  for (std::size_t i = types_.size(); i-- > 0;) {
    const std::size_t d = types_[i].dim();
    for (std::size_t r = 0; r <= n; ++r)
      for (std::size_t c = 0; c * d <= r; ++c) ways_[i][r] += ways_[i + 1][r - c * d];
  }
}

Decomposition DecompositionCounter::nth(mpz_class index) const {
  if (index < 0 || index >= total()) throw Error(ErrorKind::SpecError, "decomposition index out of range");
  Decomposition d{field_, {}};
  std::size_t r = n_;
  for (std::size_t i = 0; i < types_.size() && r > 0; ++i) {
    const std::size_t dim = types_[i].dim();
    for (std::size_t c = 0; c * dim <= r; ++c) {
      const mpz_class& w = ways_[i + 1][r - c * dim];
      if (index < w) {
        for (std::size_t k = 0; k < c; ++k) d.summands.push_back(types_[i]);
        r -= c * dim;
        break;
      }
      index -= w;
    }
  }
  return normalize(d);
}

}  // namespace mapc
