#include "mapc/decomposition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "mapc/error.hpp"
#include "mapc/normal_form.hpp"

namespace mapc {

std::size_t Summand::dim() const {
  if (kind == SummandKind::Path) return word.size() + 1;
  std::size_t k = 0;
  for (const auto& d : phi_class) k += static_cast<std::size_t>(d.degree());
  return word.size() * k;
}

bool operator<(const Summand& a, const Summand& b) {
  if (a.kind != b.kind) return a.kind == SummandKind::Path;
  if (a.kind == SummandKind::Path) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  }
  if (a.word != b.word) return a.word < b.word;
  return a.phi_class < b.phi_class;
}

std::size_t Decomposition::total_dim() const {
  std::size_t n = 0;
  for (const auto& s : summands) n += s.dim();
  return n;
}

namespace {

Word rotate(const Word& w, std::size_t r) {
  Word out(w.begin() + static_cast<std::ptrdiff_t>(r), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(r));
  return out;
}

[[noreturn]] void bad_spec(const std::string& why) { throw Error(ErrorKind::SpecError, why); }

std::string word_text(const Word& w) {
  std::string out;
  for (int c : w) out += (out.empty() ? "" : " ") + std::to_string(c);
  return out;
}

}  // namespace

bool is_aperiodic(const Word& w) {
  for (std::size_t r = 1; r < w.size(); ++r)
    if (w.size() % r == 0 && rotate(w, r) == w) return false;
  return true;
}

Word least_rotation(const Word& w) {
  Word best = w;
  for (std::size_t r = 1; r < w.size(); ++r) best = std::min(best, rotate(w, r));
  return best;
}

Decomposition normalize(Decomposition d) {
  Decomposition out{d.field, {}};
  // Phi of every cycle sharing a word, pooled.
  std::map<Word, Mat> pooled;
  for (auto& s : d.summands) {
    for (int c : s.word)
      if (c != 1 && c != 2) bad_spec("word letters must be 1 or 2");
    if (s.kind == SummandKind::Path) {
      s.phi_class.clear();
      out.summands.push_back(s);
      continue;
    }
    if (s.word.empty()) bad_spec("cycle with an empty word");
    if (!is_aperiodic(s.word)) bad_spec("cycle word " + word_text(s.word) + " is periodic");
    if (s.phi_class.empty()) bad_spec("cycle without a Phi class");
    Word key = least_rotation(s.word);
    auto it = pooled.try_emplace(key, Mat(d.field, 0, 0)).first;
    for (const auto& div : s.phi_class) {
      if (!(div.base.field() == d.field)) bad_spec("Phi divisor over the wrong field");
      if (div.base.degree() < 1) bad_spec("constant Phi divisor");
      if (div.base.coeff(0).is_zero()) bad_spec("Phi must be nonsingular, but x divides " + div.to_string());
      it->second = direct_sum(it->second, frobenius_block({div.base.monic(), div.exponent}));
    }
  }
  for (const auto& [word, phi] : pooled)
    for (const auto& block : rational_canonical_form(phi).blocks)
      out.summands.push_back({SummandKind::Cycle, word, {block.divisor}});
  std::sort(out.summands.begin(), out.summands.end());
  return out;
}

std::string serialize(const Decomposition& d) {
  std::ostringstream out;
  out << "field " << d.field.name() << "\n";
  if (d.field.is_rationals()) out << "# invariant-factor form\n";
  for (const auto& s : d.summands) {
    if (s.kind == SummandKind::Path) {
      out << "path " << (s.word.empty() ? "-" : word_text(s.word)) << "\n";
      continue;
    }
    out << "cycle " << word_text(s.word) << " |";
    for (std::size_t i = 0; i < s.phi_class.size(); ++i) out << (i ? ", " : " ") << s.phi_class[i].to_string();
    out << "\n";
  }
  return out.str();
}

namespace {

Word parse_word(std::istringstream& in, const std::string& line, bool allow_dash) {
  Word w;
  std::string tok;
  while (in >> tok) {
    if (tok == "|") break;
    if (tok == "-" && allow_dash && w.empty()) {
      if (in >> tok) throw Error(ErrorKind::ParseError, "trailing text after 'path -': " + line);
      return w;
    }
    if (tok != "1" && tok != "2") throw Error(ErrorKind::ParseError, "word letters must be 1 or 2: " + line);
    w.push_back(tok[0] - '0');
  }
  return w;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

}  // namespace

Decomposition parse_decomposition(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  Decomposition d;
  bool have_field = false;
  while (std::getline(lines, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::istringstream in(line);
    std::string kw;
    in >> kw;
    if (!have_field) {
      if (kw != "field") throw Error(ErrorKind::ParseError, "decomposition must start with 'field'");
      std::string name;
      in >> name;
      d.field = parse_field(name);
      have_field = true;
      continue;
    }
    if (kw == "path") {
      Word w = parse_word(in, line, true);
      if (w.empty() && line.find('-') == std::string::npos)
        throw Error(ErrorKind::ParseError, "empty path word must be written '-'");
      d.summands.push_back({SummandKind::Path, w, {}});
    } else if (kw == "cycle") {
      auto bar = line.find('|');
      if (bar == std::string::npos) throw Error(ErrorKind::ParseError, "cycle line needs '| divisors': " + line);
      Word w = parse_word(in, line, false);
      Summand s{SummandKind::Cycle, w, {}};
      std::istringstream divs(line.substr(bar + 1));
      std::string item;
      while (std::getline(divs, item, ',')) {
        item = trim(item);
        if (item.empty()) throw Error(ErrorKind::ParseError, "empty divisor in: " + line);
        s.phi_class.push_back(parse_divisor(d.field, item));
      }
      if (s.word.empty() || s.phi_class.empty()) throw Error(ErrorKind::ParseError, "incomplete cycle line: " + line);
      d.summands.push_back(std::move(s));
    } else {
      throw Error(ErrorKind::ParseError, "unknown summand kind '" + kw + "'");
    }
  }
  if (!have_field) throw Error(ErrorKind::ParseError, "missing 'field' line");
  return d;
}

MatPair build_summand(const FieldSpec& f, const Summand& s) {
  if (s.kind == SummandKind::Path) {
    const std::size_t t = s.word.size() + 1;
    MatPair p{Mat(f, t, t), Mat(f, t, t)};
    for (std::size_t i = 0; i + 1 < t; ++i) {
      if (s.word[i] == 1)
        p.a.at(i + 1, i) = f.one();
      else
        p.b.at(i, i + 1) = f.one();
    }
    return p;
  }
  Mat phi(f, 0, 0);
  for (const auto& d : s.phi_class) phi = direct_sum(phi, frobenius_block(d));
  const std::size_t k = phi.rows(), t = s.word.size();
  if (t == 1)
    return s.word[0] == 1 ? MatPair{phi, Mat(f, k, k)} : MatPair{Mat(f, k, k), phi};
  MatPair p{Mat(f, t * k, t * k), Mat(f, t * k, t * k)};
  const Mat id = Mat::identity(f, k);
  bool placed = false;
  for (std::size_t i = 0; i < t; ++i) {
    const std::size_t next = (i + 1) % t;
    if (s.word[i] == 1) {
      p.a.set_block(next * k, i * k, id);
    } else {
      p.b.set_block(i * k, next * k, placed ? id : phi);
      placed = true;
    }
  }
  return p;
}

MatPair build_canonical(const Decomposition& d) {
  MatPair out{Mat(d.field, 0, 0), Mat(d.field, 0, 0)};
  for (const auto& s : d.summands) {
    MatPair p = build_summand(d.field, s);
    out.a = direct_sum(out.a, p.a);
    out.b = direct_sum(out.b, p.b);
  }
  require_annihilating(out);
  return out;
}

}  // namespace mapc
