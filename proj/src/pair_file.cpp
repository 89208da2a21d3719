#include "mapc/pair_file.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "mapc/error.hpp"

namespace mapc {

namespace {

class Lines {
 public:
  explicit Lines(const std::string& text) : in_(text) {}

  // Next line that is not a comment; blank lines are returned as empty.
  std::optional<std::string> next() {
    std::string line;
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first != std::string::npos && line[first] == '#') continue;
      return first == std::string::npos ? std::string() : line;
    }
    return std::nullopt;
  }
  std::string next_content(const char* what) {
    for (;;) {
      auto line = next();
      if (!line) fail(std::string("unexpected end of input, expected ") + what);
      if (!line->empty()) return *line;
    }
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(number_) + ": " + msg);
  }

 private:
  std::istringstream in_;
  std::size_t number_ = 0;
};

std::pair<FieldSpec, std::size_t> read_header(Lines& lines) {
  std::istringstream head(lines.next_content("'field' header"));
  std::string kw, name, extra;
  if (!(head >> kw >> name) || kw != "field" || (head >> extra)) lines.fail("expected 'field GF(p)' or 'field Q'");
  FieldSpec field = parse_field(name);
  std::istringstream dim(lines.next_content("'n <dim>'"));
  long long n = -1;
  if (!(dim >> kw >> n) || kw != "n" || n < 0 || (dim >> extra)) lines.fail("expected 'n <dim>'");
  return {field, static_cast<std::size_t>(n)};
}

Mat read_rows(Lines& lines, const FieldSpec& field, std::size_t n, const char* name) {
  Mat m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::istringstream row(lines.next_content(name));
    std::string tok;
    std::size_t j = 0;
    while (row >> tok) {
      if (j == n) lines.fail(std::string("too many entries in a row of ") + name);
      try {
        m.at(i, j++) = parse_scalar(field, tok);
      } catch (const Error& e) {
        lines.fail(e.what());
      }
    }
    if (j != n) lines.fail(std::string("too few entries in a row of ") + name);
  }
  return m;
}

void expect_end(Lines& lines) {
  while (auto line = lines.next())
    if (!line->empty()) lines.fail("unexpected trailing content");
}

void write_rows(std::ostringstream& out, const Mat& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).to_string();
    out << "\n";
  }
}

}  // namespace

MatPair parse_pair_file(const std::string& text) {
  Lines lines(text);
  auto [field, n] = read_header(lines);
  Mat a = read_rows(lines, field, n, "A");
  Mat b = read_rows(lines, field, n, "B");
  expect_end(lines);
  MatPair pair{a, b};
  require_annihilating(pair);
  return pair;
}

std::string format_pair_file(const MatPair& pair) {
  std::ostringstream out;
  out << "field " << pair.a.field().name() << "\nn " << pair.a.rows() << "\n";
  write_rows(out, pair.a);
  out << "\n";
  write_rows(out, pair.b);
  return out.str();
}

Mat parse_matrix_file(const std::string& text) {
  Lines lines(text);
  auto [field, n] = read_header(lines);
  Mat m = read_rows(lines, field, n, "matrix");
  expect_end(lines);
  return m;
}

std::string format_matrix_file(const Mat& m) {
  std::ostringstream out;
  out << "field " << m.field().name() << "\nn " << m.rows() << "\n";
  write_rows(out, m);
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(ErrorKind::Io, "cannot write '" + path + "'");
}

}  // namespace mapc
