#include "cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "mapc/gen.hpp"
#include "mapc/oracle.hpp"
#include "mapc/pair_canon.hpp"
#include "mapc/pair_file.hpp"

namespace mapc::cli {

namespace {

// "2", "GF(2)" or "Q".
FieldSpec field_arg(const std::string& s) {
  if (s == "Q" || s == "q") return FieldSpec::rationals();
  if (!s.empty() && s.find_first_not_of("0123456789") == std::string::npos) return parse_field("GF(" + s + ")");
  return parse_field(s);
}

std::vector<std::string> summand_lines(const std::string& serialized) {
  std::vector<std::string> out;
  std::istringstream in(serialized);
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("path", 0) == 0 || line.rfind("cycle", 0) == 0) out.push_back(line);
  return out;
}

// Multiset difference of summand lines, "-" for the first file and "+" for the second.
void write_diff(std::ostream& out, const std::string& x, const std::string& y) {
  auto a = summand_lines(x), b = summand_lines(y);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::string> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  for (const auto& l : only_a) out << "- " << l << "\n";
  for (const auto& l : only_b) out << "+ " << l << "\n";
}

struct CanonArgs {
  std::string input, emit_canonical, emit_witness;
  bool verify = false;
};

int cmd_canon(const CanonArgs& a, std::ostream& out, std::ostream& err) {
  const MatPair pair = parse_pair_file(read_text_file(a.input));
  const Canonicalized c = canonicalize(pair);
  const std::string text = serialize(c.decomposition);
  const MatPair can = build_canonical(c.decomposition);
  if (a.verify) {
    std::string problem;
    if (!is_invertible(c.witness))
      problem = "witness is singular";
    else if (similarity_conjugate(pair, c.witness) != can)
      problem = "S^-1 (A, B) S differs from the canonical pair";
    else if (!(can.a * can.b).is_zero() || !(can.b * can.a).is_zero())
      problem = "canonical pair is not mutually annihilating";
    else if (serialize(canonicalize(parse_pair_file(format_pair_file(can))).decomposition) != text)
      problem = "canonical pair does not canonicalize to itself";
    if (!problem.empty()) {
      err << "VERIFY FAILED: " << problem << "\n";
      return kVerify;
    }
    err << "verified\n";
  }
  out << text;
  if (!a.emit_canonical.empty()) write_text_file(a.emit_canonical, format_pair_file(can));
  if (!a.emit_witness.empty()) write_text_file(a.emit_witness, format_matrix_file(c.witness));
  return kOk;
}

int cmd_similar(const std::string& f1, const std::string& f2, std::ostream& out) {
  const MatPair p = parse_pair_file(read_text_file(f1));
  const MatPair q = parse_pair_file(read_text_file(f2));
  if (p.a.field() != q.a.field())
    throw Error(ErrorKind::FieldMismatch, p.a.field().name() + " vs " + q.a.field().name());
  if (p.a.rows() != q.a.rows()) {
    out << "NOT SIMILAR\n# sizes differ: " << p.a.rows() << " vs " << q.a.rows() << "\n";
    return kNegative;
  }
  const std::string x = serialize(canonicalize(p).decomposition), y = serialize(canonicalize(q).decomposition);
  if (x == y) {
    out << "SIMILAR\n";
    return kOk;
  }
  out << "NOT SIMILAR\n";
  write_diff(out, x, y);
  return kNegative;
}

struct GenArgs {
  std::string spec, spec_file, field = "GF(2)", output, emit_spec;
  std::optional<std::size_t> random;
  std::uint64_t seed = 0;
  bool scramble = false;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const FieldSpec field = field_arg(a.field);
  const int sources = !a.spec.empty() + !a.spec_file.empty() + a.random.has_value();
  if (sources != 1) throw Error(ErrorKind::SpecError, "give exactly one of SPEC, --spec-file, --random");
  Decomposition d = a.random ? random_decomposition(field, *a.random, a.seed)
                             : parse_gen_spec(a.spec_file.empty() ? a.spec : read_text_file(a.spec_file), field);
  MatPair pair = build_canonical(d);
  // The scramble stream is offset so it differs from the sampling stream.
  if (a.scramble) pair = scramble(pair, a.seed ^ 0x5c4a'b1e5ULL);
  const std::string text = format_pair_file(pair);
  if (a.output.empty())
    out << text;
  else
    write_text_file(a.output, text);
  if (!a.emit_spec.empty()) write_text_file(a.emit_spec, serialize(d));
  return kOk;
}

int cmd_classify(const std::string& field, std::size_t n, std::ostream& out) {
  OrbitReport r = classify_all(field_arg(field), n);
  out << format_report(r);
  out << "classes=" << r.class_count << " instances=" << r.instances << "\n";
  return kOk;
}

int cmd_cross_check(const std::string& field, std::size_t n, std::ostream& out) {
  const FieldSpec f = field_arg(field);
  CrossCheck c = cross_check(f, n);
  out << "field=" << f.name() << " n=" << n << " instances=" << c.instances << " orbits=" << c.classes
      << " fibers=" << c.fibers << " expected=" << c.expected_classes << " split=" << c.split_orbits
      << " merged=" << c.merged_orbits << "\n"
      << (c.pass() ? "PASS" : "FAIL") << "\n";
  return c.pass() ? kOk : kNegative;
}

int cmd_orbit_similar(const std::string& f1, const std::string& f2, std::ostream& out) {
  const bool same = orbit_similar(parse_pair_file(read_text_file(f1)), parse_pair_file(read_text_file(f2)));
  out << (same ? "SIMILAR" : "NOT SIMILAR") << "\n";
  return same ? kOk : kNegative;
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::UnsupportedField:
    case ErrorKind::NotSquare:
    case ErrorKind::DimensionMismatch: return kParse;
    case ErrorKind::NotAnnihilating: return kNotAnnihilating;
    case ErrorKind::FieldMismatch: return kFieldMismatch;
    case ErrorKind::SpecError: return kSpec;
    case ErrorKind::TooLarge: return kTooLarge;
    case ErrorKind::Io: return kIo;
    default: return kInternal;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Canonical forms of mutually annihilating matrix pairs", "mapc"};
  app.require_subcommand(1);

  CanonArgs canon;
  auto* c = app.add_subcommand("canon", "print the canonical decomposition of a pair file");
  c->add_option("input", canon.input, "pair file")->required();
  c->add_option("--emit-canonical", canon.emit_canonical, "write the canonical pair file here");
  c->add_option("--emit-witness", canon.emit_witness, "write the witness S here");
  c->add_flag("--verify", canon.verify, "re-check the witness and the canonical pair");

  std::string sim1, sim2;
  auto* s = app.add_subcommand("similar", "decide whether two pair files are similar");
  s->add_option("first", sim1)->required();
  s->add_option("second", sim2)->required();

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "build a pair file from a decomposition");
  g->add_option("spec", gen.spec, "summand lines separated by ';'");
  g->add_option("--spec-file", gen.spec_file, "read the decomposition from a file");
  g->add_option("--field", gen.field, "GF(p), p or Q (default GF(2))");
  g->add_option("--random", gen.random, "sample a decomposition of this dimension");
  g->add_option("--seed", gen.seed, "seed for --random and --scramble");
  g->add_flag("--scramble", gen.scramble, "conjugate by a seeded random invertible matrix");
  g->add_option("-o,--output", gen.output, "output path (default stdout)");
  g->add_option("--emit-spec", gen.emit_spec, "write the decomposition used here");

  auto* o = app.add_subcommand("oracle", "brute-force orbit enumeration");
  o->require_subcommand(1);
  std::string ofield = "GF(2)";
  std::size_t on = 0;
  auto* oc = o->add_subcommand("classify", "list every similarity class");
  auto* ox = o->add_subcommand("cross-check", "compare orbits with canonical forms");
  for (auto* sub : {oc, ox}) {
    sub->add_option("--field", ofield, "GF(p), p or Q");
    sub->add_option("--n", on, "matrix size")->required();
  }
  std::string os1, os2;
  auto* osim = o->add_subcommand("similar", "orbit search for a similarity");
  osim->add_option("first", os1)->required();
  osim->add_option("second", os2)->required();

  std::vector<const char*> argv{"mapc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (c->parsed()) return cmd_canon(canon, out, err);
    if (s->parsed()) return cmd_similar(sim1, sim2, out);
    if (g->parsed()) return cmd_gen(gen, out);
    if (oc->parsed()) return cmd_classify(ofield, on, out);
    if (ox->parsed()) return cmd_cross_check(ofield, on, out);
    if (osim->parsed()) return cmd_orbit_similar(os1, os2, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace mapc::cli
