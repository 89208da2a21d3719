#include "mapc/gen.hpp"

#include <algorithm>

#include <gmpxx.h>

#include "mapc/error.hpp"
#include "mapc/oracle.hpp"

namespace mapc {

Decomposition parse_gen_spec(const std::string& text, const FieldSpec& field) {
  std::string body = text;
  std::replace(body.begin(), body.end(), ';', '\n');
  if (body.find("field") == std::string::npos) body = "field " + field.name() + "\n" + body;
  try {
    return normalize(parse_decomposition(body));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::SpecError) throw;
    throw Error(ErrorKind::SpecError, e.what());
  }
}

Decomposition random_decomposition(const FieldSpec& field, std::size_t n, std::uint64_t seed) {
  DecompositionCounter counter(field, n, kGenMaxBaseDegree);
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(mpz_class(std::to_string(seed)));
  return counter.nth(rng.get_z_range(counter.total()));
}

Mat random_invertible(const FieldSpec& field, std::size_t n, std::mt19937_64& rng) {
  // Plain modulo keeps the stream identical across standard libraries.
  const std::uint64_t p = field.is_prime() ? field.characteristic() : 7;
  const long long shift = field.is_prime() ? 0 : 3;
  for (;;) {
    Mat s(field, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) s.at(i, j) = field.from_int(static_cast<long long>(rng() % p) - shift);
    if (is_invertible(s)) return s;
  }
}

MatPair scramble(const MatPair& pair, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return similarity_conjugate(pair, random_invertible(pair.a.field(), pair.a.rows(), rng));
}

}  // namespace mapc
