#pragma once

// Exact rational arithmetic used across the whole library. All quantities that
// the algorithms compare (capacities, demands, profits, costs, loads) are kept
// as exact rationals; nothing in the solvers ever rounds through floating
// point.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pathpack {

using Rat = mpq_class;
using Int = mpz_class;

// Parses "p", "p/q", or a decimal string like "0.51" / "-2.5" into a canonical
// rational. Throws std::invalid_argument on malformed input or q == 0.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::string t = s;
  auto dot = t.find('.');
  if (dot != std::string::npos) {
    if (t.find('/') != std::string::npos)
      throw std::invalid_argument("rational literal mixes '.' and '/': " + s);
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    std::size_t frac_len = t.size() - dot - 1;
    if (frac_len == 0) throw std::invalid_argument("trailing dot in: " + s);
    mpz_class num;
    if (mpz_set_str(num.get_mpz_t(), digits.c_str(), 10) != 0)
      throw std::invalid_argument("bad rational literal: " + s);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
  Rat r;
  if (mpq_set_str(r.get_mpq_t(), t.c_str(), 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

// Canonical emission: integer value -> "p", otherwise "p/q" in lowest terms.
inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// ceil(a / b) for b > 0, as an exact integer.
inline Int ceil_div(const Rat& a, const Rat& b) {
  if (b <= 0) throw std::invalid_argument("ceil_div: nonpositive divisor");
  Rat q = a / b;
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

inline Int floor_rat(const Rat& a) {
  Int out;
  mpz_fdiv_q(out.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  return out;
}

inline Int ceil_rat(const Rat& a) {
  Int out;
  mpz_cdiv_q(out.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  return out;
}

// Largest integer l with 2^l <= x (x > 0). May be negative for x < 1.
inline long floor_log2(const Rat& x) {
  if (x <= 0) throw std::invalid_argument("floor_log2: nonpositive value");
  long l = 0;
  Rat v = x;
  while (v >= 2) { v /= 2; ++l; }
  while (v < 1) { v *= 2; --l; }
  return l;
}

// 2^l as a rational, l may be negative.
inline Rat pow2(long l) {
  Rat r = 1;
  for (long i = 0; i < l; ++i) r *= 2;
  for (long i = 0; i > l; --i) r /= 2;
  return r;
}

inline long to_long(const Int& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer out of long range");
  return v.get_si();
}

inline long lcm_long(long a, long b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), Int(a).get_mpz_t(), Int(b).get_mpz_t());
  Int l = Int(a) / g * Int(b);
  return to_long(l);
}

}  // namespace pathpack
