#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace reid {

/// Exact, unbounded integer. Every computation in the library goes through this type.
using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Floor division and the matching non-negative remainder (for positive divisor).
inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const Integer& d, const Integer& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

/// g = gcd(a, b) = s*a + t*b with g >= 0.
struct ExtendedGcd {
  Integer g, s, t;
};

inline ExtendedGcd extended_gcd(const Integer& a, const Integer& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline std::string to_string(const Integer& a) { return a.get_str(); }

inline bool is_zero(const IntVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace reid
