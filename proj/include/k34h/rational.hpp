#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace k34h {

// Arbitrary-precision integers and rationals. mpq_class keeps the
// denominator positive and the fraction reduced, which is exactly the
// invariant we need.
using BigInt = mpz_class;
using Rat = mpq_class;

inline Rat rat_of(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p" or "p/q".
inline Rat parse_rat(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  r.canonicalize();
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline long rat_to_long(const Rat& r) {
  if (r.get_den() != 1 || !r.get_num().fits_slong_p())
    throw std::domain_error("rational is not a small integer");
  return r.get_num().get_si();
}

// x mod m for rationals, result in [0, m).
inline Rat rat_mod(const Rat& x, const Rat& m) {
  Rat q = x / m;
  BigInt fl;
  mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return x - Rat(fl) * m;
}

}  // namespace k34h
