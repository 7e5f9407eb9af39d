#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "k34h/rational.hpp"

namespace k34h::gkz {

constexpr int kNumVars = 16;

using Mono = std::array<uint8_t, kNumVars>;

inline int degree(const Mono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}
inline bool divides(const Mono& a, const Mono& b) {  // a | b
  for (int i = 0; i < kNumVars; ++i)
    if (a[i] > b[i]) return false;
  return true;
}
inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < kNumVars; ++i) r[i] = uint8_t(a[i] + b[i]);
  return r;
}
inline Mono mono_div(const Mono& a, const Mono& b) {  // a / b, assumes b | a
  Mono r;
  for (int i = 0; i < kNumVars; ++i) r[i] = uint8_t(a[i] - b[i]);
  return r;
}
inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < kNumVars; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}
inline Mono mono_one() { return Mono{}; }

// Degree reverse lexicographic order with a configurable variable
// permutation (position 0 is the most significant variable, the last
// position the cheapest), optionally refined by a weight vector.
struct MonomialOrder {
  enum class Tag { revlex, weight_revlex };
  Tag tag = Tag::revlex;
  std::array<int, kNumVars> perm;       // comparison position -> variable
  std::array<long, kNumVars> weight{};  // used by weight_revlex

  MonomialOrder() {
    for (int i = 0; i < kNumVars; ++i) perm[i] = i;
  }
  static MonomialOrder revlex() { return {}; }
  // degrevlex with the given variable moved to the cheapest position
  static MonomialOrder revlex_cheapest(int var);
  static MonomialOrder weighted(const std::array<long, kNumVars>& w);

  // three-way comparison: negative if a < b, 0 if equal, positive if a > b
  int cmp(const Mono& a, const Mono& b) const;
  bool less(const Mono& a, const Mono& b) const { return cmp(a, b) < 0; }
  std::string tag_str() const;
};

struct Term {
  Mono mono;
  Rat coeff;
};

// Polynomial with exact rational coefficients, terms sorted descending
// in the active order and free of zero coefficients.
struct PolyQ {
  std::vector<Term> terms;

  bool is_zero() const { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
  std::string str(const std::vector<std::string>& names) const;
};

PolyQ make_poly(std::vector<Term> terms, const MonomialOrder& ord);
PolyQ binomial(const Mono& plus, const Mono& minus, const MonomialOrder& ord);
// p - c * m * q
PolyQ subtract_multiple(const PolyQ& p, const Rat& c, const Mono& m, const PolyQ& q,
                        const MonomialOrder& ord);
PolyQ resort(const PolyQ& p, const MonomialOrder& ord);

// Full normal form with respect to a list of divisors.
PolyQ normal_form(PolyQ p, const std::vector<PolyQ>& basis, const MonomialOrder& ord);

// Buchberger with the product criterion, returning the reduced basis
// (monic, inter-reduced, sorted by leading monomial).
std::vector<PolyQ> groebner(std::vector<PolyQ> gens, const MonomialOrder& ord);

bool is_groebner(const std::vector<PolyQ>& basis, const MonomialOrder& ord);

}  // namespace k34h::gkz
