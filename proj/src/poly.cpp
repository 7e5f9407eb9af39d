#include "k34h/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace k34h::gkz {

MonomialOrder MonomialOrder::revlex_cheapest(int var) {
  MonomialOrder o;
  int pos = 0;
  for (int i = 0; i < kNumVars; ++i)
    if (i != var) o.perm[pos++] = i;
  o.perm[kNumVars - 1] = var;
  return o;
}

MonomialOrder MonomialOrder::weighted(const std::array<long, kNumVars>& w) {
  MonomialOrder o;
  o.tag = Tag::weight_revlex;
  o.weight = w;
  return o;
}

int MonomialOrder::cmp(const Mono& a, const Mono& b) const {
  if (tag == Tag::weight_revlex) {
    long wa = 0, wb = 0;
    for (int i = 0; i < kNumVars; ++i) wa += weight[i] * a[i], wb += weight[i] * b[i];
    if (wa != wb) return wa < wb ? -1 : 1;
  }
  int da = degree(a), db = degree(b);
  if (da != db) return da < db ? -1 : 1;
  for (int i = kNumVars - 1; i >= 0; --i) {
    int d = int(a[perm[i]]) - int(b[perm[i]]);
    if (d != 0) return d > 0 ? -1 : 1;  // larger exponent in a cheap slot loses
  }
  return 0;
}

std::string MonomialOrder::tag_str() const {
  return tag == Tag::revlex ? "revlex" : "weight-revlex";
}

PolyQ make_poly(std::vector<Term> terms, const MonomialOrder& ord) {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& x, const Term& y) { return ord.cmp(x.mono, y.mono) > 0; });
  PolyQ p;
  for (auto& t : terms) {
    if (t.coeff == 0) continue;
    if (!p.terms.empty() && p.terms.back().mono == t.mono) {
      p.terms.back().coeff += t.coeff;
      if (p.terms.back().coeff == 0) p.terms.pop_back();
    } else {
      p.terms.push_back(std::move(t));
    }
  }
  return p;
}

PolyQ binomial(const Mono& plus, const Mono& minus, const MonomialOrder& ord) {
  return make_poly({{plus, Rat(1)}, {minus, Rat(-1)}}, ord);
}

PolyQ resort(const PolyQ& p, const MonomialOrder& ord) { return make_poly(p.terms, ord); }

PolyQ subtract_multiple(const PolyQ& p, const Rat& c, const Mono& m, const PolyQ& q,
                        const MonomialOrder& ord) {
  PolyQ r;
  r.terms.reserve(p.terms.size() + q.terms.size());
  size_t i = 0, j = 0;
  while (i < p.terms.size() || j < q.terms.size()) {
    if (j == q.terms.size()) {
      r.terms.push_back(p.terms[i++]);
      continue;
    }
    Mono qm = mono_mul(q.terms[j].mono, m);
    if (i == p.terms.size()) {
      Rat cf = -c * q.terms[j].coeff;
      if (cf != 0) r.terms.push_back({qm, cf});
      ++j;
      continue;
    }
    int cc = ord.cmp(p.terms[i].mono, qm);
    if (cc > 0) {
      r.terms.push_back(p.terms[i++]);
    } else if (cc < 0) {
      Rat cf = -c * q.terms[j].coeff;
      if (cf != 0) r.terms.push_back({qm, cf});
      ++j;
    } else {
      Rat cf = p.terms[i].coeff - c * q.terms[j].coeff;
      if (cf != 0) r.terms.push_back({qm, cf});
      ++i, ++j;
    }
  }
  return r;
}

PolyQ normal_form(PolyQ p, const std::vector<PolyQ>& basis, const MonomialOrder& ord) {
  PolyQ out;
  while (!p.is_zero()) {
    bool reduced = false;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      if (divides(g.lead().mono, p.lead().mono)) {
        Rat c = p.lead().coeff / g.lead().coeff;
        p = subtract_multiple(p, c, mono_div(p.lead().mono, g.lead().mono), g, ord);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      out.terms.push_back(p.lead());
      p.terms.erase(p.terms.begin());
    }
  }
  return out;
}

namespace {

bool coprime(const Mono& a, const Mono& b) {
  for (int i = 0; i < kNumVars; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

PolyQ s_poly(const PolyQ& f, const PolyQ& g, const MonomialOrder& ord) {
  Mono l = mono_lcm(f.lead().mono, g.lead().mono);
  PolyQ a = subtract_multiple(PolyQ{}, Rat(-1) / f.lead().coeff, mono_div(l, f.lead().mono), f, ord);
  return subtract_multiple(a, Rat(1) / g.lead().coeff, mono_div(l, g.lead().mono), g, ord);
}

std::vector<PolyQ> interreduce(std::vector<PolyQ> basis, const MonomialOrder& ord) {
  std::sort(basis.begin(), basis.end(), [&](const PolyQ& a, const PolyQ& b) {
    return ord.cmp(a.lead().mono, b.lead().mono) < 0;
  });
  // drop elements whose lead is divisible by an earlier or distinct lead
  std::vector<PolyQ> kept;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (j == i) continue;
      if (!divides(basis[j].lead().mono, basis[i].lead().mono)) continue;
      if (basis[j].lead().mono == basis[i].lead().mono && j > i) continue;
      redundant = true;
    }
    if (!redundant) kept.push_back(basis[i]);
  }
  std::vector<PolyQ> out;
  for (size_t i = 0; i < kept.size(); ++i) {
    std::vector<PolyQ> others;
    for (size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    PolyQ r = normal_form(kept[i], others, ord);
    if (r.is_zero()) continue;
    Rat inv = Rat(1) / r.lead().coeff;
    for (auto& t : r.terms) t.coeff *= inv;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [&](const PolyQ& a, const PolyQ& b) {
    return ord.cmp(a.lead().mono, b.lead().mono) < 0;
  });
  return out;
}

}  // namespace

std::vector<PolyQ> groebner(std::vector<PolyQ> gens, const MonomialOrder& ord) {
  std::vector<PolyQ> g;
  for (auto& p : gens) {
    PolyQ q = resort(p, ord);
    if (!q.is_zero()) g.push_back(std::move(q));
  }
  struct Pair {
    size_t i, j;
    Mono lcm;
    int deg;
  };
  auto pair_less = [](const Pair& a, const Pair& b) { return a.deg > b.deg; };
  std::vector<Pair> pairs;
  auto push_pairs = [&](size_t k) {
    for (size_t i = 0; i < k; ++i) {
      if (coprime(g[i].lead().mono, g[k].lead().mono)) continue;  // product criterion
      Mono l = mono_lcm(g[i].lead().mono, g[k].lead().mono);
      pairs.push_back({i, k, l, degree(l)});
      std::push_heap(pairs.begin(), pairs.end(), pair_less);
    }
  };
  for (size_t k = 0; k < g.size(); ++k) push_pairs(k);

  while (!pairs.empty()) {
    std::pop_heap(pairs.begin(), pairs.end(), pair_less);
    Pair pr = pairs.back();
    pairs.pop_back();
    // chain criterion
    bool skip = false;
    for (size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!divides(g[k].lead().mono, pr.lcm)) continue;
      Mono l1 = mono_lcm(g[pr.i].lead().mono, g[k].lead().mono);
      Mono l2 = mono_lcm(g[pr.j].lead().mono, g[k].lead().mono);
      if (!(l1 == pr.lcm) && !(l2 == pr.lcm)) skip = true;
    }
    if (skip) continue;
    PolyQ s = s_poly(g[pr.i], g[pr.j], ord);
    PolyQ r = normal_form(std::move(s), g, ord);
    if (r.is_zero()) continue;
    Rat inv = Rat(1) / r.lead().coeff;
    for (auto& t : r.terms) t.coeff *= inv;
    g.push_back(std::move(r));
    push_pairs(g.size() - 1);
  }
  return interreduce(std::move(g), ord);
}

bool is_groebner(const std::vector<PolyQ>& basis, const MonomialOrder& ord) {
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) {
      if (coprime(basis[i].lead().mono, basis[j].lead().mono)) continue;
      PolyQ s = s_poly(basis[i], basis[j], ord);
      if (!normal_form(std::move(s), basis, ord).is_zero()) return false;
    }
  return true;
}

std::string PolyQ::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms) {
    if (!first) os << " + ";
    first = false;
    os << rat_str(t.coeff);
    for (int i = 0; i < kNumVars; ++i)
      if (t.mono[i]) {
        os << "*" << names[i];
        if (t.mono[i] > 1) os << "^" << int(t.mono[i]);
      }
  }
  return os.str();
}

}  // namespace k34h::gkz
