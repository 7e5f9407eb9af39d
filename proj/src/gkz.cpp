#include "k34h/gkz.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "k34h/volume.hpp"

namespace k34h::gkz {

int var_index(int p, int j, int k) { return (p - 1) * 4 + (j - 1) * 2 + (k - 1); }

std::string var_name(int c, char head) {
  int p = c / 4 + 1, j = (c % 4) / 2 + 1, k = c % 2 + 1;
  return std::string(1, head) + std::to_string(p) + "_" + std::to_string(j) + std::to_string(k);
}

const std::vector<std::string>& deriv_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (int c = 0; c < kNumVars; ++c) n.push_back(var_name(c));
    return n;
  }();
  return names;
}

const GkzData& gkz_data() {
  static const GkzData data = [] {
    GkzData d;
    d.a_matrix = IntMatrix(6, 16);
    for (int p = 1; p <= 4; ++p)
      for (int j = 1; j <= 2; ++j)
        for (int k = 1; k <= 2; ++k) {
          int c = var_index(p, j, k);
          d.a_matrix.at(p - 1, c) = 1;
          if (j == 1) d.a_matrix.at(4, c) = 1;
          if (k == 1) d.a_matrix.at(5, c) = 1;
        }
    d.beta = {rat_of(-1, 2), rat_of(-1, 2), rat_of(-1, 2), rat_of(-1, 2), Rat(-1), Rat(-1)};
    return d;
  }();
  return data;
}

// ---------------------------------------------------------------------
// Toric ideal by iterated single-variable saturation. The generators
// stay homogeneous binomials throughout, so the reverse lexicographic
// division trick applies at every step.

namespace {

PolyQ divide_out_variable(const PolyQ& p, int v, bool& changed) {
  uint8_t m = 255;
  for (const auto& t : p.terms) m = std::min(m, t.mono[v]);
  if (m == 0) return p;
  changed = true;
  PolyQ q = p;
  for (auto& t : q.terms) t.mono[v] = uint8_t(t.mono[v] - m);
  return q;
}

}  // namespace

std::vector<PolyQ> toric_generators() {
  static const std::vector<PolyQ> cached = [] {
    const auto& a = gkz_data().a_matrix;
    auto kb = kernel_basis(a);
    MonomialOrder base = MonomialOrder::revlex();
    std::vector<PolyQ> gens;
    for (const auto& u : kb) {
      Mono plus = mono_one(), minus = mono_one();
      for (int c = 0; c < kNumVars; ++c) {
        long e = u[c].get_si();
        if (e > 0) plus[c] = uint8_t(e);
        if (e < 0) minus[c] = uint8_t(-e);
      }
      gens.push_back(binomial(plus, minus, base));
    }
    for (int pass = 0; pass < 8; ++pass) {
      bool changed = false;
      for (int v = 0; v < kNumVars; ++v) {
        MonomialOrder ord = MonomialOrder::revlex_cheapest(v);
        std::vector<PolyQ> gb = groebner(gens, ord);
        std::vector<PolyQ> next;
        for (const auto& g : gb) next.push_back(divide_out_variable(g, v, changed));
        gens = std::move(next);
      }
      if (!changed) break;
    }
    return gens;
  }();
  return cached;
}

// ---------------------------------------------------------------------
// Disk cache for reduced bases.

namespace {

uint64_t content_hash(const MonomialOrder& ord) {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&](uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  const auto& a = gkz_data().a_matrix;
  for (const auto& e : a.a) mix(uint64_t(e.get_si()) + 0x9e37);
  for (int i = 0; i < kNumVars; ++i) mix(uint64_t(ord.perm[i]));
  for (int i = 0; i < kNumVars; ++i) mix(uint64_t(ord.weight[i] + 7));
  mix(ord.tag == MonomialOrder::Tag::revlex ? 1 : 2);
  return h;
}

std::string poly_to_line(const PolyQ& p) {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p.terms) {
    if (!first) os << " | ";
    first = false;
    os << rat_str(t.coeff);
    for (int i = 0; i < kNumVars; ++i) os << ' ' << int(t.mono[i]);
  }
  return os.str();
}

std::optional<PolyQ> poly_from_line(const std::string& line, const MonomialOrder& ord) {
  std::vector<Term> terms;
  std::istringstream ls(line);
  std::string chunk;
  std::vector<std::string> chunks;
  {
    std::string cur;
    std::istringstream raw(line);
    std::string tok;
    chunks.push_back("");
    while (raw >> tok) {
      if (tok == "|") {
        chunks.push_back("");
      } else {
        chunks.back() += tok + " ";
      }
    }
  }
  for (const auto& c : chunks) {
    std::istringstream ts(c);
    std::string coeff;
    if (!(ts >> coeff)) return std::nullopt;
    Term t;
    try {
      t.coeff = parse_rat(coeff);
    } catch (...) {
      return std::nullopt;
    }
    for (int i = 0; i < kNumVars; ++i) {
      int e;
      if (!(ts >> e) || e < 0 || e > 255) return std::nullopt;
      t.mono[i] = uint8_t(e);
    }
    terms.push_back(t);
  }
  if (terms.empty()) return std::nullopt;
  return make_poly(terms, ord);
}

}  // namespace

std::vector<PolyQ> toric_groebner(const MonomialOrder& ord, const std::string& cache_dir) {
  std::string path;
  if (!cache_dir.empty()) {
    char buf[32];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)content_hash(ord));
    path = cache_dir + "/gkz_gb_" + buf + ".txt";
    std::ifstream in(path);
    if (in) {
      std::string header;
      std::getline(in, header);
      std::string expect = "order=" + ord.tag_str() + " hash=" + buf;
      if (header == expect) {
        std::vector<PolyQ> basis;
        std::string line;
        bool ok = true;
        while (std::getline(in, line)) {
          if (line.empty()) continue;
          auto p = poly_from_line(line, ord);
          if (!p) {
            ok = false;
            break;
          }
          basis.push_back(*p);
        }
        if (ok && !basis.empty() && is_groebner(basis, ord)) return basis;
      }
    }
  }
  std::vector<PolyQ> basis = groebner(toric_generators(), ord);
  if (!path.empty()) {
    std::filesystem::create_directories(cache_dir);
    std::ofstream out(path);
    char buf[32];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)content_hash(ord));
    out << "order=" << ord.tag_str() << " hash=" << buf << "\n";
    for (const auto& p : basis) out << poly_to_line(p) << "\n";
  }
  return basis;
}

// ---------------------------------------------------------------------
// Multiplicity: Stanley-Reisner facet count of the squarefree initial
// ideal, cross-checked by the lattice volume of the point configuration.

namespace {

// Hilbert numerator of a monomial ideal by the colon recursion.
std::vector<long> poly_mul_shift(const std::vector<long>& n, int deg) {
  std::vector<long> r(n.size() + deg, 0);
  for (size_t i = 0; i < n.size(); ++i) r[i + deg] += n[i];
  return r;
}

std::vector<long> poly_sub(std::vector<long> a, const std::vector<long>& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return a;
}

std::vector<Mono> minimalize(std::vector<Mono> gens) {
  std::sort(gens.begin(), gens.end(),
            [](const Mono& a, const Mono& b) { return degree(a) < degree(b); });
  std::vector<Mono> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out)
      if (divides(h, g)) { redundant = true; break; }
    if (!redundant) out.push_back(g);
  }
  return out;
}

std::vector<long> hilbert_numerator(std::vector<Mono> gens) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {1};
  if (gens.size() == 1) {
    std::vector<long> n{1};
    return poly_sub(n, poly_mul_shift({1}, degree(gens[0])));
  }
  Mono pivot = gens.back();
  std::vector<Mono> rest(gens.begin(), gens.end() - 1);
  std::vector<Mono> colon;
  for (const auto& g : rest) {
    Mono q;
    for (int i = 0; i < kNumVars; ++i) q[i] = uint8_t(g[i] > pivot[i] ? g[i] - pivot[i] : 0);
    colon.push_back(q);
  }
  std::vector<long> n_rest = hilbert_numerator(rest);
  std::vector<long> n_colon = hilbert_numerator(colon);
  return poly_sub(n_rest, poly_mul_shift(n_colon, degree(pivot)));
}

}  // namespace

long multiplicity_hilbert(const std::vector<Mono>& leads, int krull_dim) {
  std::vector<long> n = hilbert_numerator(leads);
  int codim = kNumVars - krull_dim;
  for (int round = 0; round < codim; ++round) {
    // divide by (1 - t): quotient q_i = sum_{j <= i} n_j, remainder n(1)
    std::vector<long> q(n.size(), 0);
    long acc = 0;
    for (size_t i = 0; i < n.size(); ++i) {
      acc += n[i];
      q[i] = acc;
    }
    if (acc != 0) throw std::logic_error("hilbert numerator not divisible by (1-t)^codim");
    if (!q.empty()) q.pop_back();
    n = q;
  }
  long e = 0;
  for (long c : n) e += c;
  return e;
}

MultiplicityReport multiplicity(const std::string& cache_dir) {
  MultiplicityReport rep;
  MonomialOrder ord = MonomialOrder::revlex();
  auto basis = toric_groebner(ord, cache_dir);

  std::vector<Mono> leads;
  rep.initial_squarefree = true;
  for (const auto& g : basis) {
    leads.push_back(g.lead().mono);
    for (int i = 0; i < kNumVars; ++i)
      if (g.lead().mono[i] > 1) rep.initial_squarefree = false;
  }

  const int krull = rank_of(gkz_data().a_matrix);  // 6
  if (rep.initial_squarefree) {
    rep.method = "stanley-reisner";
    // count krull-size subsets not containing the support of any lead
    std::vector<uint32_t> supports;
    for (const auto& m : leads) {
      uint32_t s = 0;
      for (int i = 0; i < kNumVars; ++i)
        if (m[i]) s |= 1u << i;
      supports.push_back(s);
    }
    long count = 0;
    std::vector<int> pick;
    std::function<void(int, int)> rec = [&](int start, int left) {
      if (left == 0) {
        uint32_t s = 0;
        for (int i : pick) s |= 1u << i;
        for (uint32_t sup : supports)
          if ((sup & s) == sup) return;
        ++count;
        return;
      }
      for (int i = start; i <= kNumVars - left; ++i) {
        pick.push_back(i);
        rec(i + 1, left - 1);
        pick.pop_back();
      }
    };
    rec(0, krull);
    rep.multiplicity = count;
  } else {
    rep.method = "hilbert-series";
    rep.multiplicity = multiplicity_hilbert(leads, krull);
  }
  rep.normalized_volume = normalized_volume(gkz_data().a_matrix);
  return rep;
}

// ---------------------------------------------------------------------

std::vector<PolyQ> e2_symbols() {
  MonomialOrder ord = MonomialOrder::revlex();
  std::set<std::pair<Mono, Mono>> seen;
  std::vector<PolyQ> out;
  auto add = [&](Mono plus, Mono minus) {
    if (plus == minus) return;
    if (ord.cmp(plus, minus) < 0) std::swap(plus, minus);
    if (!seen.insert({plus, minus}).second) return;
    out.push_back(binomial(plus, minus, ord));
  };
  auto unit = [](int p, int j, int k) {
    Mono m = mono_one();
    m[var_index(p, j, k)] = 1;
    return m;
  };
  // commuting second derivatives across curve indices
  for (int q = 1; q <= 4; ++q)
    for (int p = 1; p <= 4; ++p) {
      if (p == q) continue;
      for (int i = 1; i <= 2; ++i)
        for (int j = 1; j <= 2; ++j)
          for (int k = 1; k <= 2; ++k)
            for (int l = 1; l <= 2; ++l)
              add(mono_mul(unit(q, i, j), unit(p, k, l)), mono_mul(unit(q, k, l), unit(p, i, j)));
    }
  // the Segre-type relation d11 d22 = d21 d12 between any two blocks
  for (int q = 1; q <= 4; ++q)
    for (int p = 1; p <= 4; ++p)
      add(mono_mul(unit(q, 1, 1), unit(p, 2, 2)), mono_mul(unit(q, 2, 1), unit(p, 1, 2)));
  return out;
}

bool e2_membership(const std::vector<PolyQ>& basis, const MonomialOrder& ord) {
  for (const auto& s : e2_symbols())
    if (!normal_form(resort(s, ord), basis, ord).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------
// Differential operators.

namespace {

DiffOp xpartial_sum(const std::vector<std::pair<int, int>>& xdpairs, const Rat& constant,
                    const std::string& name) {
  DiffOp op;
  op.name = name;
  for (auto [xc, dc] : xdpairs) {
    OpTerm t;
    t.coeff = 1;
    t.xexp = mono_one();
    t.dexp = mono_one();
    t.xexp[xc] = 1;
    t.dexp[dc] = 1;
    op.terms.push_back(t);
  }
  if (constant != 0) op.terms.push_back({constant, mono_one(), mono_one()});
  return op;
}

}  // namespace

std::vector<DiffOp> euler_operators() {
  const auto& d = gkz_data();
  std::vector<DiffOp> ops;
  for (int r = 0; r < 6; ++r) {
    DiffOp op;
    op.name = "euler_row_" + std::to_string(r + 1);
    for (int c = 0; c < kNumVars; ++c) {
      if (d.a_matrix.at(r, c) == 0) continue;
      OpTerm t;
      t.coeff = Rat(d.a_matrix.at(r, c));
      t.xexp = mono_one();
      t.dexp = mono_one();
      t.xexp[c] = 1;
      t.dexp[c] = 1;
      op.terms.push_back(t);
    }
    op.terms.push_back({-d.beta[r], mono_one(), mono_one()});
    ops.push_back(op);
  }
  return ops;
}

std::vector<DiffOp> scaling_operators() {
  std::vector<DiffOp> ops;
  for (int p = 1; p <= 4; ++p) {
    std::vector<std::pair<int, int>> pairs;
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) pairs.push_back({var_index(p, j, k), var_index(p, j, k)});
    ops.push_back(xpartial_sum(pairs, rat_of(1, 2), "scale_" + std::to_string(p)));
  }
  return ops;
}

std::vector<DiffOp> e1_operators() {
  std::vector<DiffOp> ops;
  for (auto [l, m] : {std::pair{1, 2}, std::pair{2, 1}}) {
    std::vector<std::pair<int, int>> pairs;
    for (int p = 1; p <= 4; ++p)
      for (int j = 1; j <= 2; ++j) pairs.push_back({var_index(p, l, j), var_index(p, m, j)});
    ops.push_back(xpartial_sum(pairs, Rat(0),
                               "E(" + std::to_string(l) + "," + std::to_string(m) + ")"));
  }
  for (auto [l, m] : {std::pair{1, 2}, std::pair{2, 1}}) {
    std::vector<std::pair<int, int>> pairs;
    for (int p = 1; p <= 4; ++p)
      for (int j = 1; j <= 2; ++j) pairs.push_back({var_index(p, j, l), var_index(p, j, m)});
    ops.push_back(xpartial_sum(pairs, Rat(0),
                               "E'(" + std::to_string(l) + "," + std::to_string(m) + ")"));
  }
  return ops;
}

std::vector<DiffOp> diagonal_e_operators() {
  std::vector<DiffOp> ops;
  for (int l = 1; l <= 2; ++l) {
    std::vector<std::pair<int, int>> pairs;
    for (int p = 1; p <= 4; ++p)
      for (int j = 1; j <= 2; ++j) pairs.push_back({var_index(p, l, j), var_index(p, l, j)});
    ops.push_back(xpartial_sum(pairs, Rat(1), "E(" + std::to_string(l) + "," + std::to_string(l) + ")"));
  }
  for (int l = 1; l <= 2; ++l) {
    std::vector<std::pair<int, int>> pairs;
    for (int p = 1; p <= 4; ++p)
      for (int j = 1; j <= 2; ++j) pairs.push_back({var_index(p, j, l), var_index(p, j, l)});
    ops.push_back(xpartial_sum(pairs, Rat(1), "E'(" + std::to_string(l) + "," + std::to_string(l) + ")"));
  }
  return ops;
}

std::vector<DiffOp> e2_operators() {
  std::vector<DiffOp> ops;
  for (const auto& s : e2_symbols()) {
    DiffOp op;
    op.name = "e2";
    for (const auto& t : s.terms) op.terms.push_back({t.coeff, mono_one(), t.mono});
    ops.push_back(op);
  }
  return ops;
}

DiffOp initial_form(const DiffOp& op, const std::array<long, kNumVars>& w) {
  long best = 0;
  bool first = true;
  auto weight = [&](const OpTerm& t) {
    long acc = 0;
    for (int i = 0; i < kNumVars; ++i) acc += w[i] * (long(t.dexp[i]) - long(t.xexp[i]));
    return acc;
  };
  for (const auto& t : op.terms) {
    long v = weight(t);
    if (first || v > best) best = v, first = false;
  }
  DiffOp out;
  out.name = op.name + " initial";
  for (const auto& t : op.terms)
    if (weight(t) == best) out.terms.push_back(t);
  return out;
}

std::array<long, kNumVars> theorem5_weight() {
  const long wbase[2][2] = {{1, 2}, {0, 4}};
  std::array<long, kNumVars> w{};
  for (int p = 1; p <= 4; ++p)
    for (int j = 1; j <= 2; ++j)
      for (int k = 1; k <= 2; ++k) w[var_index(p, j, k)] = long(p) * p * wbase[j - 1][k - 1];
  return w;
}

namespace {

// first-order diagonal operators as coefficient vectors (16 x-d diagonal
// slots plus the constant term)
std::optional<std::vector<Rat>> diag_vector(const DiffOp& op) {
  std::vector<Rat> v(kNumVars + 1, Rat(0));
  for (const auto& t : op.terms) {
    int nx = 0, nd = 0, ix = -1, id = -1;
    for (int i = 0; i < kNumVars; ++i) {
      nx += t.xexp[i], nd += t.dexp[i];
      if (t.xexp[i]) ix = i;
      if (t.dexp[i]) id = i;
    }
    if (nx == 0 && nd == 0) {
      v[kNumVars] += t.coeff;
    } else if (nx == 1 && nd == 1 && ix == id) {
      v[ix] += t.coeff;
    } else {
      return std::nullopt;  // not of Euler type
    }
  }
  return v;
}

int rank_of_vectors(const std::vector<std::vector<Rat>>& rows) {
  if (rows.empty()) return 0;
  QMatrix m(int(rows.size()), int(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.at(int(i), int(j)) = rows[i][j];
  return rank_of(m);
}

}  // namespace

bool euler_span_matches() {
  std::vector<std::vector<Rat>> euler, cand, both;
  for (const auto& op : euler_operators()) euler.push_back(*diag_vector(op));
  for (const auto& op : scaling_operators()) cand.push_back(*diag_vector(op));
  auto diag = diagonal_e_operators();
  cand.push_back(*diag_vector(diag[0]));  // E(1,1)
  cand.push_back(*diag_vector(diag[2]));  // E'(1,1)
  both = euler;
  for (const auto& v : cand) both.push_back(v);
  int re = rank_of_vectors(euler), rc = rank_of_vectors(cand), rb = rank_of_vectors(both);
  if (!(re == 6 && rc == 6 && rb == 6)) return false;
  // the remaining diagonal operators also lie in the span
  both.push_back(*diag_vector(diag[1]));
  both.push_back(*diag_vector(diag[3]));
  return rank_of_vectors(both) == 6;
}

}  // namespace k34h::gkz
