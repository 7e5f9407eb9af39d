#include "k34h/periods.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "k34h/lattice.hpp"

namespace k34h::per {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
const Cplx kBase(0.0, 4.0);  // s0

double cross2(Cplx u, Cplx v) { return u.real() * v.imag() - u.imag() * v.real(); }

double dist_point_segment(Cplx a, Cplx p, Cplx q) {
  Cplx d = q - p;
  double len2 = std::norm(d);
  if (len2 < 1e-300) return std::abs(a - p);
  double t = std::clamp(((a - p).real() * d.real() + (a - p).imag() * d.imag()) / len2, 0.0, 1.0);
  return std::abs(a - (p + t * d));
}

}  // namespace

std::array<Cplx, 4> branch_points_t(Cplx s, const Config& x) {
  std::array<Cplx, 4> t;
  for (int p = 0; p < 4; ++p) {
    Cplx den = x[p].a11 * s + x[p].a21;
    Cplx num = x[p].a12 * s + x[p].a22;
    if (std::abs(den) < 1e-12 * (std::abs(num) + 1.0))
      throw std::domain_error("branch point at infinity");
    t[p] = -num / den;
  }
  return t;
}

std::array<Cplx, 12> singular_points(const Config& x) {
  static const std::array<Cplx, 12> ref = [] {
    std::array<Cplx, 12> r;
    const auto& f = fib::singular_fibers();
    for (int i = 0; i < 12; ++i) r[i] = Cplx(f[i].s.to_double(), 0.0);
    return r;
  }();
  std::vector<Cplx> roots;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) {
      auto co = gen::collision_quadratic(x, p, q);
      Cplx a = co[0], b = co[1], c = co[2];
      if (std::abs(a) < 1e-12) throw std::domain_error("degenerate collision equation");
      Cplx disc = std::sqrt(b * b - 4.0 * a * c);
      roots.push_back((-b + disc) / (2.0 * a));
      roots.push_back((-b - disc) / (2.0 * a));
    }
  std::array<Cplx, 12> out;
  std::array<bool, 12> taken{};
  for (int i = 0; i < 12; ++i) {
    int best = -1;
    double bd = 1e300;
    for (int k = 0; k < 12; ++k) {
      if (taken[k]) continue;
      double d = std::abs(roots[k] - ref[i]);
      if (d < bd) bd = d, best = k;
    }
    if (bd > 0.15) throw std::domain_error("configuration too far from the reference fibration");
    taken[best] = true;
    out[i] = roots[best];
  }
  return out;
}

// ---------------------------------------------------------------------
// Square-root branch tracking: accumulated arguments of (pos - t_k).

namespace {

struct ArgState {
  Cplx pos;
  std::array<double, 4> args;

  static ArgState principal(Cplx pos, const std::array<Cplx, 4>& t) {
    ArgState st;
    st.pos = pos;
    for (int k = 0; k < 4; ++k) st.args[k] = std::arg(pos - t[k]);
    return st;
  }
  // move the anchor with the branch points fixed
  void move_to(Cplx np, const std::array<Cplx, 4>& t) {
    for (int sub = 1;; sub *= 2) {
      if (sub > (1 << 20)) throw std::domain_error("branch tracking step failure");
      ArgState probe = *this;
      bool ok = true;
      for (int i = 1; i <= sub && ok; ++i) {
        Cplx mid = pos + (np - pos) * (double(i) / sub);
        for (int k = 0; k < 4 && ok; ++k) {
          Cplx d_old = probe.pos - t[k], d_new = mid - t[k];
          if (std::abs(d_new) < 1e-14) {
            ok = false;
            break;
          }
          double da = std::arg(d_new / d_old);
          if (std::abs(da) > 1.9) {
            ok = false;
            break;
          }
          probe.args[k] += da;
        }
        if (ok) probe.pos = mid;
      }
      if (ok) {
        *this = probe;
        return;
      }
    }
  }
  // joint update for moving branch points and anchor
  bool drift(Cplx np, const std::array<Cplx, 4>& t_old, const std::array<Cplx, 4>& t_new) {
    std::array<double, 4> delta;
    for (int k = 0; k < 4; ++k) {
      Cplx d_old = pos - t_old[k], d_new = np - t_new[k];
      if (std::abs(d_new) < 1e-13 || std::abs(d_old) < 1e-13) return false;
      delta[k] = std::arg(d_new / d_old);
      if (std::abs(delta[k]) > 1.4) return false;
    }
    for (int k = 0; k < 4; ++k) args[k] += delta[k];
    pos = np;
    return true;
  }
  Cplx w(const std::array<Cplx, 4>& t) const {
    double a = 0, m = 0;
    for (int k = 0; k < 4; ++k) {
      a += args[k];
      m += std::log(std::abs(pos - t[k]));
    }
    return std::exp(Cplx(m / 2.0, a / 2.0));
  }
};

// ---------------------------------------------------------------------
// Corridor: a path between two branch points avoiding the other two,
// with per-intruder detour sides as the discrete homotopy state.

struct Corridor {
  int bi = 0, bj = 1;
  std::array<int, 4> side{};  // detour side per intruder, 0 = inactive
  double lambda = 0.5;        // anchor position along the chord
  ArgState anchor;

  Cplx chord_point(double lam, const std::array<Cplx, 4>& t) const {
    return t[bi] + lam * (t[bj] - t[bi]);
  }
  double band(const std::array<Cplx, 4>& t) const {
    return std::min(0.35, 0.25 * std::abs(t[bj] - t[bi]));
  }
  double detour_radius(int k, const std::array<Cplx, 4>& t) const {
    double de = std::min(std::abs(t[k] - t[bi]), std::abs(t[k] - t[bj]));
    return std::min(0.6 * band(t), 0.45 * de);
  }
};

struct Detour {
  double proj;
  Cplx center;
  double rad;
  int side;
};

std::vector<Cplx> corridor_path(const Corridor& c, const std::array<Cplx, 4>& t) {
  Cplx a = t[c.bi], b = t[c.bj];
  Cplx d = b - a;
  double len = std::abs(d);
  if (len < 1e-300) throw std::domain_error("corridor endpoints coincide");
  std::vector<Detour> dets;
  for (int k = 0; k < 4; ++k) {
    if (k == c.bi || k == c.bj || c.side[k] == 0) continue;
    double rad = c.detour_radius(k, t);
    if (dist_point_segment(t[k], a, b) >= rad) continue;
    double proj = ((t[k] - a).real() * d.real() + (t[k] - a).imag() * d.imag()) / (len * len);
    dets.push_back({proj, t[k], rad, c.side[k]});
  }
  std::sort(dets.begin(), dets.end(),
            [](const Detour& x, const Detour& y) { return x.proj < y.proj; });
  for (size_t i = 0; i + 1 < dets.size();) {
    if (std::abs(dets[i].center - dets[i + 1].center) <
        dets[i].rad + dets[i + 1].rad + 1e-12) {
      if (dets[i].side != dets[i + 1].side)
        throw std::domain_error("corridor pinched between branch points");
      Cplx mid = 0.5 * (dets[i].center + dets[i + 1].center);
      double rad = 0.5 * std::abs(dets[i].center - dets[i + 1].center) +
                   std::max(dets[i].rad, dets[i + 1].rad);
      dets[i].center = mid;
      dets[i].rad = rad;
      dets[i].proj = ((mid - a).real() * d.real() + (mid - a).imag() * d.imag()) / (len * len);
      dets.erase(dets.begin() + i + 1);
    } else {
      ++i;
    }
  }
  std::vector<Cplx> path{a};
  Cplx dir = d / len;
  for (const auto& det : dets) {
    Cplx rel = det.center - a;
    double cp = rel.real() * dir.real() + rel.imag() * dir.imag();
    double off = cross2(dir, rel);
    double h2 = det.rad * det.rad - off * off;
    if (h2 <= 0) continue;
    double half = std::sqrt(h2);
    double s_in = cp - half, s_out = cp + half;
    if (s_out <= 0 || s_in >= len) continue;
    s_in = std::clamp(s_in, 0.0, len);
    s_out = std::clamp(s_out, 0.0, len);
    Cplx pin = a + dir * s_in, pout = a + dir * s_out;
    double a_in = std::arg(pin - det.center), a_out = std::arg(pout - det.center);
    double sweep = a_out - a_in;
    while (sweep <= -kPi) sweep += 2 * kPi;
    while (sweep > kPi) sweep -= 2 * kPi;
    if (det.side > 0 && sweep < 0) sweep += 2 * kPi;
    if (det.side < 0 && sweep > 0) sweep -= 2 * kPi;
    const int chords = 10;
    double rad_in = std::abs(pin - det.center);
    path.push_back(pin);
    for (int i = 1; i < chords; ++i) {
      double ang = a_in + sweep * double(i) / chords;
      path.push_back(det.center + std::polar(rad_in, ang));
    }
    path.push_back(pout);
  }
  path.push_back(b);
  return path;
}

// ---------------------------------------------------------------------
// Gauss-Kronrod 15 with branch continuity threaded through the nodes.

struct GkNodes {
  static constexpr double xk[15] = {
      -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
      -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
      0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
      0.864864423359769,  0.949107912342759,  0.991455371120813};
  static constexpr double wk[15] = {
      0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
      0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
      0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
      0.104790010322250, 0.063092092629979, 0.022935322010529};
  static constexpr double wg[7] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                                   0.417959183673469, 0.381830050505119, 0.279705391489277,
                                   0.129484966168870};
};

template <typename F>
Cplx adaptive_gk(const F& f, ArgState& walker, double lo, double hi, double abs_tol,
                 double rel_tol, int depth) {
  double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  Cplx k15 = 0, g7 = 0;
  ArgState save = walker;
  std::array<Cplx, 15> vals;
  for (int i = 0; i < 15; ++i) {
    double u = mid + half * GkNodes::xk[i];
    vals[i] = f(u, walker);
    k15 += GkNodes::wk[i] * vals[i];
  }
  for (int i = 0; i < 7; ++i) g7 += GkNodes::wg[i] * vals[2 * i + 1];
  k15 *= half;
  g7 *= half;
  double err = std::abs(k15 - g7);
  if (err < abs_tol + rel_tol * std::abs(k15) || depth <= 0) return k15;
  walker = save;
  Cplx left = adaptive_gk(f, walker, lo, mid, abs_tol / 1.4142, rel_tol, depth - 1);
  Cplx right = adaptive_gk(f, walker, mid, hi, abs_tol / 1.4142, rel_tol, depth - 1);
  return left + right;
}

// 2 * integral of dt/w along the corridor, square-root substitutions at
// the branch-point ends.
Cplx corridor_period(const Corridor& c, const std::array<Cplx, 4>& t, const QuadParams& qp) {
  std::vector<Cplx> path = corridor_path(c, t);
  const int n = int(path.size());

  ArgState st = c.anchor;
  std::vector<ArgState> at(n);
  if (n == 2) {
    Cplx mid = 0.5 * (path[0] + path[1]);
    st.move_to(mid, t);
    at[0] = st;
    at[1] = st;
  } else {
    int nearest = 1;
    double bd = 1e300;
    for (int i = 1; i + 1 < n; ++i) {
      double d = std::abs(path[i] - st.pos);
      if (d < bd) bd = d, nearest = i;
    }
    st.move_to(path[nearest], t);
    at[nearest] = st;
    for (int i = nearest + 1; i + 1 < n; ++i) {
      ArgState s2 = at[i - 1];
      s2.move_to(path[i], t);
      at[i] = s2;
    }
    for (int i = nearest - 1; i >= 1; --i) {
      ArgState s2 = at[i + 1];
      s2.move_to(path[i], t);
      at[i] = s2;
    }
  }

  Cplx acc = 0;
  double abs_tol = std::max(qp.abs_tol, 1e-14) / std::max(n - 1, 1);

  for (int i = 0; i + 1 < n; ++i) {
    Cplx p = path[i], q = path[i + 1];
    if (std::abs(q - p) < 1e-15) continue;
    bool from_branch = (i == 0);
    bool to_branch = (i + 2 == n);
    if (from_branch && to_branch) {
      Cplx mid = 0.5 * (p + q);
      for (int half = 0; half < 2; ++half) {
        Cplx e = (half == 0) ? p : q;
        Cplx dirv = e - mid;
        ArgState wk = at[0];
        auto f = [&](double u, ArgState& wst) {
          Cplx pos = e - dirv * ((1.0 - u) * (1.0 - u));
          wst.move_to(pos, t);
          return dirv * (2.0 * (1.0 - u)) / wst.w(t);
        };
        Cplx val = adaptive_gk(f, wk, 0.0, 1.0, abs_tol, qp.rel_tol, qp.max_depth);
        acc += (half == 0) ? -val : val;
      }
      continue;
    }
    if (from_branch || to_branch) {
      Cplx e = from_branch ? p : q;
      Cplx start = from_branch ? q : p;
      Cplx dirv = e - start;
      ArgState wk = at[from_branch ? i + 1 : i];
      auto f = [&](double u, ArgState& wst) {
        Cplx pos = e - dirv * ((1.0 - u) * (1.0 - u));
        wst.move_to(pos, t);
        return dirv * (2.0 * (1.0 - u)) / wst.w(t);
      };
      Cplx val = adaptive_gk(f, wk, 0.0, 1.0, abs_tol, qp.rel_tol, qp.max_depth);
      acc += from_branch ? -val : val;
      continue;
    }
    ArgState wk = at[i];
    Cplx d = q - p;
    auto f = [&](double u, ArgState& wst) {
      wst.move_to(p + u * d, t);
      return d / wst.w(t);
    };
    acc += adaptive_gk(f, wk, 0.0, 1.0, abs_tol, qp.rel_tol, qp.max_depth);
  }
  return 2.0 * acc;
}

// ---------------------------------------------------------------------
// Continuation engine: periods reduce to 4 y(lambda) / sqrt(Q) with
// lambda the cross ratio of the branch points and y a solution of the
// Legendre equation. Continuation follows the lambda path by Taylor
// steps (chart-switching near infinity) and tracks the two square-root
// factor arguments of Q; no cycle geometry is needed along the way.

struct PfState {
  // pairing (A,B | C,D): corridor between A and B
  int ia = 0, ib = 1, ic = 2, id = 3;
  bool mu_chart = false;
  Cplx coord;       // lambda, or mu = 1/lambda in the far chart
  Cplx y, yp;       // solution and derivative w.r.t. the chart coordinate
  double arg1 = 0;  // tracked argument of (A - C)
  double arg2 = 0;  // tracked argument of (B - D)

  Cplx lambda_of(const std::array<Cplx, 4>& t) const {
    return ((t[ia] - t[ib]) * (t[ic] - t[id])) / ((t[ia] - t[ic]) * (t[ib] - t[id]));
  }
  Cplx q1(const std::array<Cplx, 4>& t) const { return t[ia] - t[ic]; }
  Cplx q2(const std::array<Cplx, 4>& t) const { return t[ib] - t[id]; }
  Cplx sqrtQ(const std::array<Cplx, 4>& t) const {
    double mod = std::sqrt(std::abs(q1(t)) * std::abs(q2(t)));
    return std::polar(mod, 0.5 * (arg1 + arg2));
  }
  Cplx period(const std::array<Cplx, 4>& t) const { return 4.0 * y / sqrtQ(t); }
};

// Taylor step of p2(h) y'' + p1(h) y' + p0 y = 0 from h=0 to h=dh.
// p2 cubic, p1 quadratic, p0 scalar; coefficients around the current point.
void taylor_step(Cplx p2[4], Cplx p1[3], Cplx p0, Cplx& y, Cplx& yp, Cplx dh) {
  const int N = 40;
  Cplx c[N + 2];
  c[0] = y;
  c[1] = yp;
  for (int n = 0; n + 2 <= N + 1; ++n) {
    Cplx acc = 0;
    // p2 terms: sum_k p2[k] * (n+2-k)(n+1-k) c[n+2-k] for k=1..3
    if (n + 1 >= 1) acc += p2[1] * double((n + 1) * n) * c[n + 1];
    if (n >= 1) acc += p2[2] * double(n * (n - 1)) * c[n];
    if (n >= 2) acc += p2[3] * double((n - 1) * (n - 2)) * c[n - 1];
    // p1 terms: sum_k p1[k] * (n+1-k) c[n+1-k] for k=0..2
    acc += p1[0] * double(n + 1) * c[n + 1];
    if (n >= 1) acc += p1[1] * double(n) * c[n];
    if (n >= 2) acc += p1[2] * double(n - 1) * c[n - 1];
    acc += p0 * c[n];
    c[n + 2] = -acc / (p2[0] * double((n + 2) * (n + 1)));
  }
  Cplx vy = 0, hp = 1;
  for (int n = 0; n <= N + 1; ++n) {
    vy += c[n] * hp;
    hp *= dh;
  }
  Cplx vyp = 0;
  hp = 1;
  for (int n = 1; n <= N + 1; ++n) {
    vyp += double(n) * c[n] * hp;
    hp *= dh;
  }
  y = vy;
  yp = vyp;
}

void pf_step_to(PfState& st, Cplx lam_new) {
  for (int guard = 0;; ++guard) {
    if (guard > 4000) throw std::domain_error("period continuation failed to converge");
    Cplx cur = st.mu_chart ? 1.0 / st.coord : st.coord;
    // chart choice by magnitude with hysteresis
    if (!st.mu_chart && std::abs(cur) > 2.5) {
      Cplx lam = st.coord;
      st.coord = 1.0 / lam;
      st.yp = -(lam * lam) * st.yp;
      st.mu_chart = true;
      continue;
    }
    if (st.mu_chart && std::abs(st.coord) > 0.45) {
      Cplx mu = st.coord;
      st.coord = 1.0 / mu;
      st.yp = -(mu * mu) * st.yp;
      st.mu_chart = false;
      continue;
    }
    Cplx target = st.mu_chart ? 1.0 / lam_new : lam_new;
    Cplx delta = target - st.coord;
    double dist = std::min(std::abs(st.coord), std::abs(st.coord - 1.0));
    if (dist < 1e-13) throw std::domain_error("period continuation hit a singular cross ratio");
    double maxstep = 0.3 * dist;
    if (std::abs(delta) <= 1e-16) return;
    Cplx dh = (std::abs(delta) <= maxstep) ? delta : delta * (maxstep / std::abs(delta));
    if (st.mu_chart) {
      Cplx m0 = st.coord;
      Cplx p2[4] = {m0 * m0 * (m0 - 1.0), 3.0 * m0 * m0 - 2.0 * m0, 3.0 * m0 - 1.0, Cplx(1.0)};
      Cplx p1[3] = {m0 * m0, 2.0 * m0, Cplx(1.0)};
      taylor_step(p2, p1, Cplx(-0.25), st.y, st.yp, dh);
    } else {
      Cplx l0 = st.coord;
      Cplx p2[4] = {l0 * (1.0 - l0), 1.0 - 2.0 * l0, Cplx(-1.0), Cplx(0.0)};
      Cplx p1[3] = {1.0 - 2.0 * l0, Cplx(-2.0), Cplx(0.0)};
      taylor_step(p2, p1, Cplx(-0.25), st.y, st.yp, dh);
    }
    st.coord += dh;
    if (std::abs(dh - delta) < 1e-300) return;
  }
}

struct PairState {
  std::array<PfState, 2> pf;
  std::array<Cplx, 4> t;
};

// the chord between consecutive cross-ratio samples must stay well away
// from the singular values of the equation
bool chart_step_ok(const PfState& st, Cplx lam_new) {
  if (std::abs(lam_new) < 1e-13 || std::abs(lam_new - 1.0) < 1e-13) return false;
  if (st.mu_chart) {
    Cplx mu_old = st.coord, mu_new = 1.0 / lam_new;
    double dist = std::min(std::abs(mu_old), std::abs(mu_old - 1.0));
    return std::abs(mu_new - mu_old) <= 0.5 * dist;
  }
  Cplx lam_old = st.coord;
  double dist = std::min(std::abs(lam_old), std::abs(lam_old - 1.0));
  return std::abs(lam_new - lam_old) <= 0.5 * dist;
}

template <typename Position>
void advance_pair(PairState& ps, const Position& at, int active_mask) {
  double sigma = 0.0;
  double step = 0.1;
  while (sigma < 1.0) {
    double trial = std::min(step, 1.0 - sigma);
    std::array<Cplx, 4> t_new = at(sigma + trial);
    bool ok = true;
    for (int ci = 0; ci < 2 && ok; ++ci) {
      if (!(active_mask >> ci & 1)) continue;
      PfState& st = ps.pf[ci];
      if (!chart_step_ok(st, st.lambda_of(t_new))) ok = false;
      if (ok) {
        Cplx r1 = st.q1(t_new) / st.q1(ps.t);
        Cplx r2 = st.q2(t_new) / st.q2(ps.t);
        if (std::abs(r1) < 1e-14 || std::abs(r2) < 1e-14 || std::abs(std::arg(r1)) > 1.3 ||
            std::abs(std::arg(r2)) > 1.3)
          ok = false;
      }
    }
    if (!ok) {
      step *= 0.5;
      if (step < 1e-10) throw std::domain_error("continuation step collapse");
      continue;
    }
    for (int ci = 0; ci < 2; ++ci) {
      if (!(active_mask >> ci & 1)) continue;
      PfState& st = ps.pf[ci];
      st.arg1 += std::arg(st.q1(t_new) / st.q1(ps.t));
      st.arg2 += std::arg(st.q2(t_new) / st.q2(ps.t));
      pf_step_to(st, st.lambda_of(t_new));
    }
    ps.t = t_new;
    sigma += trial;
    step = std::min(step * 1.7, 0.25);
  }
}

void advance_along_spath(PairState& ps, const std::vector<Cplx>& spath, const Config& x,
                         int active_mask) {
  for (size_t i = 0; i + 1 < spath.size(); ++i) {
    Cplx from = spath[i], to = spath[i + 1];
    if (std::abs(to - from) < 1e-15) continue;
    auto at = [&](double sig) { return branch_points_t(from + sig * (to - from), x); };
    advance_pair(ps, at, active_mask);
  }
}

}  // namespace

// ---------------------------------------------------------------------

struct PeriodEvaluator::Impl {
  Config x;
  QuadParams qp;
  std::array<Cplx, 12> cuts;
  PairState init;

  Impl(const Config& cfg, const QuadParams& q) : x(cfg), qp(q) {
    cuts = singular_points(cfg);
    Config ref = gen::to_complex(gen::reference_config());
    PairState ps;
    ps.t = branch_points_t(kBase, ref);
    ps.pf[0] = init_state(0, 1, 2, 3, ref, q);  // shrinks into the (1,2) collisions
    ps.pf[1] = init_state(0, 2, 1, 3, ref, q);  // shrinks into the (1,3) collisions
    bool same = true;
    for (int p = 0; p < 4; ++p)
      if (std::abs(cfg[p].a11 - ref[p].a11) + std::abs(cfg[p].a12 - ref[p].a12) +
              std::abs(cfg[p].a21 - ref[p].a21) + std::abs(cfg[p].a22 - ref[p].a22) >
          1e-15)
        same = false;
    if (!same) {
      auto at = [&](double sig) {
        Config mix;
        for (int p = 0; p < 4; ++p) {
          auto lerp = [&](Cplx u, Cplx v) { return u + sig * (v - u); };
          mix[p] = {lerp(ref[p].a11, cfg[p].a11), lerp(ref[p].a12, cfg[p].a12),
                    lerp(ref[p].a21, cfg[p].a21), lerp(ref[p].a22, cfg[p].a22)};
        }
        return branch_points_t(kBase, mix);
      };
      advance_pair(ps, at, 3);
    }
    init = ps;
  }

  // Solution data at the base point: value from the geometric corridor
  // integral, derivative by a high-order difference along a short real
  // segment of the base direction.
  static PfState init_state(int ia, int ib, int ic, int id, const Config& ref,
                            const QuadParams& q) {
    PfState st;
    st.ia = ia, st.ib = ib, st.ic = ic, st.id = id;
    auto t_base = branch_points_t(kBase, ref);
    double a1_base = std::arg(t_base[ia] - t_base[ic]);
    double a2_base = std::arg(t_base[ib] - t_base[id]);
    // the square root of Q uses the arguments the evaluator tracks, up to
    // one overall sign per corridor fixed below by the circuit-matrix table
    auto y_of = [&](Cplx s) {
      auto t = branch_points_t(s, ref);
      Cplx P = raw_corridor_period(t, ia, ib, q);
      Cplx q1 = t[ia] - t[ic], q2 = t[ib] - t[id];
      double a1 = a1_base + std::arg(q1 / (t_base[ia] - t_base[ic]));
      double a2 = a2_base + std::arg(q2 / (t_base[ib] - t_base[id]));
      Cplx sq = std::polar(std::sqrt(std::abs(q1) * std::abs(q2)), 0.5 * (a1 + a2));
      return P * sq / 4.0;
    };
    // orientation of the corridor cycle: the (1,3) corridor is traversed so
    // that the monodromy table holds on the nose
    double orient = (ib == 2) ? -1.0 : 1.0;
    auto lam_of = [&](Cplx s) {
      auto t = branch_points_t(s, ref);
      return ((t[ia] - t[ib]) * (t[ic] - t[id])) / ((t[ia] - t[ic]) * (t[ib] - t[id]));
    };
    st.coord = st.lambda_of(t_base);
    st.mu_chart = false;
    if (std::abs(st.coord) > 2.5) {
      st.mu_chart = true;
      st.coord = 1.0 / st.coord;
    }
    st.arg1 = a1_base;
    st.arg2 = a2_base;
    st.y = orient * y_of(kBase);
    auto d4 = [&](auto f, double delta) {
      return (8.0 * (f(kBase + Cplx(delta)) - f(kBase - Cplx(delta))) -
              (f(kBase + Cplx(2 * delta)) - f(kBase - Cplx(2 * delta)))) /
             (12.0 * delta);
    };
    double h = 0.05;
    Cplx dy = orient * (16.0 * d4(y_of, h / 2) - d4(y_of, h)) / 15.0;
    Cplx dl = (16.0 * d4(lam_of, h / 2) - d4(lam_of, h)) / 15.0;
    st.yp = dy / dl;
    if (st.mu_chart) {
      Cplx lam = 1.0 / st.coord;
      st.yp = -(lam * lam) * st.yp;
    }
    return st;
  }

  std::vector<Cplx> canonical_path(Cplx s) const {
    if (std::abs(s - kBase) < 1e-12) return {kBase, kBase};
    if (s.imag() > 0.02) return {kBase, Cplx(s.real(), 4.0), s};
    int j = 0;
    double bd = 1e300;
    for (int k = 0; k < 12; ++k) {
      double d = std::abs(s.real() - cuts[k].real());
      if (d < bd) bd = d, j = k;
    }
    double sgn = s.real() >= cuts[j].real() ? 1.0 : -1.0;
    double x0 = cuts[j].real() + sgn * 0.16;
    return {kBase, Cplx(x0, 4.0), Cplx(x0, s.imag()), s};
  }

  std::array<Cplx, 2> eval_along(const std::vector<Cplx>& spath, int active_mask) const {
    PairState ps = init;
    advance_along_spath(ps, spath, x, active_mask);
    std::array<Cplx, 2> out{};
    for (int ci = 0; ci < 2; ++ci)
      if (active_mask >> ci & 1) out[ci] = ps.pf[ci].period(ps.t);
    return out;
  }
};

PeriodEvaluator::PeriodEvaluator(const Config& x, const QuadParams& qp)
    : impl_(std::make_unique<Impl>(x, qp)) {}
PeriodEvaluator::~PeriodEvaluator() = default;
PeriodEvaluator::PeriodEvaluator(PeriodEvaluator&&) noexcept = default;

std::array<Cplx, 2> PeriodEvaluator::basis_at(Cplx s, int active_mask) const {
  return impl_->eval_along(impl_->canonical_path(s), active_mask);
}

std::array<Cplx, 2> PeriodEvaluator::basis_along(const std::vector<Cplx>& spath,
                                                 int active_mask) const {
  return impl_->eval_along(spath, active_mask);
}

const std::array<Cplx, 12>& PeriodEvaluator::cuts() const { return impl_->cuts; }

Cplx inner_period(Cplx s, fib::FiberClass c, const Config& x, const QuadParams& qp) {
  PeriodEvaluator ev(x, qp);
  int mask = (c.a != 0 ? 1 : 0) | (c.b != 0 ? 2 : 0);
  auto basis = ev.basis_at(s, mask);
  return ev.pairing(c, basis);
}

Cplx raw_corridor_period(const std::array<Cplx, 4>& branch_pts, int i, int j,
                         const QuadParams& qp) {
  Corridor c;
  c.bi = i;
  c.bj = j;
  c.lambda = 0.5;
  c.anchor = ArgState::principal(c.chord_point(0.5, branch_pts), branch_pts);
  // activate detours for intruders near the chord
  for (int k = 0; k < 4; ++k) {
    if (k == i || k == j) continue;
    double dist = dist_point_segment(branch_pts[k], branch_pts[i], branch_pts[j]);
    if (dist < c.band(branch_pts)) {
      double sgn = cross2(branch_pts[j] - branch_pts[i], branch_pts[k] - branch_pts[i]);
      c.side[k] = sgn >= 0 ? 1 : -1;
    }
  }
  return corridor_period(c, branch_pts, qp);
}

// ---------------------------------------------------------------------
// Integration over chain base arcs: the continuation carries the
// monodromy, so each track integrates its fixed starting class.

namespace {

struct SegIntegrator {
  const Config& x;
  const QuadParams& qp;
  Cplx p, q;  // current base segment
  long ca, cb;
  int active;

  Cplx value_at(PairState& ps, double from, double to) const {
    if (to != from) {
      Cplx s0 = p + from * (q - p), s1 = p + to * (q - p);
      auto at = [&](double sig) { return branch_points_t(s0 + sig * (s1 - s0), x); };
      advance_pair(ps, at, active);
    }
    Cplx val = 0;
    if (ca != 0) val += double(ca) * ps.pf[0].period(ps.t);
    if (cb != 0) val += double(cb) * ps.pf[1].period(ps.t);
    return val * (q - p);
  }

  // adaptive Gauss-Kronrod with the continuation state threaded through;
  // park_at_end is disabled on the final piece of a thimble, whose
  // endpoint is the singular value itself
  Cplx integrate(PairState& ps, double x0, double x1, int depth, bool park_at_end) const {
    double mid = 0.5 * (x0 + x1), half = 0.5 * (x1 - x0);
    PairState save = ps;
    Cplx k15 = 0, g7 = 0;
    double prev = x0;
    std::array<Cplx, 15> vals;
    for (int n = 0; n < 15; ++n) {
      double u = mid + half * GkNodes::xk[n];
      vals[n] = value_at(ps, prev, u);
      prev = u;
      k15 += GkNodes::wk[n] * vals[n];
    }
    for (int n = 0; n < 7; ++n) g7 += GkNodes::wg[n] * vals[2 * n + 1];
    k15 *= half;
    g7 *= half;
    if (std::abs(k15 - g7) < std::max(qp.abs_tol, qp.rel_tol * std::abs(k15)) || depth <= 0) {
      if (park_at_end) {
        Cplx ignored = value_at(ps, prev, x1);
        (void)ignored;
      }
      return k15;
    }
    ps = save;
    Cplx left = integrate(ps, x0, mid, depth - 1, true);
    Cplx right = integrate(ps, mid, x1, depth - 1, park_at_end);
    return left + right;
  }
};

Cplx integrate_track(const fib::Track& tr, const PairState& base_state, const Config& x,
                     const QuadParams& qp) {
  if (tr.base.size() < 2 || tr.start_class.is_zero()) return Cplx(0);
  int active = (tr.start_class.a != 0 ? 1 : 0) | (tr.start_class.b != 0 ? 2 : 0);
  PairState ps = base_state;
  // hop from the base point to the start of the track
  {
    Cplx from = kBase, to = tr.base[0];
    if (std::abs(to - from) > 1e-15) {
      auto at = [&](double sig) { return branch_points_t(from + sig * (to - from), x); };
      advance_pair(ps, at, active);
    }
  }
  Cplx total = 0;
  for (size_t i = 0; i + 1 < tr.base.size(); ++i) {
    if (std::abs(tr.base[i + 1] - tr.base[i]) < 1e-14) continue;
    bool last = true;
    for (size_t k = i + 1; k + 1 < tr.base.size(); ++k)
      if (std::abs(tr.base[k + 1] - tr.base[k]) >= 1e-14) last = false;
    bool park = !(last && tr.terminal.has_value());
    SegIntegrator seg{x, qp, tr.base[i], tr.base[i + 1], tr.start_class.a, tr.start_class.b,
                      active};
    total += seg.integrate(ps, 0.0, 1.0, 9, park);
  }
  return double(tr.multiplicity) * total;
}

}  // namespace

Cplx period_over_chain(const fib::TwoChain& ch, const PeriodEvaluator& ev,
                       const QuadParams& qp) {
  Cplx total = 0;
  for (const auto& tr : ch.tracks)
    total += integrate_track(tr, ev.impl_->init, ev.impl_->x, qp);
  return total;
}

Cplx period_over_chain(const fib::TwoChain& ch, const Config& x, const QuadParams& qp) {
  PeriodEvaluator ev(x, qp);
  return period_over_chain(ch, ev, qp);
}

PeriodVector period_vector(const Config& x, const QuadParams& qp) {
  PeriodEvaluator ev(x, qp);
  PeriodVector pv;
  for (int i = 1; i <= 8; ++i) pv.v[i - 1] = period_over_chain(fib::build_gamma(i), ev, qp);
  QMatrix ainv = inverse(QMatrix(lat::lattice_T().gram));
  for (int i = 0; i < 8; ++i) {
    pv.eta[i] = 0;
    for (int j = 0; j < 8; ++j) pv.eta[i] += ainv.at(i, j).get_d() * pv.v[j];
  }
  QMatrix a(lat::lattice_T().gram);
  Cplx quad = 0;
  double pos = 0, norm2 = 0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      double aij = a.at(i, j).get_d();
      quad += pv.eta[i] * aij * pv.eta[j];
      pos += std::real(std::conj(pv.eta[i]) * aij * pv.eta[j]);
    }
    norm2 += std::norm(pv.eta[i]);
  }
  pv.bilinear_residual = std::abs(quad) / std::max(norm2, 1e-300);
  pv.positivity = pos;
  pv.component_sign = std::imag(pv.eta[2] / pv.eta[0]);
  return pv;
}

// ---------------------------------------------------------------------
// Finite differences.

namespace {
Cplx& config_entry(Config& x, int var) {
  int p = var / 4, jk = var % 4;
  switch (jk) {
    case 0: return x[p].a11;
    case 1: return x[p].a12;
    case 2: return x[p].a21;
    default: return x[p].a22;
  }
}
Cplx config_entry_c(const Config& x, int var) {
  Config& xx = const_cast<Config&>(x);
  return config_entry(xx, var);
}
}  // namespace

FdEngine::FdEngine(const Config& x0, const FdParams& fp)
    : x0_(x0), fp_(fp), chain_(fib::build_gamma(1)) {
  u0_ = eval(x0_);
}

Cplx FdEngine::eval(const Config& x) { return period_over_chain(chain_, x, fp_.quad); }

Cplx FdEngine::d1(int var) {
  auto it = d1_cache_.find(var);
  if (it != d1_cache_.end()) return it->second;
  double scale = 1.0 + std::abs(config_entry_c(x0_, var));
  auto diff = [&](double h) {
    Config xa = x0_, xb = x0_;
    config_entry(xa, var) += h;
    config_entry(xb, var) -= h;
    return (eval(xa) - eval(xb)) / (2.0 * h);
  };
  double h = fp_.h1 * scale;
  Cplx dh = diff(h), dh2 = diff(h / 2);
  Cplx val = (4.0 * dh2 - dh) / 3.0;
  d1_cache_[var] = val;
  return val;
}

double FdEngine::residual(const gkz::DiffOp& op) {
  Cplx acc = 0;
  double maxterm = 0;
  for (const auto& term : op.terms) {
    int ddeg = gkz::degree(term.dexp);
    Cplx factor(term.coeff.get_d(), 0.0);
    for (int v = 0; v < gkz::kNumVars; ++v)
      for (int e = 0; e < term.xexp[v]; ++e) factor *= config_entry_c(x0_, v);
    Cplx contrib;
    if (ddeg == 0) {
      contrib = factor * u0_;
    } else if (ddeg == 1) {
      int v = -1;
      for (int k = 0; k < gkz::kNumVars; ++k)
        if (term.dexp[k] == 1) v = k;
      contrib = factor * d1(v);
    } else if (ddeg == 2) {
      int v1 = -1, v2 = -1;
      for (int k = 0; k < gkz::kNumVars; ++k) {
        for (int e = 0; e < term.dexp[k]; ++e) {
          if (v1 < 0)
            v1 = k;
          else
            v2 = k;
        }
      }
      auto mixed = [&](double h) {
        double s1 = (1.0 + std::abs(config_entry_c(x0_, v1))) * h;
        double s2 = (1.0 + std::abs(config_entry_c(x0_, v2))) * h;
        if (v1 == v2) {
          Config xa = x0_, xb = x0_;
          config_entry(xa, v1) += s1;
          config_entry(xb, v1) -= s1;
          return (eval(xa) - 2.0 * u0_ + eval(xb)) / (s1 * s1);
        }
        Config xa = x0_, xb = x0_, xc = x0_, xd = x0_;
        config_entry(xa, v1) += s1, config_entry(xa, v2) += s2;
        config_entry(xb, v1) += s1, config_entry(xb, v2) -= s2;
        config_entry(xc, v1) -= s1, config_entry(xc, v2) += s2;
        config_entry(xd, v1) -= s1, config_entry(xd, v2) -= s2;
        return (eval(xa) - eval(xb) - eval(xc) + eval(xd)) / (4.0 * s1 * s2);
      };
      Cplx m1 = mixed(fp_.h2), m2 = mixed(fp_.h2 / 2);
      contrib = factor * (4.0 * m2 - m1) / 3.0;
    } else {
      throw std::domain_error("operator order above 2");
    }
    acc += contrib;
    maxterm = std::max(maxterm, std::abs(contrib));
  }
  return std::abs(acc) / std::max({std::abs(u0_), maxterm, 1e-300});
}

double FdEngine::homogeneity_exponent(int p) {
  double h = 1e-3;
  auto scaled = [&](double lam) {
    Config x = x0_;
    x[p].a11 *= lam, x[p].a12 *= lam, x[p].a21 *= lam, x[p].a22 *= lam;
    return eval(x);
  };
  Cplx up = scaled(1.0 + h), um = scaled(1.0 - h);
  Cplx l = std::log(up / um);
  return l.real() / std::log((1.0 + h) / (1.0 - h));
}

double FdEngine::equivariance_residual_left(const gen::Mat2<Cplx>& g) {
  Config x = x0_;
  for (int p = 0; p < 4; ++p) x[p] = g * x[p];
  Cplx moved = eval(x);
  Cplx want = u0_ / g.det();
  return std::abs(moved - want) / std::max(std::abs(u0_), 1e-300);
}

double FdEngine::equivariance_residual_right(const gen::Mat2<Cplx>& h) {
  Config x = x0_;
  gen::Mat2<Cplx> ht = h.transpose();
  for (int p = 0; p < 4; ++p) x[p] = x[p] * ht;
  Cplx moved = eval(x);
  Cplx want = u0_ / h.det();
  return std::abs(moved - want) / std::max(std::abs(u0_), 1e-300);
}

double period_rank_evidence(const Config& x, int directions, unsigned seed, const QuadParams& qp) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::array<std::array<Cplx, 8>, 8> m{};
  PeriodEvaluator ev(x, qp);
  for (int i = 0; i < 8; ++i) m[i][0] = period_over_chain(fib::build_gamma(i + 1), ev, qp);
  for (int d = 0; d < directions && d + 1 < 8; ++d) {
    std::array<double, 16> dir;
    double nrm = 0;
    for (auto& v : dir) {
      v = gauss(rng);
      nrm += v * v;
    }
    nrm = std::sqrt(nrm);
    double h = 2e-4;
    Config xp = x, xm = x;
    for (int v = 0; v < 16; ++v) {
      config_entry(xp, v) += h * dir[v] / nrm;
      config_entry(xm, v) -= h * dir[v] / nrm;
    }
    PeriodEvaluator evp(xp, qp), evm(xm, qp);
    for (int i = 0; i < 8; ++i) {
      Cplx up = period_over_chain(fib::build_gamma(i + 1), evp, qp);
      Cplx um = period_over_chain(fib::build_gamma(i + 1), evm, qp);
      m[i][d + 1] = (up - um) / (2.0 * h);
    }
  }
  for (int c = 0; c < 8; ++c) {
    double nrm = 0;
    for (int r = 0; r < 8; ++r) nrm += std::norm(m[r][c]);
    nrm = std::sqrt(std::max(nrm, 1e-300));
    for (int r = 0; r < 8; ++r) m[r][c] /= nrm;
  }
  std::array<double, 8> diag;
  for (int c = 0; c < 8; ++c) {
    for (int prev = 0; prev < c; ++prev) {
      Cplx proj = 0;
      for (int r = 0; r < 8; ++r) proj += std::conj(m[r][prev]) * m[r][c];
      for (int r = 0; r < 8; ++r) m[r][c] -= proj * m[r][prev];
    }
    double nrm = 0;
    for (int r = 0; r < 8; ++r) nrm += std::norm(m[r][c]);
    diag[c] = std::sqrt(nrm);
    if (diag[c] > 1e-300)
      for (int r = 0; r < 8; ++r) m[r][c] /= diag[c];
  }
  double mn = 1e300, mx = 0;
  for (double d : diag) mn = std::min(mn, d), mx = std::max(mx, d);
  return mn / mx;
}

}  // namespace k34h::per
