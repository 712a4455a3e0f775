#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dualgap/enumeration.hpp"
#include "dualgap/model.hpp"
#include "dualgap/pell.hpp"
#include "dualgap/simplex.hpp"
#include "dualgap/witness.hpp"

// Exact minimization of a linear functional over the lattice points of a
// constraint piece (or a union of pieces). Every answer is certified: attained
// minima come with a feasible minimizer, unbounded and infimum-only answers
// with a witness sequence that is re-verified against the ground set before it
// is returned. When an instance falls outside what the closed-form machinery
// can classify, the result says Inconclusive instead of guessing.
//
// Pipeline per piece: scale rational rows to primitive integer form and round
// their right-hand sides, eliminate pinned variables, collapse directions no
// row can see, then dispatch on dimension. Two variables against a single
// irrational boundary line is the interesting case; it reduces to minimizing
//   phi(x) = wx*x + wy*floor(alpha + beta*x)
// over an integer interval, which splits on the sign of sigma = wx + wy*beta.

namespace dualgap {

struct OracleOptions {
  long scan_budget = 2000000;  // max point evaluations in any one scan
  int box_limit = 20;          // search radius for base points
  int prefix = 20;             // witness points re-checked before returning
};

enum class MinKind { Attained, Unbounded, InfimumOnly, Empty, Inconclusive };

inline const char* to_string(MinKind k) {
  switch (k) {
    case MinKind::Attained: return "attained";
    case MinKind::Unbounded: return "unbounded";
    case MinKind::InfimumOnly: return "infimum-only";
    case MinKind::Empty: return "empty";
    default: return "inconclusive";
  }
}

struct MinResult {
  MinKind kind = MinKind::Empty;
  Quad value;                              // Attained and InfimumOnly
  Point minimizer;                         // Attained
  std::optional<WitnessSequence> witness;  // Unbounded and InfimumOnly
  ExtReal best_seen = ExtReal::pos_inf();  // best value of an actual point seen

  static MinResult attained(Quad v, Point x) {
    MinResult r;
    r.kind = MinKind::Attained;
    r.value = std::move(v);
    r.minimizer = std::move(x);
    r.best_seen = ExtReal(r.value);
    return r;
  }
  static MinResult unbounded(WitnessSequence w) {
    MinResult r;
    r.kind = MinKind::Unbounded;
    r.witness = std::move(w);
    r.best_seen = ExtReal::neg_inf();
    return r;
  }
  static MinResult infimum_only(Quad v, WitnessSequence w) {
    MinResult r;
    r.kind = MinKind::InfimumOnly;
    r.value = std::move(v);
    r.witness = std::move(w);
    return r;
  }
  static MinResult empty() { return {}; }
  static MinResult inconclusive(ExtReal best) {
    MinResult r;
    r.kind = MinKind::Inconclusive;
    r.best_seen = std::move(best);
    return r;
  }
};

namespace detail {

// piece being minimized, in reduced coordinates; the invariant is
//   w_ambient . embed(u) == w . u + shift  for every reduced point u
struct Reduced {
  ConstraintSystem cs;
  QVec w;
  Quad shift;
  AffineEmbed embed;
};

inline void substitute(Reduced& R, int j, const BigInt& v) {
  for (Row& r : R.cs.rows) {
    r.rhs -= r.coeffs[j] * Quad(v);
    r.coeffs.erase(r.coeffs.begin() + j);
  }
  R.shift += R.w[j] * Quad(v);
  R.w.erase(R.w.begin() + j);
  for (size_t i = 0; i < R.embed.base.size(); ++i) R.embed.base[i] += R.embed.cols[j][i] * v;
  R.embed.cols.erase(R.embed.cols.begin() + j);
  --R.cs.dim;
}

// Integer points cannot tell a rational row from its primitive integer form
// with the rhs rounded inward, so rewrite the row that way. false = the row
// alone proves the piece empty.
inline bool tighten_integer_row(Row& r) {
  BigInt scale = 1;
  for (const Quad& c : r.coeffs) {
    if (!c.is_rational()) return true;
    scale = boost::multiprecision::lcm(scale, den(c.a()));
  }
  BigInt g = 0;
  for (const Quad& c : r.coeffs)
    g = boost::multiprecision::gcd(g, BigInt(num(c.a()) * (scale / den(c.a()))));
  if (g == 0) return true;  // no variables left in the row
  QVec nc;
  for (const Quad& c : r.coeffs) nc.push_back(Quad(BigInt(num(c.a()) * (scale / den(c.a())) / g)));
  Quad rr = r.rhs * Quad(Rational(scale, g));
  if (r.sense == Sense::Ge) {
    rr = Quad(qceil(rr));
  } else if (r.sense == Sense::Le) {
    rr = Quad(qfloor(rr));
  } else if (!rr.is_rational() || !is_integer(rr.a())) {
    return false;
  }
  r.coeffs = std::move(nc);
  r.rhs = std::move(rr);
  return true;
}

// tighten rows, drop constant rows after checking them, and eliminate
// one-variable equalities until nothing changes; false = proven empty
inline bool normalize(Reduced& R) {
  for (;;) {
    for (Row& r : R.cs.rows)
      if (!tighten_integer_row(r)) return false;
    for (size_t i = 0; i < R.cs.rows.size();) {
      const Row& r = R.cs.rows[i];
      bool allz = true;
      for (const Quad& c : r.coeffs) allz = allz && c.sign() == 0;
      if (!allz) {
        ++i;
        continue;
      }
      int s = (-r.rhs).sign();
      bool ok = r.sense == Sense::Ge ? s >= 0 : r.sense == Sense::Le ? s <= 0 : s == 0;
      if (!ok) return false;
      R.cs.rows.erase(R.cs.rows.begin() + i);
    }
    bool did = false;
    for (size_t i = 0; i < R.cs.rows.size(); ++i) {
      const Row& r = R.cs.rows[i];
      if (r.sense != Sense::Eq) continue;
      int nz = -1, cnt = 0;
      for (int j = 0; j < R.cs.dim; ++j)
        if (r.coeffs[j].sign() != 0) {
          nz = j;
          ++cnt;
        }
      if (cnt != 1) continue;
      Quad v = r.rhs / r.coeffs[nz];
      if (!v.is_rational() || !is_integer(v.a())) return false;
      BigInt iv = num(v.a());
      R.cs.rows.erase(R.cs.rows.begin() + i);
      substitute(R, nz, iv);
      did = true;
      break;
    }
    if (!did) return true;
  }
}

struct Lin1DOut {
  enum class K { Empty, Attained, Unbounded } k = K::Empty;
  BigInt x;
  int dir = 0;
};

inline Lin1DOut min_linear_1d(const Quad& s, const std::optional<BigInt>& lo,
                              const std::optional<BigInt>& hi) {
  if (lo && hi && *lo > *hi) return {};
  int ss = s.sign();
  if (ss > 0) {
    if (lo) return {Lin1DOut::K::Attained, *lo, 0};
    return {Lin1DOut::K::Unbounded, BigInt(0), -1};
  }
  if (ss < 0) {
    if (hi) return {Lin1DOut::K::Attained, *hi, 0};
    return {Lin1DOut::K::Unbounded, BigInt(0), +1};
  }
  return {Lin1DOut::K::Attained, lo ? *lo : (hi ? *hi : BigInt(0)), 0};
}

inline AffineEmbed flip2(int sx, int sy) {
  AffineEmbed e;
  e.base = Point{BigInt(0), BigInt(0)};
  e.cols = {Point{BigInt(sx), BigInt(0)}, Point{BigInt(0), BigInt(sy)}};
  return e;
}

// two variables, bounds plus at most one irrational boundary line
struct TwoVarShape {
  bool empty = false, unsupported = false;
  std::optional<Point> forced;  // an irrational equality pins the point
  std::optional<BigInt> xlo, xhi, ylo, yhi;
  std::optional<std::pair<Quad, Quad>> below, above;  // y <= / >= alpha + beta*x
};

inline TwoVarShape classify_two_var(const ConstraintSystem& cs) {
  TwoVarShape sh;
  auto raise = [](std::optional<BigInt>& b, const BigInt& v) {
    if (!b || v > *b) b = v;
  };
  auto lower = [](std::optional<BigInt>& b, const BigInt& v) {
    if (!b || v < *b) b = v;
  };
  for (const Row& row : cs.rows) {
    const Quad& gx = row.coeffs[0];
    const Quad& gy = row.coeffs[1];
    int sx = gx.sign(), sy = gy.sign();
    if (sx == 0 && sy == 0) continue;  // normalize pruned these
    if (sx == 0 || sy == 0) {
      const Quad& g = sy == 0 ? gx : gy;
      auto& lo = sy == 0 ? sh.xlo : sh.ylo;
      auto& hi = sy == 0 ? sh.xhi : sh.yhi;
      Quad t = row.rhs / g;
      Sense s = row.sense;
      if (g.sign() < 0 && s != Sense::Eq) s = s == Sense::Ge ? Sense::Le : Sense::Ge;
      if (s == Sense::Eq) {
        if (!t.is_rational() || !is_integer(t.a())) {
          sh.empty = true;
          continue;
        }
        raise(lo, num(t.a()));
        lower(hi, num(t.a()));
      } else if (s == Sense::Ge) {
        raise(lo, qceil(t));
      } else {
        lower(hi, qfloor(t));
      }
      continue;
    }
    Quad ratio = gx / gy;
    if (ratio.is_rational()) {
      sh.unsupported = true;  // integer direction off the axes
      continue;
    }
    if (row.sense == Sense::Eq) {
      // rational and surd parts of the row pin the point separately
      Rational det = gx.a() * gy.b() - gy.a() * gx.b();
      if (det == 0) throw PreconditionError("two-var classify: degenerate equality");
      Rational xs = (row.rhs.a() * gy.b() - gy.a() * row.rhs.b()) / det;
      Rational ys = (gx.a() * row.rhs.b() - row.rhs.a() * gx.b()) / det;
      if (!is_integer(xs) || !is_integer(ys)) {
        sh.empty = true;
        continue;
      }
      if (!sh.forced) sh.forced = Point{num(xs), num(ys)};
      continue;
    }
    Quad alpha = row.rhs / gy;
    Quad beta = -gx / gy;
    bool upper = (row.sense == Sense::Ge) == (sy > 0);
    auto& slot = upper ? sh.above : sh.below;
    if (!slot) {
      slot.emplace(std::move(alpha), std::move(beta));
    } else if (slot->second == beta) {
      // parallel, keep the tighter offset
      if (upper) {
        if (alpha > slot->first) slot->first = alpha;
      } else if (alpha < slot->first) {
        slot->first = alpha;
      }
    } else {
      sh.unsupported = true;
    }
  }
  return sh;
}

// minimize wx*x + wy*floor(alpha + beta*x); bounds of the original state are
// dealt with by the caller, core paths only see the interval they pass down
struct EngineState {
  Quad wx, wy, alpha, beta, shift;
  std::optional<BigInt> xlo, xhi, ylo, yhi;
  AffineEmbed embed;
};

inline BigInt line_floor(const EngineState& S, const BigInt& x) {
  return qfloor(S.alpha + S.beta * Quad(x));
}

inline EngineState mirror_x(const EngineState& S) {
  EngineState M = S;
  M.wx = -S.wx;
  M.beta = -S.beta;
  M.embed = S.embed.compose(flip2(-1, 1));
  M.xlo.reset();
  M.xhi.reset();
  return M;
}

// exact scan of phi over [lo, hi], pruned with phi(x) >= sigma*x + wy*alpha
inline MinResult scan_floor_line(const EngineState& S, const BigInt& lo, const BigInt& hi,
                                 const OracleOptions& opt) {
  Quad sigma = S.wx + S.wy * S.beta;
  int dir = sigma.sign() >= 0 ? 1 : -1;
  std::optional<Quad> best;
  BigInt bx, by;
  long used = 0;
  for (BigInt x = dir > 0 ? lo : hi; x >= lo && x <= hi; x += dir) {
    if (best && !(sigma * Quad(x) + S.wy * S.alpha < *best)) break;
    if (++used > opt.scan_budget) return MinResult::inconclusive(ExtReal(*best + S.shift));
    BigInt y = line_floor(S, x);
    Quad v = S.wx * Quad(x) + S.wy * Quad(y);
    if (!best || v < *best) {
      best = v;
      bx = x;
      by = y;
    }
  }
  return MinResult::attained(*best + S.shift, S.embed.apply({bx, by}));
}

// wy < 0 and x runs to +infinity (L absent means all of Z)
inline MinResult core_min(const EngineState& S, const std::optional<BigInt>& L,
                          const OracleOptions& opt) {
  Quad sigma = S.wx + S.wy * S.beta;
  int ss = sigma.sign();
  if (ss < 0) {
    // stepping by T drops phi by at most sigma*T + |wy| < 0 every time
    BigInt stride = qfloor(abs(S.wy) / -sigma) + 1;
    return MinResult::unbounded(
        WitnessSequence(FloorLineGen{L ? *L : BigInt(0), stride, S.alpha, S.beta}, S.embed));
  }
  if (ss > 0) {
    if (!L) return core_min(mirror_x(S), std::nullopt, opt);
    Quad u = S.wx * Quad(*L) + S.wy * Quad(line_floor(S, *L));
    BigInt cut = qfloor((u - S.wy * S.alpha) / sigma);
    return scan_floor_line(S, *L, cut, opt);
  }
  // sigma == 0: phi = wy*alpha + |wy| * frac(alpha + beta*x); the infimum is
  // wy*alpha, met exactly only where the line passes through a lattice point
  Rational xc = -S.alpha.b() / S.beta.b();
  if (is_integer(xc)) {
    BigInt xi = num(xc);
    Rational yr = S.alpha.a() + S.beta.a() * xc;
    if (is_integer(yr) && (!L || xi >= *L)) {
      BigInt yi = num(yr);
      return MinResult::attained(S.wx * Quad(xi) + S.wy * Quad(yi) + S.shift,
                                 S.embed.apply({xi, yi}));
    }
  }
  if (S.beta.d() == 2 && S.beta.a() == 0 && S.alpha.is_rational() && is_integer(S.alpha.a())) {
    // beta = (s1/s2)*sqrt(2): ride x = s2*q along the convergents p/q whose
    // error delta = p - sqrt(2)q has the sign that puts s1*p just above the
    // line, so frac(beta*x) = |s1*delta| sinks to 0 without ever landing
    BigInt s1 = num(S.beta.b()), s2 = den(S.beta.b());
    int parity = s1 > 0 ? 0 : 1;
    auto cv = pell_convergents(160);
    Quad root = Quad::sqrt_of(2);
    int first = -1;
    for (int k = parity; k < 160; k += 2) {
      Quad delta = Quad(cv[k].p) - root * Quad(cv[k].q);
      if (!(abs(Quad(s1) * delta) < Quad(1))) continue;
      if (L && s2 * cv[k].q < *L) continue;
      first = k;
      break;
    }
    if (first >= 0) {
      BigInt a0 = num(S.alpha.a());
      PellGen gen{Point{BigInt(0), a0}, Point{s2, BigInt(0)}, Point{BigInt(0), s1}, parity,
                  first};
      MinResult r =
          MinResult::infimum_only(S.wy * S.alpha + S.shift, WitnessSequence(gen, S.embed));
      BigInt x0 = s2 * cv[first].q, y0 = a0 + s1 * cv[first].p;
      r.best_seen = ExtReal(S.wx * Quad(x0) + S.wy * Quad(y0) + S.shift);
      return r;
    }
  }
  // out of reach for the closed forms; sample a window and admit it
  BigInt x = L ? *L : BigInt(-5000);
  long n = opt.scan_budget < 10000 ? opt.scan_budget : 10000;
  std::optional<Quad> best;
  for (long i = 0; i < n; ++i, ++x) {
    Quad v = S.wx * Quad(x) + S.wy * Quad(line_floor(S, x));
    if (!best || v < *best) best = v;
  }
  return MinResult::inconclusive(best ? ExtReal(*best + S.shift) : ExtReal::pos_inf());
}

inline ExtReal optimistic(const MinResult& r) {
  switch (r.kind) {
    case MinKind::Attained: return ExtReal(r.value);
    case MinKind::Unbounded: return ExtReal::neg_inf();
    case MinKind::Empty: return ExtReal::pos_inf();
    default: return r.best_seen;
  }
}

inline MinResult combine_results(const MinResult& a, const MinResult& b) {
  if (a.kind == MinKind::Unbounded) return a;
  if (b.kind == MinKind::Unbounded) return b;
  if (a.kind == MinKind::Empty) return b;
  if (b.kind == MinKind::Empty) return a;
  if (a.kind == MinKind::Inconclusive || b.kind == MinKind::Inconclusive) {
    ExtReal x = optimistic(a), y = optimistic(b);
    return MinResult::inconclusive(x < y ? x : y);
  }
  if (a.kind == MinKind::Attained && b.kind == MinKind::Attained)
    return a.value <= b.value ? a : b;
  if (a.kind == MinKind::Attained) return a.value <= b.value ? a : b;
  if (b.kind == MinKind::Attained) return b.value <= a.value ? b : a;
  return a.value <= b.value ? a : b;  // both approach, smaller limit wins
}

inline MinResult box_min(const Reduced& R, const TwoVarShape& sh) {
  const std::optional<BigInt> lows[2] = {sh.xlo, sh.ylo};
  const std::optional<BigInt> his[2] = {sh.xhi, sh.yhi};
  for (int i = 0; i < 2; ++i)
    if (lows[i] && his[i] && *lows[i] > *his[i]) return MinResult::empty();
  Point base(2), best(2);
  for (int i = 0; i < 2; ++i) base[i] = lows[i] ? *lows[i] : (his[i] ? *his[i] : BigInt(0));
  for (int i = 0; i < 2; ++i) {
    Lin1DOut r = min_linear_1d(R.w[i], lows[i], his[i]);
    if (r.k == Lin1DOut::K::Unbounded) {
      Point step(2, BigInt(0));
      step[i] = r.dir;
      return MinResult::unbounded(WitnessSequence(RayGen{base, step}, R.embed));
    }
    best[i] = r.x;
  }
  return MinResult::attained(dot(R.w, best) + R.shift, R.embed.apply(best));
}

inline MinResult engine_below(EngineState S, const OracleOptions& opt) {
  if (S.ylo && S.yhi && *S.ylo > *S.yhi) return MinResult::empty();
  std::optional<BigInt> L = S.xlo, H = S.xhi;
  if (S.ylo) {
    // x must keep floor(alpha + beta*x) >= ylo
    Quad cross = (Quad(*S.ylo) - S.alpha) / S.beta;
    if (S.beta.sign() > 0) {
      BigInt v = qceil(cross);
      if (!L || v > *L) L = v;
    } else {
      BigInt v = qfloor(cross);
      if (!H || v < *H) H = v;
    }
  }
  if (L && H && *L > *H) return MinResult::empty();

  auto top_y = [&](const BigInt& x) {
    BigInt y = line_floor(S, x);
    if (S.yhi && *S.yhi < y) y = *S.yhi;
    return y;
  };
  int sy = S.wy.sign();

  if (sy > 0) {
    if (!S.ylo) {
      BigInt xb = L ? *L : (H ? *H : BigInt(0));
      return MinResult::unbounded(
          WitnessSequence(RayGen{Point{xb, top_y(xb)}, Point{BigInt(0), BigInt(-1)}}, S.embed));
    }
    Lin1DOut r = min_linear_1d(S.wx, L, H);
    if (r.k == Lin1DOut::K::Attained)
      return MinResult::attained(S.wx * Quad(r.x) + S.wy * Quad(*S.ylo) + S.shift,
                                 S.embed.apply({r.x, *S.ylo}));
    BigInt xb = r.dir < 0 ? (H ? *H : BigInt(0)) : (L ? *L : BigInt(0));
    return MinResult::unbounded(
        WitnessSequence(RayGen{Point{xb, *S.ylo}, Point{BigInt(r.dir), BigInt(0)}}, S.embed));
  }

  if (sy == 0) {
    Lin1DOut r = min_linear_1d(S.wx, L, H);
    if (r.k == Lin1DOut::K::Attained)
      return MinResult::attained(S.wx * Quad(r.x) + S.shift, S.embed.apply({r.x, top_y(r.x)}));
    BigInt xb = r.dir < 0 ? (H ? *H : BigInt(0)) : (L ? *L : BigInt(0));
    BigInt ystep(0);
    // moving against the slope the fixed y would poke out; step y down along
    if (r.dir > 0 && S.beta.sign() < 0) ystep = qfloor(S.beta);
    if (r.dir < 0 && S.beta.sign() > 0) ystep = qfloor(-S.beta);
    return MinResult::unbounded(
        WitnessSequence(RayGen{Point{xb, top_y(xb)}, Point{BigInt(r.dir), ystep}}, S.embed));
  }

  // wy < 0: worth paying for every unit of roof; split where the roof meets yhi
  MinResult acc = MinResult::empty();
  std::optional<BigInt> lL = L, lH = H;
  if (S.yhi) {
    Quad cross = (Quad(BigInt(*S.yhi + 1)) - S.alpha) / S.beta;
    std::optional<BigInt> cL = L, cH = H;
    if (S.beta.sign() > 0) {
      BigInt v = qceil(cross);
      if (!cL || v > *cL) cL = v;
      BigInt m = v - 1;
      if (!lH || m < *lH) lH = m;
    } else {
      BigInt v = qfloor(cross);
      if (!cH || v < *cH) cH = v;
      BigInt m = v + 1;
      if (!lL || m > *lL) lL = m;
    }
    if (!(cL && cH && *cL > *cH)) {
      Lin1DOut r = min_linear_1d(S.wx, cL, cH);
      if (r.k == Lin1DOut::K::Attained) {
        acc = MinResult::attained(S.wx * Quad(r.x) + S.wy * Quad(*S.yhi) + S.shift,
                                  S.embed.apply({r.x, *S.yhi}));
      } else if (r.k == Lin1DOut::K::Unbounded) {
        BigInt xb = r.dir < 0 ? (cH ? *cH : BigInt(0)) : (cL ? *cL : BigInt(0));
        return MinResult::unbounded(
            WitnessSequence(RayGen{Point{xb, *S.yhi}, Point{BigInt(r.dir), BigInt(0)}}, S.embed));
      }
    }
  }
  MinResult lineres;
  if (lL && lH) {
    lineres = *lL > *lH ? MinResult::empty() : scan_floor_line(S, *lL, *lH, opt);
  } else if (lL) {
    lineres = core_min(S, lL, opt);
  } else if (lH) {
    lineres = core_min(mirror_x(S), std::optional<BigInt>(BigInt(-*lH)), opt);
  } else {
    lineres = core_min(S, std::nullopt, opt);
  }
  return combine_results(acc, lineres);
}

inline std::optional<MinResult> two_var_min(const Reduced& R, const OracleOptions& opt) {
  TwoVarShape sh = classify_two_var(R.cs);
  if (sh.empty) return MinResult::empty();
  if (sh.unsupported) return std::nullopt;
  if (sh.forced) {
    const Point& p = *sh.forced;
    if (!in_piece(R.cs, p)) return MinResult::empty();
    return MinResult::attained(dot(R.w, p) + R.shift, R.embed.apply(p));
  }
  if (!sh.below && !sh.above) return box_min(R, sh);
  if (sh.below && sh.above) return std::nullopt;  // slab between two lines
  EngineState S;
  S.shift = R.shift;
  if (sh.below) {
    S.wx = R.w[0];
    S.wy = R.w[1];
    S.alpha = sh.below->first;
    S.beta = sh.below->second;
    S.xlo = sh.xlo;
    S.xhi = sh.xhi;
    S.ylo = sh.ylo;
    S.yhi = sh.yhi;
    S.embed = R.embed;
  } else {
    // flip y to turn the floor into a roof
    S.wx = R.w[0];
    S.wy = -R.w[1];
    S.alpha = -sh.above->first;
    S.beta = -sh.above->second;
    S.xlo = sh.xlo;
    S.xhi = sh.xhi;
    if (sh.yhi) S.ylo = BigInt(-*sh.yhi);
    if (sh.ylo) S.yhi = BigInt(-*sh.ylo);
    S.embed = R.embed.compose(flip2(1, -1));
  }
  return engine_below(std::move(S), opt);
}

inline MinResult solve_1d(const Reduced& R) {
  std::optional<BigInt> lo, hi;
  for (const Row& r : R.cs.rows) {
    const Quad& g = r.coeffs[0];
    if (g.sign() == 0) continue;
    Quad t = r.rhs / g;
    Sense s = r.sense;
    if (g.sign() < 0 && s != Sense::Eq) s = s == Sense::Ge ? Sense::Le : Sense::Ge;
    if (s == Sense::Eq) {
      if (!t.is_rational() || !is_integer(t.a())) return MinResult::empty();
      BigInt v = num(t.a());
      if (!lo || v > *lo) lo = v;
      if (!hi || v < *hi) hi = v;
    } else if (s == Sense::Ge) {
      BigInt v = qceil(t);
      if (!lo || v > *lo) lo = v;
    } else {
      BigInt v = qfloor(t);
      if (!hi || v < *hi) hi = v;
    }
  }
  Lin1DOut r = min_linear_1d(R.w[0], lo, hi);
  if (r.k == Lin1DOut::K::Empty) return MinResult::empty();
  if (r.k == Lin1DOut::K::Attained)
    return MinResult::attained(R.w[0] * Quad(r.x) + R.shift, R.embed.apply({r.x}));
  BigInt xb = r.dir < 0 ? (hi ? *hi : BigInt(0)) : (lo ? *lo : BigInt(0));
  return MinResult::unbounded(WitnessSequence(RayGen{Point{xb}, Point{BigInt(r.dir)}}, R.embed));
}

inline bool is_system_kernel(const ConstraintSystem& cs, const Point& k) {
  for (const Row& r : cs.rows)
    if (dot(r.coeffs, k).sign() != 0) return false;
  return true;
}

// lattice direction every row ignores and the objective strictly dislikes
inline std::optional<Point> kernel_descent(const Reduced& R) {
  for (int radius : {2, 12}) {
    Point k(R.cs.dim, BigInt(-radius));
    for (;;) {
      bool zero = true;
      for (const BigInt& v : k) zero = zero && v == 0;
      if (!zero && is_system_kernel(R.cs, k)) {
        int ws = dot(R.w, k).sign();
        if (ws != 0) {
          Point out = k;
          if (ws > 0)
            for (BigInt& v : out) v = -v;
          return out;
        }
      }
      int i = R.cs.dim - 1;
      while (i >= 0) {
        if (k[i] < radius) {
          ++k[i];
          break;
        }
        k[i] = -radius;
        --i;
      }
      if (i < 0) break;
    }
  }
  return std::nullopt;
}

// drop a coordinate along a unit-component kernel direction the objective
// cannot see; every fiber then has a representative with that coordinate 0
inline bool collapse_free_direction(Reduced& R) {
  for (int radius : {2, 12}) {
    Point k(R.cs.dim, BigInt(-radius));
    for (;;) {
      bool zero = true;
      for (const BigInt& v : k) zero = zero && v == 0;
      if (!zero && is_system_kernel(R.cs, k) && dot(R.w, k).sign() == 0) {
        for (int j = 0; j < R.cs.dim; ++j) {
          if (k[j] != 1 && k[j] != -1) continue;
          for (Row& r : R.cs.rows) r.coeffs.erase(r.coeffs.begin() + j);
          R.w.erase(R.w.begin() + j);
          AffineEmbed ins;
          ins.base.assign(R.cs.dim, BigInt(0));
          for (int c = 0; c < R.cs.dim; ++c) {
            if (c == j) continue;
            Point col(R.cs.dim, BigInt(0));
            col[c] = 1;
            ins.cols.push_back(col);
          }
          R.embed = R.embed.compose(ins);
          --R.cs.dim;
          return true;
        }
      }
      int i = R.cs.dim - 1;
      while (i >= 0) {
        if (k[i] < radius) {
          ++k[i];
          break;
        }
        k[i] = -radius;
        --i;
      }
      if (i < 0) break;
    }
  }
  return false;
}

inline MinResult reduce_min(Reduced R, const OracleOptions& opt) {
  if (!normalize(R)) return MinResult::empty();
  if (R.cs.dim == 0) return MinResult::attained(R.shift, R.embed.base);

  LP lp;
  lp.n = R.cs.dim;
  lp.c = R.w;
  lp.rows = R.cs.rows;
  lp.nonneg.assign(R.cs.dim, false);
  LPResult lr = solve_lp(lp);
  if (lr.status == LPStatus::Infeasible) return MinResult::empty();
  if (lr.status == LPStatus::Optimal) {
    // a lattice point on an optimal LP vertex settles it outright
    Point p;
    bool integral = true;
    for (const Quad& xi : lr.x) {
      if (xi.is_rational() && is_integer(xi.a())) {
        p.push_back(num(xi.a()));
      } else {
        integral = false;
        break;
      }
    }
    if (integral && in_piece(R.cs, p))
      return MinResult::attained(lr.value + R.shift, R.embed.apply(p));
  }

  if (R.cs.dim == 1) return solve_1d(R);

  if (R.cs.dim >= 3) {
    if (auto ray = kernel_descent(R)) {
      if (auto base = find_lattice_point(R.cs, opt.box_limit))
        return MinResult::unbounded(WitnessSequence(RayGen{*base, *ray}, R.embed));
    }
    if (collapse_free_direction(R)) return reduce_min(std::move(R), opt);
  }

  ExtReal seen = ExtReal::pos_inf();
  if (R.cs.dim == 2) {
    if (auto res = two_var_min(R, opt)) {
      if (res->kind != MinKind::Inconclusive) return *res;
      seen = res->best_seen;
    }
  }

  // last resorts: enumerate a certified box, else hunt for a descent ray
  if (auto box = certified_box(R.cs)) {
    BigInt cells = box->cell_count();
    if (cells == 0) return MinResult::empty();
    if (cells <= opt.scan_budget) {
      std::optional<Quad> best;
      Point bp, p = box->lo;
      for (;;) {
        if (in_piece(R.cs, p)) {
          Quad v = dot(R.w, p);
          if (!best || v < *best) {
            best = v;
            bp = p;
          }
        }
        int i = R.cs.dim - 1;
        while (i >= 0) {
          if (p[i] < box->hi[i]) {
            ++p[i];
            break;
          }
          p[i] = box->lo[i];
          --i;
        }
        if (i < 0) break;
      }
      if (!best) return MinResult::empty();
      return MinResult::attained(*best + R.shift, R.embed.apply(bp));
    }
  } else if (auto base = find_lattice_point(R.cs, opt.box_limit)) {
    if (auto ray = integer_descent_ray(R.cs, R.w))
      return MinResult::unbounded(WitnessSequence(RayGen{*base, *ray}, R.embed));
    Quad v = dot(R.w, *base) + R.shift;
    if (ExtReal(v) < seen) seen = ExtReal(v);
  }
  return MinResult::inconclusive(seen);
}

inline void check_result(const LatticeSetSpec& X, const QVec& w, const MinResult& r,
                         const OracleOptions& opt) {
  if (r.kind == MinKind::Attained) {
    if (!in_lattice(X, r.minimizer))
      throw PreconditionError("minimize: minimizer leaves the ground set");
    if (dot(w, r.minimizer) != r.value)
      throw PreconditionError("minimize: minimizer value mismatch");
    return;
  }
  if (!r.witness) return;
  auto lim = r.witness->limit_of(w);
  if (r.kind == MinKind::Unbounded) {
    if (!lim || !lim->is_neg_inf())
      throw PreconditionError("minimize: claimed divergence does not check out");
  } else if (!lim || !lim->is_finite() || lim->value() != r.value) {
    throw PreconditionError("minimize: witness limit disagrees with claimed infimum");
  }
  std::optional<Quad> prev;
  for (const Point& p : r.witness->points(opt.prefix)) {
    if (!in_lattice(X, p)) throw PreconditionError("minimize: witness point leaves the ground set");
    Quad v = dot(w, p);
    if (prev && !(v < *prev)) throw PreconditionError("minimize: witness values fail to decrease");
    if (r.kind == MinKind::InfimumOnly && !(v > r.value))
      throw PreconditionError("minimize: witness value at or below the claimed infimum");
    prev = std::move(v);
  }
}

}  // namespace detail

// min w.x over the lattice set
inline MinResult linear_min(const LatticeSetSpec& X, const QVec& w, const OracleOptions& opt = {}) {
  if (static_cast<int>(w.size()) != X.dim) throw DimensionError("linear_min: weight size");
  MinResult acc = MinResult::empty();
  if (X.kind == LatticeSetSpec::Kind::FiniteList) {
    for (const Point& p : X.points) {
      if (!nonneg_ok(X, p)) continue;
      acc = detail::combine_results(acc, MinResult::attained(dot(w, p), p));
    }
    return acc;
  }
  for (size_t i = 0; i < X.pieces.size(); ++i) {
    detail::Reduced R;
    R.cs = piece_with_flags(X, i);
    R.w = w;
    R.embed = AffineEmbed::identity(X.dim);
    acc = detail::combine_results(acc, detail::reduce_min(std::move(R), opt));
  }
  detail::check_result(X, w, acc, opt);
  return acc;
}

// One canonical line-hugging sequence per piece whose roof is an integer
// offset plus a positive multiple of sqrt(2) and whose x range is unbounded
// to the right: the points creep up under the roof with gap sinking to 0.
// Objective-independent, so callers can take limits of whatever they like.
inline std::vector<WitnessSequence> hugging_sequences(const LatticeSetSpec& X,
                                                      const OracleOptions& opt = {}) {
  std::vector<WitnessSequence> out;
  (void)opt;
  if (X.kind == LatticeSetSpec::Kind::FiniteList) return out;
  for (size_t i = 0; i < X.pieces.size(); ++i) {
    detail::Reduced R;
    R.cs = piece_with_flags(X, i);
    R.w.assign(X.dim, Quad(0));
    R.embed = AffineEmbed::identity(X.dim);
    if (!detail::normalize(R)) continue;
    while (R.cs.dim > 2 && detail::collapse_free_direction(R)) {
    }
    if (R.cs.dim != 2) continue;
    detail::TwoVarShape sh = detail::classify_two_var(R.cs);
    if (sh.empty || sh.unsupported || sh.forced || !sh.below || sh.above) continue;
    if (sh.xhi || sh.yhi) continue;
    const Quad& alpha = sh.below->first;
    const Quad& beta = sh.below->second;
    if (!(beta.d() == 2 && beta.a() == 0 && beta.b() > 0)) continue;
    if (!(alpha.is_rational() && is_integer(alpha.a()))) continue;
    std::optional<BigInt> L = sh.xlo;
    if (sh.ylo) {
      BigInt v = qceil((Quad(*sh.ylo) - alpha) / beta);
      if (!L || v > *L) L = v;
    }
    BigInt s1 = num(beta.b()), s2 = den(beta.b());
    auto cv = pell_convergents(160);
    Quad root = Quad::sqrt_of(2);
    int first = -1;
    for (int k = 0; k < 160; k += 2) {
      Quad delta = Quad(cv[k].p) - root * Quad(cv[k].q);
      if (!(abs(Quad(s1) * delta) < Quad(1))) continue;
      if (L && s2 * cv[k].q < *L) continue;
      first = k;
      break;
    }
    if (first < 0) continue;
    PellGen gen{Point{BigInt(0), num(alpha.a())}, Point{s2, BigInt(0)}, Point{BigInt(0), s1}, 0,
                first};
    WitnessSequence ws(gen, R.embed);
    for (const Point& p : ws.points(8))
      if (!in_lattice(X, p)) throw PreconditionError("hugging: point leaves the ground set");
    out.push_back(std::move(ws));
  }
  return out;
}

}  // namespace dualgap
