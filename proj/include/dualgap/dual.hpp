#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dualgap/lattice_min.hpp"
#include "dualgap/model.hpp"

// The dual side: G(lambda) = lambda.b + inf{(c - At lambda).x : x in X} and
// its supremum v^L over the admissible multipliers (>= 0 for Ge rows, <= 0
// for Le rows, free for Eq rows). G is concave; every evaluation is exact,
// and a bound is only marked Certified when a finite family of evaluations
// pins the supremum: a zero supergradient, a projected-ascent fixpoint, a
// witness sequence that forces G identically -inf, or a sequence whose limit
// matches the best value seen from below.

namespace dualgap {

struct DualEval {
  QVec lambda;
  ExtReal value;           // exact G when certified, else only an upper bound
  bool certified = false;  // false iff the inner minimization was inconclusive
  MinKind inner = MinKind::Empty;
  std::optional<Point> minimizer;         // present iff inner attained
  std::optional<QVec> supergradient;      // b - A.x* alongside the minimizer
  std::optional<WitnessSequence> certificate;
};

enum class BoundStatus { Certified, BestEffort };

inline const char* to_string(BoundStatus s) {
  return s == BoundStatus::Certified ? "certified" : "best-effort";
}

struct DualBound {
  ExtReal v_L = ExtReal::neg_inf();
  std::optional<QVec> best_lambda;
  BoundStatus status = BoundStatus::BestEffort;
  std::vector<DualEval> trace;
};

inline DualEval eval_G(const Problem& p, const QVec& lambda, const OracleOptions& opt = {}) {
  const auto& rows = p.coupling.rows;
  const int m = static_cast<int>(rows.size());
  if (static_cast<int>(lambda.size()) != m) throw DimensionError("eval_G: multiplier count");
  for (int i = 0; i < m; ++i) {
    if (rows[i].sense == Sense::Ge && lambda[i].sign() < 0)
      throw DomainError("eval_G: multiplier for a >= row must be >= 0");
    if (rows[i].sense == Sense::Le && lambda[i].sign() > 0)
      throw DomainError("eval_G: multiplier for a <= row must be <= 0");
  }
  QVec w = p.objective;
  Quad shift;
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < p.n; ++j) w[j] -= lambda[i] * rows[i].coeffs[j];
    shift += lambda[i] * rows[i].rhs;
  }
  MinResult inner = linear_min(p.lattice, w, opt);
  DualEval ev;
  ev.lambda = lambda;
  ev.inner = inner.kind;
  switch (inner.kind) {
    case MinKind::Attained: {
      ev.value = ExtReal(shift + inner.value);
      ev.certified = true;
      ev.minimizer = inner.minimizer;
      QVec g;
      for (int i = 0; i < m; ++i)
        g.push_back(rows[i].rhs - dot(rows[i].coeffs, inner.minimizer));
      ev.supergradient = std::move(g);
      break;
    }
    case MinKind::Unbounded:
      ev.value = ExtReal::neg_inf();
      ev.certified = true;
      ev.certificate = inner.witness;
      break;
    case MinKind::InfimumOnly:
      ev.value = ExtReal(shift + inner.value);
      ev.certified = true;
      ev.certificate = inner.witness;
      break;
    case MinKind::Empty:
      ev.value = ExtReal::pos_inf();  // no feasible point at all
      ev.certified = true;
      break;
    default:
      // the inner search saw a real point, so this is a true upper bound on G
      ev.value = inner.best_seen.is_finite() ? ExtReal(shift + inner.best_seen.value())
                                             : inner.best_seen;
      ev.certified = false;
  }
  return ev;
}

// True when one sequence forces G(lambda) = -inf for every admissible lambda:
// the objective diverges downward while each penalty term stays bounded above
// for the multiplier signs its row allows.
inline bool kills_every_lambda(const Problem& p, const WitnessSequence& ws) {
  if (ws.growth_rate(p.objective).sign() >= 0) return false;
  for (const Row& r : p.coupling.rows) {
    int s = ws.growth_rate(r.coeffs).sign();
    if (r.sense == Sense::Ge && s < 0) return false;
    if (r.sense == Sense::Le && s > 0) return false;
    if (r.sense == Sense::Eq && s != 0) return false;
  }
  return true;
}

// When every coupling limit along the sequence lands on the feasible side,
// every penalty contributes at most 0 in the limit and
//   sup_lambda G(lambda) <= lim c.x_k.
inline std::optional<ExtReal> lambda_free_upper_bound(const Problem& p,
                                                      const WitnessSequence& ws) {
  for (const Row& r : p.coupling.rows) {
    auto l = ws.limit_of(r.coeffs);
    if (!l) return std::nullopt;
    ExtReal rhs{r.rhs};
    if (r.sense == Sense::Ge && *l < rhs) return std::nullopt;
    if (r.sense == Sense::Le && *l > rhs) return std::nullopt;
    if (r.sense == Sense::Eq && *l != rhs) return std::nullopt;
  }
  return ws.limit_of(p.objective);
}

namespace detail {

inline void record(DualBound& out, const DualEval& ev) {
  out.trace.push_back(ev);
  if (ev.certified && !ev.value.is_pos_inf() && ev.value > out.v_L) {
    out.v_L = ev.value;
    out.best_lambda = ev.lambda;
  }
}

inline bool zero_vec(const QVec& v) {
  for (const Quad& q : v)
    if (q.sign() != 0) return false;
  return true;
}

}  // namespace detail

struct Interval {
  Quad lo, hi;
};

// One multiplier: geometric grid, identically-(-inf) detection, supergradient
// bisection, and the constant-G pattern where an infimum-only certificate
// shows the sampled value cannot be improved.
inline DualBound maximize_dual_1d(const Problem& p, std::optional<Interval> domain_hint = {},
                                  Quad tolerance = Quad(Rational(1, 1 << 20)),
                                  const OracleOptions& opt = {}) {
  if (p.coupling.rows.size() != 1)
    throw UnsupportedError("maximize_dual_1d: needs exactly one coupling row");
  Sense sense = p.coupling.rows[0].sense;
  DualBound out;

  std::vector<Quad> grid{Quad(0)};
  for (int k = -4; k <= 8; ++k) {
    Quad mag =
        k >= 0 ? Quad(BigInt(BigInt(1) << k)) : Quad(Rational(BigInt(1), BigInt(BigInt(1) << -k)));
    if (sense != Sense::Le) grid.push_back(mag);
    if (sense != Sense::Ge) grid.push_back(-mag);
  }
  if (domain_hint) {
    std::vector<Quad> clipped;
    for (const Quad& g : grid)
      if (!(g < domain_hint->lo) && !(g > domain_hint->hi)) clipped.push_back(g);
    for (Quad endp : {domain_hint->lo, domain_hint->hi}) {
      if (sense == Sense::Ge && endp.sign() < 0) endp = Quad(0);
      if (sense == Sense::Le && endp.sign() > 0) endp = Quad(0);
      bool seen = false;
      for (const Quad& g : clipped) seen = seen || g == endp;
      if (!seen) clipped.push_back(endp);
    }
    grid = std::move(clipped);
  }

  bool all_neg_inf = true;
  for (const Quad& lam : grid) {
    DualEval ev = eval_G(p, {lam}, opt);
    detail::record(out, ev);
    if (ev.inner == MinKind::Empty) {
      // empty ground set: G is +inf everywhere
      out.v_L = ExtReal::pos_inf();
      out.best_lambda = ev.lambda;
      out.status = BoundStatus::Certified;
      return out;
    }
    if (ev.certified && ev.supergradient && detail::zero_vec(*ev.supergradient)) {
      // 0 is a supergradient: lambda is a global maximizer of a concave G
      out.status = BoundStatus::Certified;
      return out;
    }
    if (ev.inner == MinKind::Unbounded && ev.certificate &&
        kills_every_lambda(p, *ev.certificate)) {
      out.v_L = ExtReal::neg_inf();
      out.best_lambda = ev.lambda;
      out.status = BoundStatus::Certified;
      return out;
    }
    if (!(ev.certified && ev.value.is_neg_inf())) all_neg_inf = false;
  }
  if (all_neg_inf) return out;  // every sample -inf but none lambda-free: best effort

  // a sequence limit meeting the best sampled value pins the supremum
  for (const DualEval& ev : out.trace) {
    if (ev.inner != MinKind::InfimumOnly || !ev.certificate) continue;
    auto ub = lambda_free_upper_bound(p, *ev.certificate);
    if (ub && *ub == out.v_L) {
      out.status = BoundStatus::Certified;
      return out;
    }
  }

  // bracket a sign change of the supergradient and bisect
  std::optional<Quad> lo, hi;
  for (const DualEval& ev : out.trace) {
    if (!ev.supergradient) continue;
    int s = (*ev.supergradient)[0].sign();
    if (s > 0 && (!lo || ev.lambda[0] > *lo)) lo = ev.lambda[0];
    if (s < 0 && (!hi || ev.lambda[0] < *hi)) hi = ev.lambda[0];
  }
  if (lo && hi && *lo < *hi) {
    for (int it = 0; it < 64 && *hi - *lo > tolerance; ++it) {
      Quad mid = (*lo + *hi) / Quad(2);
      DualEval ev = eval_G(p, {mid}, opt);
      detail::record(out, ev);
      if (!ev.supergradient) break;
      int s = (*ev.supergradient)[0].sign();
      if (s == 0) {
        out.status = BoundStatus::Certified;
        return out;
      }
      (s > 0 ? lo : hi) = mid;
    }
  }
  return out;
}

// Projected supergradient ascent with the diminishing schedule t_k = t0/ceil
// of sqrt(k). Unbounded evaluations steer by the negated growth rates of the
// penalty rows; a projection fixpoint under an exact supergradient certifies.
inline DualBound maximize_dual_nd(const Problem& p, int steps = 500,
                                  Rational t0 = Rational(1), const OracleOptions& opt = {}) {
  const auto& rows = p.coupling.rows;
  const int m = static_cast<int>(rows.size());
  DualBound out;
  QVec lam(m, Quad(0));
  auto project = [&](QVec& l) {
    for (int i = 0; i < m; ++i) {
      if (rows[i].sense == Sense::Ge && l[i].sign() < 0) l[i] = Quad(0);
      if (rows[i].sense == Sense::Le && l[i].sign() > 0) l[i] = Quad(0);
    }
  };
  for (int k = 1; k <= steps; ++k) {
    DualEval ev = eval_G(p, lam, opt);
    detail::record(out, ev);
    if (!ev.certified) break;  // inconclusive inner: nothing to steer by
    if (ev.value.is_pos_inf()) {
      // empty ground set: G is +inf everywhere
      out.v_L = ExtReal::pos_inf();
      out.best_lambda = lam;
      out.status = BoundStatus::Certified;
      return out;
    }
    QVec dir;
    if (ev.supergradient) {
      dir = *ev.supergradient;
    } else if (ev.inner == MinKind::Unbounded && ev.certificate) {
      if (kills_every_lambda(p, *ev.certificate)) {
        out.v_L = ExtReal::neg_inf();
        out.best_lambda = lam;
        out.status = BoundStatus::Certified;
        return out;
      }
      for (const Row& r : rows) dir.push_back(-ev.certificate->growth_rate(r.coeffs));
    } else if (ev.inner == MinKind::InfimumOnly && ev.certificate) {
      auto ub = lambda_free_upper_bound(p, *ev.certificate);
      if (ub && *ub == out.v_L) {
        out.status = BoundStatus::Certified;
        return out;
      }
      bool fine = true;
      for (const Row& r : rows) {
        auto l = ev.certificate->limit_of(r.coeffs);
        if (!l || !l->is_finite()) {
          fine = false;
          break;
        }
        dir.push_back(r.rhs - l->value());
      }
      if (!fine) break;
    } else {
      break;
    }
    BigInt rt = int_sqrt(BigInt(k));
    if (rt * rt != k) ++rt;
    Quad t{Rational(num(t0), BigInt(den(t0) * rt))};
    QVec next = lam;
    for (int i = 0; i < m; ++i) next[i] += t * dir[i];
    project(next);
    if (ev.supergradient && next == lam) {
      // fixpoint: the supergradient points out of the admissible cone at lam,
      // so the concave G cannot improve over it
      out.status = BoundStatus::Certified;
      return out;
    }
    lam = std::move(next);
  }
  return out;
}

}  // namespace dualgap
