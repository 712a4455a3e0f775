#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dualgap/enumeration.hpp"
#include "dualgap/hull.hpp"
#include "dualgap/relaxation.hpp"

// Checkers for the conditions under which the three values coincide: an
// interior-point test over the coupling rows, exact multiplier certificates
// at an optimal corner, and the level-set trichotomy for one rational row.

namespace dualgap {

struct SlaterWitness {
  QVec point;
  std::vector<std::pair<Point, Quad>> combination;  // lattice point, positive weight
  bool spanning = false;
};

enum class SlaterOutcome { Holds, FailsCertified, Inconclusive };

inline const char* to_string(SlaterOutcome s) {
  switch (s) {
    case SlaterOutcome::Holds: return "holds";
    case SlaterOutcome::FailsCertified: return "fails-certified";
    default: return "inconclusive";
  }
}

struct SlaterReport {
  SlaterOutcome outcome = SlaterOutcome::Inconclusive;
  std::optional<SlaterWitness> witness;
  std::string note;
};

struct FarkasCertificate {
  QVec lambda;              // one per coupling row, admissible sign per sense
  QVec mu;                  // one per active row, nonnegative
  ConstraintSystem active;  // the rows tight at the optimum, oriented >=
  Quad bound;               // lambda.b + mu.e, at least the closed optimum
};

struct CaseI {};
struct CaseII {
  BigInt beta1, beta2;
  Point on_beta1, on_beta2;
};
struct CaseIII {
  std::vector<Point> on_level;
};
struct NotApplicable {
  std::string why;
};
struct Inconclusive {
  std::string why;
};
using RowCase = std::variant<CaseI, CaseII, CaseIII, NotApplicable, Inconclusive>;

struct RowClassification {
  RowCase outcome;
  Row integral_row;  // the >= row after clearing denominators
  Rational scale;    // multiplier that made it integral
  bool complete_scan = false;
  // base infimum inf{c.x : x in X} certified finite, which upgrades a
  // classified case into equality of all three values
  bool equality_certified = false;
};

namespace detail {

struct LatticeSample {
  std::vector<Point> points;
  bool complete = false;  // every point of X is in the list
};

inline LatticeSample sample_lattice(const LatticeSetSpec& X, int radius, long budget) {
  LatticeSample out;
  if (X.kind == LatticeSetSpec::Kind::FiniteList) {
    out.points = X.points;
    out.complete = true;
    return out;
  }
  if (X.pieces.empty()) throw PreconditionError("lattice set with no pieces");
  const size_t count = X.kind == LatticeSetSpec::Kind::PolyLattice ? 1 : X.pieces.size();
  out.complete = true;
  for (size_t i = 0; i < count; ++i) {
    ConstraintSystem cs = piece_with_flags(X, static_cast<int>(i));
    auto box = certified_box(cs);
    if (!box) {
      box = IntBox{Point(X.dim, BigInt(-radius)), Point(X.dim, BigInt(radius))};
      out.complete = false;
    }
    auto pts = lattice_points_in_box(cs, *box, budget);
    out.points.insert(out.points.end(), pts.begin(), pts.end());
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  return out;
}

// LP check that `bound` holds everywhere on the region of `sys`
inline bool valid_over(int n, const std::vector<Row>& sys, const Row& bound) {
  if (bound.sense == Sense::Eq)
    return valid_over(n, sys, Row{bound.coeffs, Sense::Ge, bound.rhs}) &&
           valid_over(n, sys, Row{bound.coeffs, Sense::Le, bound.rhs});
  QVec obj = bound.coeffs;
  if (bound.sense == Sense::Le)
    for (Quad& q : obj) q = -q;
  LPResult r = relax_lp(n, obj, sys);
  if (r.status == LPStatus::Infeasible) return true;
  if (r.status != LPStatus::Optimal) return false;
  Quad opt = bound.sense == Sense::Le ? -r.value : r.value;
  return bound.sense == Sense::Le ? opt <= bound.rhs : opt >= bound.rhs;
}

// equality rows pinning the affine hull of a point list, by exact elimination
inline std::vector<Row> affine_hull_rows(const std::vector<Point>& pts, int n) {
  if (pts.empty()) throw PreconditionError("affine hull of nothing");
  std::vector<std::vector<Rational>> diffs;
  for (size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> d(n);
    for (int j = 0; j < n; ++j) d[j] = Rational(pts[i][j] - pts[0][j]);
    diffs.push_back(std::move(d));
  }
  // row-reduce the difference matrix; unpivoted coordinates parameterize the
  // normals h with h . (p_i - p_0) = 0 for all i
  std::vector<int> pivot_col;
  size_t rank = 0;
  for (int col = 0; col < n && rank < diffs.size(); ++col) {
    size_t sel = rank;
    while (sel < diffs.size() && diffs[sel][col] == 0) ++sel;
    if (sel == diffs.size()) continue;
    std::swap(diffs[rank], diffs[sel]);
    Rational inv = diffs[rank][col];
    for (int j = 0; j < n; ++j) diffs[rank][j] /= inv;
    for (size_t i = 0; i < diffs.size(); ++i) {
      if (i == rank || diffs[i][col] == 0) continue;
      Rational f = diffs[i][col];
      for (int j = 0; j < n; ++j) diffs[i][j] -= f * diffs[rank][j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<Row> rows;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free_col) != pivot_col.end()) continue;
    std::vector<Rational> h(n, Rational(0));
    h[free_col] = Rational(1);
    for (size_t i = 0; i < rank; ++i) h[pivot_col[i]] = -diffs[i][free_col];
    Row r;
    r.coeffs.resize(n);
    Rational rhs(0);
    for (int j = 0; j < n; ++j) {
      r.coeffs[j] = Quad(h[j]);
      rhs += h[j] * Rational(pts[0][j]);
    }
    r.sense = Sense::Eq;
    r.rhs = Quad(rhs);
    rows.push_back(std::move(r));
  }
  return rows;
}

// closure rows valid on the whole hull of X, candidates for a supporting face
inline std::vector<Row> closure_valid_rows(const LatticeSetSpec& X) {
  ClosureDescription C = analytic_closure(X);
  if (const HalfspaceForm* h = std::get_if<HalfspaceForm>(&C)) return h->sys.rows;
  if (const ConvOfUnion* u = std::get_if<ConvOfUnion>(&C)) {
    // a capped piece keeps its surd bound implicit; spelled out it both
    // relaxes the chord family for validity checks and is a candidate itself
    Row surd;
    if (X.dim >= 2) {
      surd.coeffs.assign(X.dim, Quad(0));
      surd.coeffs[0] = Quad::sqrt_of(2);
      surd.coeffs[1] = Quad(-1);
      surd.sense = Sense::Ge;
      surd.rhs = Quad(0);
    }
    auto with_surd = [&](const ClosedPiece& piece) {
      std::vector<Row> sys = piece.rows.rows;
      if (piece.pell_capped && X.dim >= 2) sys.push_back(surd);
      return sys;
    };
    std::vector<Row> out;
    for (const ClosedPiece& piece : u->pieces)
      for (const Row& r : with_surd(piece)) {
        if (r.sense == Sense::Eq) continue;
        bool everywhere = true;
        for (const ClosedPiece& other : u->pieces)
          everywhere = everywhere && valid_over(X.dim, with_surd(other), r);
        if (everywhere) out.push_back(r);
      }
    return out;
  }
  return {};
}

}  // namespace detail

// Looks for a strictly positive convex combination of lattice points that
// satisfies the coupling rows. Holds is sound when the sample spans the
// affine hull of X; failure is only certified through a registered closure
// row that the coupling rows pin tight.
inline SlaterReport slater_check(const Problem& p, int radius = 8, long budget = 2000000) {
  SlaterReport rep;
  detail::LatticeSample S = detail::sample_lattice(p.lattice, radius, budget);
  if (S.points.empty()) {
    rep.note = "no lattice points within the search radius";
    return rep;
  }
  const int n = p.n;
  std::vector<Row> hull_eqs = detail::affine_hull_rows(S.points, n);
  bool spanning = S.complete || hull_eqs.empty();
  if (!spanning) {
    // the sample spans X's hull iff X's own pieces already force its equations
    spanning = true;
    const size_t count =
        p.lattice.kind == LatticeSetSpec::Kind::PolyLattice ? 1 : p.lattice.pieces.size();
    for (const Row& eq : hull_eqs)
      for (size_t i = 0; i < count && spanning; ++i)
        spanning = detail::valid_over(n, piece_with_flags(p.lattice, static_cast<int>(i)).rows, eq);
  }

  if (spanning) {
    // the weight problem needs positivity only across a spanning support,
    // so big samples are trimmed to a spanning core plus the first few
    std::vector<Point> supp = S.points;
    const size_t cap = 32;
    if (supp.size() > cap) {
      std::vector<Point> core = {S.points[0]};
      size_t want = hull_eqs.size();
      for (const Point& s : S.points) {
        if (detail::affine_hull_rows(core, n).size() == want) break;
        bool extends = false;
        for (const Row& eq : detail::affine_hull_rows(core, n))
          extends = extends || dot(eq.coeffs, s) != eq.rhs;
        if (extends) core.push_back(s);
      }
      for (const Point& s : S.points) {
        if (core.size() >= cap) break;
        if (std::find(core.begin(), core.end(), s) == core.end()) core.push_back(s);
      }
      supp = std::move(core);
    }
    const int ks = static_cast<int>(supp.size());
    // maximize the smallest weight subject to the coupling rows
    LP lp;
    lp.n = ks + 1;
    lp.c.assign(ks + 1, Quad(0));
    lp.c[ks] = Quad(-1);
    for (const Row& r : p.coupling.rows) {
      Row row;
      row.coeffs.resize(ks + 1, Quad(0));
      for (int i = 0; i < ks; ++i) row.coeffs[i] = dot(r.coeffs, supp[i]);
      row.sense = r.sense;
      row.rhs = r.rhs;
      lp.rows.push_back(row);
    }
    Row one;
    one.coeffs.assign(ks + 1, Quad(1));
    one.coeffs[ks] = Quad(0);
    one.sense = Sense::Eq;
    one.rhs = Quad(1);
    lp.rows.push_back(one);
    for (int i = 0; i < ks; ++i) {
      Row floor_i;
      floor_i.coeffs.assign(ks + 1, Quad(0));
      floor_i.coeffs[i] = Quad(1);
      floor_i.coeffs[ks] = Quad(-1);
      floor_i.sense = Sense::Ge;
      floor_i.rhs = Quad(0);
      lp.rows.push_back(floor_i);
    }
    LPResult res = solve_lp(lp);
    if (res.status == LPStatus::Optimal && (-res.value).sign() > 0) {
      SlaterWitness w;
      w.spanning = true;
      w.point.assign(n, Quad(0));
      for (int i = 0; i < ks; ++i) {
        if (res.x[i].sign() <= 0) throw PreconditionError("weight lost its positivity");
        w.combination.emplace_back(supp[i], res.x[i]);
        for (int j = 0; j < n; ++j) w.point[j] += res.x[i] * Quad(supp[i][j]);
      }
      Quad total(0);
      for (const auto& [pt, wt] : w.combination) total += wt;
      if (total != Quad(1) || !detail::rows_hold(p.coupling.rows, w.point))
        throw PreconditionError("interior witness failed re-verification");
      rep.outcome = SlaterOutcome::Holds;
      rep.witness = std::move(w);
      return rep;
    }
  }

  // certified failure: a closure row the coupling rows force to equality,
  // while some lattice point sits strictly inside it
  for (const Row& r : detail::closure_valid_rows(p.lattice)) {
    if (r.sense == Sense::Eq) continue;
    Row rev = r;
    rev.sense = r.sense == Sense::Ge ? Sense::Le : Sense::Ge;
    if (!detail::valid_over(n, p.coupling.rows, rev)) continue;
    for (const Point& s : S.points) {
      if (dot(r.coeffs, s) == r.rhs) continue;
      rep.outcome = SlaterOutcome::FailsCertified;
      rep.note = "the coupling rows pin a proper face of the hull";
      return rep;
    }
  }
  rep.note = spanning ? "no strictly positive combination meets the coupling rows"
                      : "sample does not certify the affine hull";
  return rep;
}

// Exact multiplier certificate at an optimum x* of the closed relaxation:
// active rows D, e of the local polytope at x*, then multipliers with
// lambda^T A + mu^T D = c^T maximizing lambda.b + mu.e. The resulting bound
// sandwiches the closed optimum from above while every dual value stays
// below it, which forces the two to be equal.
inline FarkasCertificate farkas_certificate(const Problem& p, const QVec& x_star,
                                            const ConstraintSystem& polytope) {
  const int n = p.n;
  if (static_cast<int>(x_star.size()) != n || polytope.dim != n)
    throw DimensionError("certificate data does not match the problem");
  for (const Row& r : polytope.rows)
    if (!row_holds(r, x_star)) throw PreconditionError("x* is not in the local polytope");
  if (!detail::rows_hold(p.coupling.rows, x_star))
    throw PreconditionError("x* violates the coupling rows");

  FarkasCertificate cert;
  cert.active.dim = n;
  for (const Row& r : polytope.rows) {
    if (dot(r.coeffs, x_star) != r.rhs) continue;
    Row a = r;
    if (a.sense == Sense::Le) a = detail::negated(a);
    a.sense = Sense::Ge;
    cert.active.rows.push_back(a);
    if (r.sense == Sense::Eq) {
      cert.active.rows.push_back(detail::negated(Row{r.coeffs, Sense::Le, r.rhs}));
      cert.active.rows.back().sense = Sense::Ge;
    }
  }
  // orient coupling rows upward too; Le multipliers get their sign back later
  const int m = static_cast<int>(p.coupling.rows.size());
  std::vector<Row> oriented;
  for (const Row& r : p.coupling.rows) oriented.push_back(r.sense == Sense::Le ? detail::negated(r) : r);

  RelaxValue closed = solve_closed_conv(p);
  if (!closed.value.is_finite())
    throw PreconditionError("certificates need a finite closed optimum");

  const int d = static_cast<int>(cert.active.rows.size());
  auto build = [&](bool capped) {
    LP lp;
    lp.n = m + d;
    lp.c.resize(m + d);
    for (int i = 0; i < m; ++i) lp.c[i] = -oriented[i].rhs;
    for (int j = 0; j < d; ++j) lp.c[m + j] = -cert.active.rows[j].rhs;
    lp.nonneg.assign(m + d, true);
    for (int i = 0; i < m; ++i) lp.nonneg[i] = p.coupling.rows[i].sense != Sense::Eq;
    for (int col = 0; col < n; ++col) {
      Row eq;
      eq.coeffs.resize(m + d);
      for (int i = 0; i < m; ++i) eq.coeffs[i] = oriented[i].coeffs[col];
      for (int j = 0; j < d; ++j) eq.coeffs[m + j] = cert.active.rows[j].coeffs[col];
      eq.sense = Sense::Eq;
      eq.rhs = p.objective[col];
      lp.rows.push_back(eq);
    }
    if (capped) {
      Row cap;
      cap.coeffs = lp.c;
      cap.sense = Sense::Ge;
      cap.rhs = -(closed.value.value() + Quad(1));
      lp.rows.push_back(cap);
    }
    return solve_lp(lp);
  };
  LPResult res = build(false);
  if (res.status == LPStatus::Infeasible)
    throw CertificateNotFoundError("no multipliers reproduce the objective");
  if (res.status == LPStatus::Unbounded) res = build(true);
  if (res.status != LPStatus::Optimal) throw CertificateNotFoundError("multiplier search failed");

  cert.lambda.resize(m);
  for (int i = 0; i < m; ++i)
    cert.lambda[i] = p.coupling.rows[i].sense == Sense::Le ? -res.x[i] : res.x[i];
  cert.mu.assign(res.x.begin() + m, res.x.end());
  cert.bound = -res.value;

  // replay every claim from scratch
  for (int col = 0; col < n; ++col) {
    Quad lhs(0);
    for (int i = 0; i < m; ++i) lhs += res.x[i] * oriented[i].coeffs[col];
    for (int j = 0; j < d; ++j) lhs += cert.mu[j] * cert.active.rows[j].coeffs[col];
    if (lhs != p.objective[col]) throw PreconditionError("certificate identity broke");
  }
  Quad payoff(0);
  for (int i = 0; i < m; ++i) payoff += res.x[i] * oriented[i].rhs;
  for (int j = 0; j < d; ++j) payoff += cert.mu[j] * cert.active.rows[j].rhs;
  if (payoff != cert.bound || cert.bound < closed.value.value())
    throw PreconditionError("certificate bound failed re-verification");
  for (int j = 0; j < d; ++j)
    if (cert.mu[j].sign() < 0) throw PreconditionError("active multiplier went negative");
  return cert;
}

// Level-set trichotomy for one rational coupling row over the lattice set:
// either X sits above the level, or two distinct feasible levels carry
// points, or every feasible point lies exactly on the level.
inline RowClassification classify_single_row(const Problem& p, int radius = 8,
                                             long budget = 2000000) {
  RowClassification out;
  out.scale = Rational(1);
  if (p.coupling.rows.size() != 1) {
    out.outcome = NotApplicable{"expects exactly one coupling row"};
    return out;
  }
  Row r = p.coupling.rows[0];
  if (r.sense == Sense::Eq) {
    out.outcome = NotApplicable{"expects an inequality row"};
    return out;
  }
  if (r.sense == Sense::Le) r = detail::negated(r);
  for (const Quad& q : r.coeffs)
    if (!q.is_rational()) {
      out.outcome = NotApplicable{"row is not rational"};
      return out;
    }
  if (!r.rhs.is_rational()) {
    out.outcome = NotApplicable{"row is not rational"};
    return out;
  }

  BigInt lcm(1);
  auto fold = [&lcm](const Rational& q) {
    BigInt den = boost::multiprecision::denominator(q);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  };
  for (const Quad& q : r.coeffs) fold(q.a());
  fold(r.rhs.a());
  out.scale = Rational(lcm);
  for (Quad& q : r.coeffs) q = q * Quad(Rational(lcm));
  r.rhs = r.rhs * Quad(Rational(lcm));
  out.integral_row = r;

  std::vector<BigInt> a(p.n);
  for (int j = 0; j < p.n; ++j) a[j] = boost::multiprecision::numerator(r.coeffs[j].a());
  BigInt b = boost::multiprecision::numerator(r.rhs.a());

  detail::LatticeSample S = detail::sample_lattice(p.lattice, radius, budget);
  out.complete_scan = S.complete;
  std::map<BigInt, Point> levels;  // feasible level -> witness
  for (const Point& s : S.points) {
    BigInt lvl(0);
    for (int j = 0; j < p.n; ++j) lvl += a[j] * s[j];
    if (lvl >= b) levels.emplace(lvl, s);
  }
  out.outcome = [&]() -> RowCase {
    if (levels.size() >= 2) {
      auto it = levels.begin();
      CaseII c2{it->first, BigInt(0), it->second, {}};
      ++it;
      c2.beta2 = it->first;
      c2.on_beta2 = it->second;
      return c2;
    }

    auto every_piece = [&](const Row& bound) {
      if (p.lattice.kind == LatticeSetSpec::Kind::FiniteList) return false;
      const size_t count =
          p.lattice.kind == LatticeSetSpec::Kind::PolyLattice ? 1 : p.lattice.pieces.size();
      for (size_t i = 0; i < count; ++i) {
        std::vector<Row> sys = piece_with_flags(p.lattice, static_cast<int>(i)).rows;
        if (bound.sense == Sense::Le) sys.push_back(r);  // only feasible points matter
        if (!detail::valid_over(p.n, sys, bound)) return false;
      }
      return true;
    };

    bool all_above = S.complete;
    if (all_above)
      for (const Point& s : S.points) {
        BigInt lvl(0);
        for (int j = 0; j < p.n; ++j) lvl += a[j] * s[j];
        all_above = all_above && lvl >= b;
      }
    if (S.complete && all_above) return CaseI{};

    // a set whose feasible points hug the level line is the on-level case
    // even when the row also happens to be valid, so this check runs before
    // the analytic validity one
    bool found_on_level = true;
    for (const auto& [lvl, pt] : levels) found_on_level = found_on_level && lvl == b;
    if (found_on_level && (S.complete || every_piece(Row{r.coeffs, Sense::Le, r.rhs}))) {
      CaseIII c3;
      for (const auto& [lvl, pt] : levels)
        if (lvl == b) c3.on_level.push_back(pt);
      return c3;
    }

    if (every_piece(Row{r.coeffs, Sense::Ge, r.rhs})) return CaseI{};

    return Inconclusive{"budget exhausted without a certificate"};
  }();

  if (!std::holds_alternative<Inconclusive>(out.outcome)) {
    // equality of all three values additionally needs a finite base infimum
    Problem base = p;
    base.coupling.rows.clear();
    try {
      out.equality_certified = solve_conv(base).value.is_finite();
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace dualgap
