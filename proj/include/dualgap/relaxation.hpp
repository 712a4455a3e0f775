#pragma once

#include <algorithm>
#include <optional>
#include <variant>
#include <vector>

#include "dualgap/enumeration.hpp"
#include "dualgap/extreal.hpp"
#include "dualgap/hull.hpp"
#include "dualgap/simplex.hpp"

// Primal relaxations: minimize the objective over the hull of the lattice set
// (or over its closure) cut by the coupling rows. The two variants differ
// exactly on the irrational boundary faces the plain hull fails to reach, so
// they share one engine parameterized by the face that is missing. Values are
// exact; -inf is only ever reported together with a checkable feasible ray.

namespace dualgap {

enum class RelaxMethod { Analytic, Boxed2D, FiniteLP };

inline const char* to_string(RelaxMethod m) {
  switch (m) {
    case RelaxMethod::Analytic: return "analytic";
    case RelaxMethod::Boxed2D: return "boxed-2d";
    default: return "finite-lp";
  }
}

struct RelaxValue {
  ExtReal value = ExtReal::pos_inf();
  bool attained = false;
  std::optional<QVec> witness;   // feasible point achieving value
  RelaxMethod method = RelaxMethod::Analytic;
  std::optional<QVec> ray;       // descent direction certifying value = -inf
  std::optional<QVec> ray_base;  // feasible start of that ray
};

namespace detail {

inline LPResult relax_lp(int n, const QVec& c, const std::vector<Row>& rows) {
  LP lp;
  lp.n = n;
  lp.c = c;
  lp.rows = rows;
  lp.nonneg.assign(n, false);
  return solve_lp(lp);
}

inline bool rows_hold(const std::vector<Row>& rows, const QVec& x) {
  for (const Row& r : rows)
    if (!row_holds(r, x)) return false;
  return true;
}

inline Row negated(Row r) {
  for (Quad& q : r.coeffs) q = -q;
  r.rhs = -r.rhs;
  if (r.sense != Sense::Eq) r.sense = r.sense == Sense::Ge ? Sense::Le : Sense::Ge;
  return r;
}

inline Row reversed(Row r) {
  if (r.sense != Sense::Eq) r.sense = r.sense == Sense::Ge ? Sense::Le : Sense::Ge;
  return r;
}

inline Row as_eq(Row r) {
  r.sense = Sense::Eq;
  return r;
}

inline std::vector<Row> homogenized(std::vector<Row> rows) {
  for (Row& r : rows) r.rhs = Quad(0);
  return rows;
}

inline void append(std::vector<Row>& dst, const std::vector<Row>& src) {
  dst.insert(dst.end(), src.begin(), src.end());
}

// a feasible direction with c.d = -1, certifying the minimum is unbounded
inline std::optional<QVec> descent_direction(int n, const QVec& c, const std::vector<Row>& rows) {
  std::vector<Row> sys = homogenized(rows);
  Row norm;
  norm.coeffs = c;
  norm.sense = Sense::Eq;
  norm.rhs = Quad(-1);
  sys.push_back(norm);
  LPResult res = relax_lp(n, QVec(n, Quad(0)), sys);
  if (res.status != LPStatus::Optimal) return std::nullopt;
  return res.x;
}

inline void certify_unbounded(RelaxValue& out, int n, const QVec& c,
                              const std::vector<Row>& rows) {
  out.value = ExtReal::neg_inf();
  out.attained = false;
  out.ray = descent_direction(n, c, rows);
  LPResult base = relax_lp(n, QVec(n, Quad(0)), rows);
  if (base.status == LPStatus::Optimal) out.ray_base = base.x;
  if (!out.ray || !out.ray_base || !rows_hold(homogenized(rows), *out.ray) ||
      !rows_hold(rows, *out.ray_base) || dot(c, *out.ray).sign() >= 0)
    throw PreconditionError("unbounded relaxation without a checkable ray");
}

inline void seal(RelaxValue& out, const QVec& c, const std::vector<Row>& feasible, const QVec& x,
                 const Quad& value) {
  out.value = ExtReal(value);
  out.attained = true;
  out.witness = x;
  if (!rows_hold(feasible, x) || dot(c, x) != value)
    throw PreconditionError("relaxation witness failed re-verification");
}

// minimize over conv(gens) cut by the coupling rows, exactly, in the weights
inline RelaxValue over_generators(const Problem& p, const std::vector<QVec>& gens,
                                  RelaxMethod tag) {
  RelaxValue out;
  out.method = tag;
  if (gens.empty()) return out;  // empty hull: +inf
  const int k = static_cast<int>(gens.size());
  LP lp;
  lp.n = k;
  lp.c.resize(k);
  for (int i = 0; i < k; ++i) lp.c[i] = dot(p.objective, gens[i]);
  for (const Row& r : p.coupling.rows) {
    Row row;
    row.coeffs.resize(k);
    for (int i = 0; i < k; ++i) row.coeffs[i] = dot(r.coeffs, gens[i]);
    row.sense = r.sense;
    row.rhs = r.rhs;
    lp.rows.push_back(row);
  }
  Row one;
  one.coeffs.assign(k, Quad(1));
  one.sense = Sense::Eq;
  one.rhs = Quad(1);
  lp.rows.push_back(one);
  LPResult res = solve_lp(lp);  // empty nonneg mask: weights >= 0
  if (res.status == LPStatus::Infeasible) return out;
  if (res.status == LPStatus::Unbounded)
    throw PreconditionError("weight polytope came back unbounded");
  QVec x(p.n, Quad(0));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < p.n; ++j) x[j] += res.x[i] * gens[i][j];
  out.value = ExtReal(res.value);
  out.attained = true;
  out.witness = x;
  if (!rows_hold(p.coupling.rows, x) || dot(p.objective, x) != res.value)
    throw PreconditionError("relaxation witness failed re-verification");
  return out;
}

inline std::optional<std::vector<Point>> bounded_points(const LatticeSetSpec& X,
                                                        long budget = 2000000) {
  if (X.kind == LatticeSetSpec::Kind::FiniteList) return X.points;
  if (X.pieces.empty()) throw PreconditionError("lattice set with no pieces");
  const size_t count = X.kind == LatticeSetSpec::Kind::PolyLattice ? 1 : X.pieces.size();
  std::vector<Point> all;
  for (size_t i = 0; i < count; ++i) {
    ConstraintSystem cs = piece_with_flags(X, static_cast<int>(i));
    auto box = certified_box(cs);
    if (!box) return std::nullopt;
    auto pts = lattice_points_in_box(cs, *box, budget);
    all.insert(all.end(), pts.begin(), pts.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

// the face of the closure the plain hull only partially keeps
struct MissingFace {
  Row facet;                  // valid row, <= normalized, tight on that face
  std::vector<Row> included;  // carves what the hull does keep there
  bool nothing_included = false;
};

// which registered closures keep less than their closure in the plain hull:
// the wedge loses its irrational edge except the apex, the slab loses its
// bounding plane except one lattice line (or entirely, off-lattice levels)
inline std::optional<MissingFace> missing_face(const LatticeSetSpec& X, const HalfspaceForm& H) {
  if (X.dim == 2 && H.sys.rows.size() == 3) {
    MissingFace mf;
    mf.facet = H.sys.rows[0];
    Row x0{{Quad(1), Quad(0)}, Sense::Eq, Quad(0)};
    Row x1{{Quad(0), Quad(1)}, Sense::Eq, Quad(0)};
    mf.included = {x0, x1};
    return mf;
  }
  if (X.dim == 3 && H.sys.rows.size() == 1) {
    Row r = H.sys.rows[0];
    if (r.sense == Sense::Ge) r = negated(r);
    MissingFace mf;
    mf.facet = r;
    Quad lvl = r.rhs / r.coeffs[2];
    if (!(lvl.is_rational() && Quad(qfloor(lvl)) == lvl)) {
      mf.nothing_included = true;
      return mf;
    }
    Row diag{{Quad(1), Quad(-1), Quad(0)}, Sense::Eq, Quad(0)};
    Row level{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, lvl};
    mf.included = {diag, level};
    return mf;
  }
  return std::nullopt;
}

// minimum over (closure minus the open part of one facet). The closed value
// and the facet geometry decide both the value and whether it is reached.
inline RelaxValue facet_excluded_min(int n, const QVec& c, const std::vector<Row>& closed_rows,
                                     const MissingFace& mf, RelaxMethod tag) {
  RelaxValue out;
  out.method = tag;
  const Row& f = mf.facet;
  LPResult closed = relax_lp(n, c, closed_rows);
  if (closed.status == LPStatus::Infeasible) return out;

  LPResult fmin = relax_lp(n, f.coeffs, closed_rows);
  bool all_on_facet = fmin.status == LPStatus::Optimal && fmin.value == f.rhs;

  if (all_on_facet) {
    if (mf.nothing_included) return out;  // the feasible part is exactly what is missing
    std::vector<Row> rows = closed_rows;
    append(rows, mf.included);
    LPResult res = relax_lp(n, c, rows);
    if (res.status == LPStatus::Infeasible) return out;
    if (res.status == LPStatus::Unbounded) {
      certify_unbounded(out, n, c, rows);
      return out;
    }
    seal(out, c, rows, res.x, res.value);
    return out;
  }

  // off-facet points exist, so the hull is dense in the closed feasible set
  if (closed.status == LPStatus::Unbounded) {
    certify_unbounded(out, n, c, closed_rows);
    // move the certificate base off the facet so the whole ray is in the hull
    QVec base;
    if (fmin.status == LPStatus::Optimal) {
      base = fmin.x;
    } else {
      std::vector<Row> capped0 = closed_rows;
      Row fl;
      fl.coeffs = f.coeffs;
      fl.sense = Sense::Ge;
      fl.rhs = f.rhs - Quad(1);
      capped0.push_back(fl);
      LPResult r0 = relax_lp(n, f.coeffs, capped0);
      if (r0.status != LPStatus::Optimal) throw PreconditionError("no off-facet base for the ray");
      base = r0.x;
    }
    out.ray_base = base;
    if (!rows_hold(closed_rows, base) || !(dot(f.coeffs, base) < f.rhs))
      throw PreconditionError("off-facet base failed re-verification");
    return out;
  }
  std::vector<Row> opt = closed_rows;
  Row tie;
  tie.coeffs = c;
  tie.sense = Sense::Eq;
  tie.rhs = closed.value;
  opt.push_back(tie);
  LPResult any = relax_lp(n, QVec(n, Quad(0)), opt);
  if (any.status != LPStatus::Optimal) throw PreconditionError("optimal face went missing");
  if (dot(f.coeffs, any.x) != f.rhs) {
    seal(out, c, opt, any.x, closed.value);
    return out;
  }
  // the optimum we found sits on the facet: try to slide off it
  std::vector<Row> capped = opt;
  Row floor_row;
  floor_row.coeffs = f.coeffs;
  floor_row.sense = Sense::Ge;
  floor_row.rhs = f.rhs - Quad(1);
  capped.push_back(floor_row);
  LPResult push = relax_lp(n, f.coeffs, capped);
  if (push.status == LPStatus::Optimal && push.value < f.rhs) {
    seal(out, c, opt, push.x, closed.value);
    return out;
  }
  // every optimum is on the facet; only the kept part can attain
  if (!mf.nothing_included) {
    std::vector<Row> sub = opt;
    append(sub, mf.included);
    LPResult res = relax_lp(n, QVec(n, Quad(0)), sub);
    if (res.status == LPStatus::Optimal) {
      seal(out, c, sub, res.x, closed.value);
      return out;
    }
  }
  out.value = ExtReal(closed.value);
  out.attained = false;
  return out;
}

// first row with an irrational coefficient, normalized to <=
inline std::optional<Row> surd_le_row(const std::vector<Row>& rows) {
  for (const Row& r : rows) {
    bool irr = false;
    for (const Quad& q : r.coeffs) irr = irr || !q.is_rational();
    if (!irr) continue;
    return r.sense == Sense::Ge ? negated(r) : r;
  }
  return std::nullopt;
}

// exact linear minimum over the chord-capped slice of the registered union:
// x >= 1, y >= 0 under every chord cut, at a fixed level. Extreme points are
// (1,0), (1,1) and the contact vertices; the recession cone is the wedge
// spanned by (1,0) and (1,sqrt2).
inline RelaxValue chord_slice_min(const QVec& c, int lc, const Quad& level) {
  if (c.size() != 3 || lc != 2) throw UnsupportedError("chord slice outside the registered layout");
  RelaxValue out;
  const Quad rt = Quad::sqrt_of(2);
  const Quad flat = c[0];
  const Quad edge = c[0] + rt * c[1];
  const Quad shift = c[2] * level;
  if (flat.sign() < 0 || edge.sign() < 0) {
    out.value = ExtReal::neg_inf();
    out.ray = flat.sign() < 0 ? QVec{Quad(1), Quad(0), Quad(0)} : QVec{Quad(1), rt, Quad(0)};
    out.ray_base = QVec{Quad(1), Quad(0), level};
    std::vector<Row> rows = {Row{{Quad(1), Quad(0), Quad(0)}, Sense::Ge, Quad(1)},
                             Row{{Quad(0), Quad(1), Quad(0)}, Sense::Ge, Quad(0)},
                             Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, level}};
    append(rows, lifted_chords(3, Quad(3)));
    if (!rows_hold(rows, *out.ray_base) || !rows_hold(homogenized(rows), *out.ray) ||
        dot(c, *out.ray).sign() >= 0)
      throw PreconditionError("chord slice ray failed re-verification");
    return out;
  }
  if (edge.sign() == 0 && c[1].sign() < 0) {
    // the functional flattens along the irrational edge: the infimum is the
    // limit of the contact values and nothing achieves it
    out.value = ExtReal(shift);
    return out;
  }
  auto value_at = [&](const BigInt& x, const BigInt& y) {
    return c[0] * Quad(x) + c[1] * Quad(y) + shift;
  };
  BigInt bx = 1, by = 0;
  Quad best = value_at(bx, by);
  Quad prev = best;
  BigInt p = 1, q = 1;  // contact vertex (q, p), walked two convergent steps at a time
  bool turned = false;
  for (int k = 0; k < 128; ++k) {
    Quad v = value_at(q, p);
    if (v < best) {
      best = v;
      bx = q;
      by = p;
    }
    if (v >= prev) {
      turned = true;
      break;
    }
    prev = v;
    BigInt np = BigInt(3 * p + 4 * q), nq = BigInt(2 * p + 3 * q);
    p = np;
    q = nq;
  }
  if (!turned) throw PreconditionError("contact walk did not turn around");
  out.value = ExtReal(best);
  out.attained = true;
  out.witness = QVec{Quad(bx), Quad(by), level};
  std::vector<Row> rows = {Row{{Quad(1), Quad(0), Quad(0)}, Sense::Ge, Quad(1)},
                           Row{{Quad(0), Quad(1), Quad(0)}, Sense::Ge, Quad(0)},
                           Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, level}};
  append(rows, lifted_chords(3, Quad(bx) + Quad(2)));
  if (!rows_hold(rows, *out.witness) || dot(c, *out.witness) != best)
    throw PreconditionError("chord slice witness failed re-verification");
  return out;
}

inline RelaxValue pick_min(const RelaxValue& a, const RelaxValue& b) {
  if (a.value < b.value) return a;
  if (b.value < a.value) return b;
  if (a.attained || !b.attained) return a;
  return b;
}

// Reduce the cone-and-slice union under coupling rows to one finite system.
// A coupling row whose reverse is valid on both rational pieces (their
// lattice hulls only shrink them) is pinned tight by feasibility; the tight
// rows must then empty the chord piece down to its recession wedge, and the
// wedge directions must already recede in the cone face. What is left is the
// cone piece's face plus any rows that did not pin.
inline std::vector<Row> reduce_pair(const Problem& p, const ConvOfUnion& U) {
  const LatticeSetSpec& X = p.lattice;
  if (X.kind != LatticeSetSpec::Kind::UnionConvLattice || X.pieces.size() != 2 ||
      U.pieces.size() != 2 || U.pieces[0].pell_capped || !U.pieces[1].pell_capped)
    throw UnsupportedError("union relaxation outside the registered family");
  const int n = p.n;
  const ConstraintSystem cone = piece_with_flags(X, 0);
  const ConstraintSystem pell = piece_with_flags(X, 1);

  auto implied_on = [&](const ConstraintSystem& cs, const Row& bound) {
    QVec obj = bound.coeffs;
    if (bound.sense == Sense::Le)
      for (Quad& q : obj) q = -q;
    LPResult r = relax_lp(n, obj, cs.rows);
    if (r.status == LPStatus::Infeasible) return true;
    if (r.status != LPStatus::Optimal) return false;
    Quad opt = bound.sense == Sense::Le ? -r.value : r.value;
    return bound.sense == Sense::Le ? opt <= bound.rhs : opt >= bound.rhs;
  };
  auto valid_on_both = [&](const Row& bound) {
    return implied_on(cone, bound) && implied_on(pell, bound);
  };

  std::vector<Row> tight, leftover;
  for (const Row& r : p.coupling.rows) {
    if (r.sense == Sense::Eq) {
      Row le = r, ge = r;
      le.sense = Sense::Le;
      ge.sense = Sense::Ge;
      if (valid_on_both(le) || valid_on_both(ge)) tight.push_back(r);
      else throw UnsupportedError("equality row slices through the union");
      continue;
    }
    if (valid_on_both(reversed(r))) tight.push_back(as_eq(r));
    else leftover.push_back(r);
  }
  if (tight.empty())
    throw UnsupportedError("no coupling row supports the union; cannot reduce");

  // the tight rows must pin the chord piece onto its irrational edge,
  // where the cuts leave nothing
  {
    std::vector<Row> sys = pell.rows;
    append(sys, tight);
    LPResult feas = relax_lp(n, QVec(n, Quad(0)), sys);
    if (feas.status == LPStatus::Optimal) {
      auto line = surd_le_row(pell.rows);
      if (!line) throw UnsupportedError("chord piece without its irrational row");
      QVec neg = line->coeffs;
      for (Quad& q : neg) q = -q;
      LPResult lo = relax_lp(n, line->coeffs, sys);
      LPResult hi = relax_lp(n, neg, sys);
      bool pinned = lo.status == LPStatus::Optimal && hi.status == LPStatus::Optimal &&
                    lo.value == line->rhs && -hi.value == line->rhs;
      if (!pinned) throw UnsupportedError("cannot reduce the chord piece under these rows");
    }
  }

  auto lv1 = dualgap::detail::piece_level(U.pieces[1].rows);
  if (!lv1) throw UnsupportedError("chord piece has no level row");
  std::vector<Row> dirs = dualgap::detail::pell_recession_rows(n, lv1->first);
  append(dirs, homogenized(tight));
  std::vector<Row> face = U.pieces[0].rows.rows;
  append(face, tight);
  for (const Row& fr : homogenized(face))
    if (!dualgap::detail::cone_implies(dirs, n, fr))
      throw UnsupportedError("chord recession escapes the cone face");

  append(face, leftover);
  return face;
}

// grow a centered box until the boxed hull's optimum stops moving. An integer
// descent ray is tried first so unbounded instances get certified instead of
// chased through ever larger boxes.
inline RelaxValue boxed_2d(const Problem& p) {
  if (p.n != 2) throw UnsupportedError("boxed relaxation is planar only");
  const size_t count =
      p.lattice.kind == LatticeSetSpec::Kind::PolyLattice ? 1 : p.lattice.pieces.size();
  for (size_t i = 0; i < count; ++i) {
    ConstraintSystem cs = piece_with_flags(p.lattice, static_cast<int>(i));
    append(cs.rows, p.coupling.rows);
    auto ray = integer_descent_ray(cs, p.objective, 5);
    if (!ray) continue;
    auto base = find_lattice_point(cs);
    if (!base) continue;
    RelaxValue out;
    out.method = RelaxMethod::Boxed2D;
    out.value = ExtReal::neg_inf();
    out.ray = QVec(ray->begin(), ray->end());
    out.ray_base = QVec(base->begin(), base->end());
    if (!rows_hold(homogenized(cs.rows), *out.ray) || !rows_hold(cs.rows, *out.ray_base) ||
        dot(p.objective, *out.ray).sign() >= 0)
      throw PreconditionError("integer descent ray failed re-verification");
    return out;
  }
  bool have = false;
  Quad prev;
  int stable = 0;
  for (long B : {4L, 8L, 16L, 32L, 64L}) {
    Box2 box{Quad(-B), Quad(B), Quad(-B), Quad(B)};
    Polytope2D hull;
    try {
      hull = boxed_hull_2d(p.lattice, box, Rational(1));
    } catch (const EmptySetError&) {
      continue;
    }
    std::vector<QVec> gens;
    gens.reserve(hull.vertices.size());
    for (const Pt2& v : hull.vertices) gens.push_back(QVec{v.x, v.y});
    RelaxValue cur = over_generators(p, gens, RelaxMethod::Boxed2D);
    if (cur.attained && have && cur.value == ExtReal(prev)) {
      if (++stable >= 2) return cur;
    } else {
      stable = 0;
    }
    if (cur.attained) {
      prev = cur.value.value();
      have = true;
    }
  }
  throw UnsupportedError("box growth did not stabilize");
}

inline void check_member(const ConvOfUnion& U, const Problem& p, const RelaxValue& out) {
  if (!out.attained) return;
  ClosureDescription C = U;
  if (membership(C, *out.witness) == Region::Outside ||
      !rows_hold(p.coupling.rows, *out.witness) ||
      ExtReal(dot(p.objective, *out.witness)) != out.value)
    throw PreconditionError("relaxation witness failed re-verification");
}

}  // namespace detail

inline RelaxValue solve_closed_conv(const Problem& p) {
  if (p.lattice.dim != p.n) throw DimensionError("lattice dimension != variable count");
  ClosureDescription C = analytic_closure(p.lattice);
  if (const HalfspaceForm* h = std::get_if<HalfspaceForm>(&C)) {
    std::vector<Row> rows = h->sys.rows;
    detail::append(rows, p.coupling.rows);
    RelaxValue out;
    LPResult res = detail::relax_lp(p.n, p.objective, rows);
    if (res.status == LPStatus::Unbounded) detail::certify_unbounded(out, p.n, p.objective, rows);
    else if (res.status == LPStatus::Optimal) detail::seal(out, p.objective, rows, res.x, res.value);
    return out;
  }
  if (const ConvOfUnion* u = std::get_if<ConvOfUnion>(&C)) {
    RelaxValue out;
    if (p.coupling.rows.empty()) {
      auto lv1 = detail::piece_level(u->pieces[1].rows);
      if (!lv1) throw UnsupportedError("chord piece has no level row");
      RelaxValue cone;
      LPResult res = detail::relax_lp(p.n, p.objective, u->pieces[0].rows.rows);
      if (res.status == LPStatus::Unbounded)
        detail::certify_unbounded(cone, p.n, p.objective, u->pieces[0].rows.rows);
      else if (res.status == LPStatus::Optimal)
        detail::seal(cone, p.objective, u->pieces[0].rows.rows, res.x, res.value);
      out = detail::pick_min(cone, detail::chord_slice_min(p.objective, lv1->first, lv1->second));
    } else {
      std::vector<Row> face = detail::reduce_pair(p, *u);
      LPResult res = detail::relax_lp(p.n, p.objective, face);
      if (res.status == LPStatus::Unbounded)
        detail::certify_unbounded(out, p.n, p.objective, face);
      else if (res.status == LPStatus::Optimal)
        detail::seal(out, p.objective, face, res.x, res.value);
    }
    detail::check_member(*u, p, out);
    return out;
  }
  auto pts = detail::bounded_points(p.lattice);
  if (pts) {
    std::vector<QVec> gens;
    gens.reserve(pts->size());
    for (const Point& pt : *pts) gens.emplace_back(pt.begin(), pt.end());
    return detail::over_generators(p, gens, RelaxMethod::FiniteLP);
  }
  if (p.n == 2) return detail::boxed_2d(p);
  throw UnsupportedError("no closed form and no finite enumeration for this set");
}

inline RelaxValue solve_conv(const Problem& p) {
  if (p.lattice.dim != p.n) throw DimensionError("lattice dimension != variable count");
  ClosureDescription C = analytic_closure(p.lattice);
  if (const HalfspaceForm* h = std::get_if<HalfspaceForm>(&C)) {
    auto mf = detail::missing_face(p.lattice, *h);
    if (!mf) throw UnsupportedError("closure known but its hull deficiency is not");
    std::vector<Row> rows = h->sys.rows;
    detail::append(rows, p.coupling.rows);
    return detail::facet_excluded_min(p.n, p.objective, rows, *mf, RelaxMethod::Analytic);
  }
  if (const ConvOfUnion* u = std::get_if<ConvOfUnion>(&C)) {
    auto facet = detail::surd_le_row(u->pieces[0].rows.rows);
    if (!facet) throw UnsupportedError("cone piece without its irrational row");
    detail::MissingFace mf;
    mf.facet = *facet;
    Row x0{{Quad(1), Quad(0), Quad(0)}, Sense::Eq, Quad(0)};
    Row x1{{Quad(0), Quad(1), Quad(0)}, Sense::Eq, Quad(0)};
    mf.included = {x0, x1};
    RelaxValue out;
    if (p.coupling.rows.empty()) {
      auto lv1 = detail::piece_level(u->pieces[1].rows);
      if (!lv1) throw UnsupportedError("chord piece has no level row");
      RelaxValue cone = detail::facet_excluded_min(p.n, p.objective, u->pieces[0].rows.rows, mf,
                                                   RelaxMethod::Analytic);
      out = detail::pick_min(cone, detail::chord_slice_min(p.objective, lv1->first, lv1->second));
    } else {
      std::vector<Row> face = detail::reduce_pair(p, *u);
      out = detail::facet_excluded_min(p.n, p.objective, face, mf, RelaxMethod::Analytic);
    }
    detail::check_member(*u, p, out);
    return out;
  }
  auto pts = detail::bounded_points(p.lattice);
  if (pts) {
    std::vector<QVec> gens;
    gens.reserve(pts->size());
    for (const Point& pt : *pts) gens.emplace_back(pt.begin(), pt.end());
    return detail::over_generators(p, gens, RelaxMethod::FiniteLP);
  }
  if (p.n == 2) return detail::boxed_2d(p);
  throw UnsupportedError("no closed form and no finite enumeration for this set");
}

}  // namespace dualgap
