#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "dualgap/enumeration.hpp"
#include "dualgap/model.hpp"
#include "dualgap/pell.hpp"
#include "dualgap/simplex.hpp"

// Boxed hulls of planar lattice sets, closed-form closures for the registered
// families, membership classification, recession cones. The boxed hull is
// exact for what it computes (hull of the lattice points in an enlarged box,
// clipped back); how well that approximates the true closure depends on the
// enlargement factor, which stays caller-visible.

namespace dualgap {

struct Pt2 {
  Quad x, y;

  friend bool operator==(const Pt2& a, const Pt2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Pt2& a, const Pt2& b) { return !(a == b); }
};

inline bool lex_less(const Pt2& a, const Pt2& b) {
  int s = compare(a.x, b.x);
  if (s != 0) return s < 0;
  return compare(a.y, b.y) < 0;
}

// twice the signed area of the triangle o-a-b; positive for a left turn
inline Quad cross3(const Pt2& o, const Pt2& a, const Pt2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

struct Box2 {
  Quad xlo, xhi, ylo, yhi;

  bool proper() const { return xlo < xhi && ylo < yhi; }

  // scale both half-widths about the center
  Box2 enlarged(const Rational& factor) const {
    Quad f{factor};
    Quad cx = (xlo + xhi) / Quad(2), cy = (ylo + yhi) / Quad(2);
    Quad hx = (xhi - xlo) / Quad(2), hy = (yhi - ylo) / Quad(2);
    return {cx - f * hx, cx + f * hx, cy - f * hy, cy + f * hy};
  }

  bool contains(const Pt2& p) const {
    return p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi;
  }
  bool on_edge(const Pt2& p) const {
    if (!contains(p)) return false;
    return p.x == xlo || p.x == xhi || p.y == ylo || p.y == yhi;
  }
  bool is_corner(const Pt2& p) const {
    return (p.x == xlo || p.x == xhi) && (p.y == ylo || p.y == yhi);
  }
};

// Convex polygon, counter-clockwise, strictly convex, lexicographic minimum
// first. Zero, one or two vertices stand for the empty set, a point, a
// segment.
struct Polytope2D {
  std::vector<Pt2> vertices;
};

inline bool poly_contains(const Polytope2D& P, const Pt2& p) {
  const auto& v = P.vertices;
  if (v.empty()) return false;
  if (v.size() == 1) return v[0] == p;
  if (v.size() == 2) {
    if (cross3(v[0], v[1], p).sign() != 0) return false;
    Quad lo = v[0].x, hi = v[1].x;
    if (lo == hi) return p.y >= std::min(v[0].y, v[1].y) && p.y <= std::max(v[0].y, v[1].y);
    return p.x >= std::min(lo, hi) && p.x <= std::max(lo, hi);
  }
  for (size_t i = 0; i < v.size(); ++i) {
    if (cross3(v[i], v[(i + 1) % v.size()], p).sign() < 0) return false;
  }
  return true;
}

// inward halfplane rows of a polytope with at least 3 vertices
inline ConstraintSystem poly_rows(const Polytope2D& P) {
  if (P.vertices.size() < 3) throw PreconditionError("poly_rows needs a full-dimensional polytope");
  ConstraintSystem cs;
  cs.dim = 2;
  for (size_t i = 0; i < P.vertices.size(); ++i) {
    const Pt2& a = P.vertices[i];
    const Pt2& b = P.vertices[(i + 1) % P.vertices.size()];
    Quad cx = -(b.y - a.y), cy = b.x - a.x;
    cs.rows.push_back(Row{{cx, cy}, Sense::Ge, cx * a.x + cy * a.y});
  }
  return cs;
}

namespace detail {

// drop consecutive duplicates and collinear middles; rotate lex-min first.
// A loop that collapses below dimension 2 is reduced to its extreme pair.
inline void normalize_loop(std::vector<Pt2>& v) {
  auto dedupe = [&] {
    std::vector<Pt2> out;
    for (const Pt2& p : v)
      if (out.empty() || !(out.back() == p)) out.push_back(p);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    v.swap(out);
  };
  dedupe();
  if (v.size() > 2) {
    bool flat = true;
    for (size_t i = 2; i < v.size() && flat; ++i) flat = cross3(v[0], v[1], v[i]).sign() == 0;
    if (flat) {
      Pt2 mn = v[0], mx = v[0];
      for (const Pt2& p : v) {
        if (lex_less(p, mn)) mn = p;
        if (lex_less(mx, p)) mx = p;
      }
      v = mn == mx ? std::vector<Pt2>{mn} : std::vector<Pt2>{mn, mx};
      return;
    }
  }
  if (v.size() > 2) {
    bool removed = true;
    while (removed && v.size() > 2) {
      removed = false;
      for (size_t i = 0; i < v.size(); ++i) {
        const Pt2& a = v[(i + v.size() - 1) % v.size()];
        const Pt2& c = v[(i + 1) % v.size()];
        if (cross3(a, v[i], c).sign() == 0) {
          v.erase(v.begin() + i);
          removed = true;
          break;
        }
      }
    }
  }
  if (v.size() > 2) {
    size_t k = 0;
    for (size_t i = 1; i < v.size(); ++i)
      if (lex_less(v[i], v[k])) k = i;
    std::rotate(v.begin(), v.begin() + k, v.end());
  } else if (v.size() == 2) {
    if (lex_less(v[1], v[0])) std::swap(v[0], v[1]);
  }
}

}  // namespace detail

// monotone chain; collinear points are dropped, so the result is strictly
// convex (or a segment / point for degenerate input)
inline Polytope2D convex_hull(std::vector<Pt2> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Polytope2D P;
  if (pts.size() <= 2) {
    P.vertices = pts;
    return P;
  }
  std::vector<Pt2> h;
  auto build = [&](auto begin, auto end) {
    size_t base = h.size();
    for (auto it = begin; it != end; ++it) {
      while (h.size() >= base + 2 && cross3(h[h.size() - 2], h[h.size() - 1], *it).sign() <= 0)
        h.pop_back();
      h.push_back(*it);
    }
    h.pop_back();
  };
  build(pts.begin(), pts.end());
  build(pts.rbegin(), pts.rend());
  P.vertices = h;
  detail::normalize_loop(P.vertices);
  return P;
}

namespace detail {

struct Halfplane {
  QVec a;   // keep side a.p >= b
  Quad b;
  Quad side(const Pt2& p) const { return a[0] * p.x + a[1] * p.y - b; }
};

inline Pt2 edge_cut(const Pt2& p, const Pt2& q, const Quad& sp, const Quad& sq) {
  Quad t = sp / (sp - sq);
  return {p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)};
}

inline std::vector<Pt2> clip_halfplane(const std::vector<Pt2>& v, const Halfplane& h) {
  if (v.empty()) return {};
  if (v.size() == 1) return h.side(v[0]).sign() >= 0 ? v : std::vector<Pt2>{};
  if (v.size() == 2) {
    Quad s0 = h.side(v[0]), s1 = h.side(v[1]);
    if (s0.sign() < 0 && s1.sign() < 0) return {};
    if (s0.sign() >= 0 && s1.sign() >= 0) return v;
    Pt2 cut = edge_cut(v[0], v[1], s0, s1);
    return s0.sign() >= 0 ? std::vector<Pt2>{v[0], cut} : std::vector<Pt2>{cut, v[1]};
  }
  std::vector<Pt2> out;
  for (size_t i = 0; i < v.size(); ++i) {
    const Pt2& p = v[i];
    const Pt2& q = v[(i + 1) % v.size()];
    Quad sp = h.side(p), sq = h.side(q);
    if (sp.sign() >= 0) {
      out.push_back(p);
      if (sq.sign() < 0) out.push_back(edge_cut(p, q, sp, sq));
    } else if (sq.sign() >= 0) {
      out.push_back(edge_cut(p, q, sp, sq));
    }
  }
  return out;
}

}  // namespace detail

inline Polytope2D clip_to_box(const Polytope2D& P, const Box2& box) {
  std::vector<Pt2> v = P.vertices;
  const detail::Halfplane sides[4] = {
      {{Quad(1), Quad(0)}, box.xlo},
      {{Quad(-1), Quad(0)}, -box.xhi},
      {{Quad(0), Quad(1)}, box.ylo},
      {{Quad(0), Quad(-1)}, -box.yhi},
  };
  for (const auto& h : sides) v = detail::clip_halfplane(v, h);
  detail::normalize_loop(v);
  Polytope2D out;
  out.vertices = std::move(v);
  return out;
}

// Hull of the lattice points of X inside the box enlarged about its center,
// clipped back to the box. Exactly the three vertex types a box clip can
// produce: lattice points of X, box corners, edge crossings.
inline Polytope2D boxed_hull_2d(const LatticeSetSpec& X, const Box2& box,
                                const Rational& enlarge = Rational(2), long budget = 2000000) {
  if (X.dim != 2) throw DimensionError("boxed_hull_2d wants a planar lattice set");
  if (!box.proper()) throw PreconditionError("degenerate box");
  if (enlarge < Rational(1)) throw DomainError("enlargement factor below 1");
  Box2 E = box.enlarged(enlarge);
  IntBox ib;
  ib.lo = {qceil(E.xlo), qceil(E.ylo)};
  ib.hi = {qfloor(E.xhi), qfloor(E.yhi)};
  std::vector<Point> pts;
  if (X.kind == LatticeSetSpec::Kind::FiniteList) {
    for (const Point& p : X.points) {
      if (p[0] >= ib.lo[0] && p[0] <= ib.hi[0] && p[1] >= ib.lo[1] && p[1] <= ib.hi[1] &&
          in_lattice(X, p))
        pts.push_back(p);
    }
  } else {
    for (size_t i = 0; i < X.pieces.size(); ++i) {
      auto piece = lattice_points_in_box(piece_with_flags(X, i), ib, budget);
      pts.insert(pts.end(), piece.begin(), piece.end());
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.empty()) throw EmptySetError("no lattice points in the enlarged box");
  std::vector<Pt2> qpts;
  qpts.reserve(pts.size());
  for (const Point& p : pts) qpts.push_back({Quad(p[0]), Quad(p[1])});
  return clip_to_box(convex_hull(std::move(qpts)), box);
}

// ---------------------------------------------------------------------------
// closed-form closures

struct HalfspaceForm {
  ConstraintSystem sys;
};

// one closed convex generator of a union. pell_capped adds, on top of the
// listed rows, every chord q*y - p*x <= -1 (p/q an odd-index convergent of
// sqrt(2)) in the first two coordinates; that family of cuts is the hull
// boundary of {x >= 1, 0 <= y <= sqrt(2) x} over the integers.
struct ClosedPiece {
  ConstraintSystem rows;
  bool pell_capped = false;
};

struct ConvOfUnion {
  std::vector<ClosedPiece> pieces;
};

struct UnknownClosure {};

using ClosureDescription = std::variant<HalfspaceForm, ConvOfUnion, UnknownClosure>;

enum class Region { Interior, Boundary, Outside };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Boundary: return "boundary";
    default: return "outside";
  }
}

// chord cuts q*y - p*x <= -1 whose contact vertices cover x in [1, xmax]
inline std::vector<Row> pell_chord_rows(const Quad& xmax) {
  std::vector<Row> out;
  BigInt p = 1, q = 1;  // even-index convergent, a contact vertex (q, p)
  for (;;) {
    BigInt mp = p + 2 * q, mq = p + q;  // odd-index: the chord through (q,p)
    out.push_back(Row{{-Quad(mp), Quad(mq)}, Sense::Le, Quad(-1)});
    p = mp + 2 * mq;
    q = mp + mq;
    if (Quad(q) >= xmax) break;
  }
  return out;
}

namespace detail {

inline std::vector<Row> lifted_chords(int n, const Quad& xmax) {
  std::vector<Row> out;
  for (const Row& r : pell_chord_rows(xmax)) {
    Row lift;
    lift.coeffs.assign(n, Quad(0));
    lift.coeffs[0] = r.coeffs[0];
    lift.coeffs[1] = r.coeffs[1];
    lift.sense = r.sense;
    lift.rhs = r.rhs;
    out.push_back(lift);
  }
  return out;
}

inline Region eval_rows(const std::vector<Row>& rows, const QVec& pt) {
  bool tight = false;
  for (const Row& r : rows) {
    int s = compare(dot(r.coeffs, pt), r.rhs);
    switch (r.sense) {
      case Sense::Ge:
        if (s < 0) return Region::Outside;
        break;
      case Sense::Le:
        if (s > 0) return Region::Outside;
        break;
      default:
        if (s != 0) return Region::Outside;
    }
    tight = tight || s == 0;
  }
  return tight ? Region::Boundary : Region::Interior;
}

// Eq row pinning a single coordinate, if the piece has one
inline std::optional<std::pair<int, Quad>> piece_level(const ConstraintSystem& cs) {
  for (const Row& r : cs.rows) {
    if (r.sense != Sense::Eq) continue;
    int idx = -1;
    bool single = true;
    for (int j = 0; j < cs.dim; ++j) {
      if (r.coeffs[j].sign() == 0) continue;
      if (idx >= 0) single = false;
      idx = j;
    }
    if (single && idx >= 0) return std::make_pair(idx, r.rhs / r.coeffs[idx]);
  }
  return std::nullopt;
}

// does the piece (all rhs as given) keep coordinate 0 nonnegative
inline bool piece_implies_x0(const ConstraintSystem& cs) {
  LP lp;
  lp.n = cs.dim;
  lp.c.assign(cs.dim, Quad(0));
  lp.c[0] = Quad(1);
  lp.rows = cs.rows;
  lp.nonneg.assign(cs.dim, false);
  LPResult r = solve_lp(lp);
  return r.status == LPStatus::Optimal && r.value.sign() >= 0;
}

// recession wedge of the pell-capped family: y <= sqrt(2) x, both nonnegative,
// flattened onto the piece's level coordinate
inline std::vector<Row> pell_recession_rows(int n, int level_coord) {
  Quad r2 = Quad::sqrt_of(2);
  std::vector<Row> rows;
  Row cone;
  cone.coeffs.assign(n, Quad(0));
  cone.coeffs[0] = r2;
  cone.coeffs[1] = Quad(-1);
  cone.sense = Sense::Ge;
  cone.rhs = Quad(0);
  rows.push_back(cone);
  Row ypos;
  ypos.coeffs.assign(n, Quad(0));
  ypos.coeffs[1] = Quad(1);
  ypos.sense = Sense::Ge;
  ypos.rhs = Quad(0);
  rows.push_back(ypos);
  Row flat;
  flat.coeffs.assign(n, Quad(0));
  flat.coeffs[level_coord] = Quad(1);
  flat.sense = Sense::Eq;
  flat.rhs = Quad(0);
  rows.push_back(flat);
  for (int j = 2; j < n; ++j) {
    if (j == level_coord) continue;
    Row zero;
    zero.coeffs.assign(n, Quad(0));
    zero.coeffs[j] = Quad(1);
    zero.sense = Sense::Eq;
    zero.rhs = Quad(0);
    rows.push_back(zero);
  }
  return rows;
}

// feasibility of pt = sum of one point per row-block; blocks[i] constrains
// u_i against rhs scale theta[i] (a fixed Quad). Returns the LP result of
// maximizing t along dir (or just feasibility when dir is empty).
struct ComboBlock {
  std::vector<Row> rows;
  Quad theta0;       // rhs scale at t = 0
  Quad dtheta;       // d theta / d t
};

inline LPResult combo_lp(const std::vector<ComboBlock>& blocks, const QVec& pt,
                         const QVec& dir, const Quad& tcap) {
  int n = static_cast<int>(pt.size());
  int k = static_cast<int>(blocks.size());
  bool with_t = !dir.empty();
  int nv = k * n + (with_t ? 1 : 0);
  LP lp;
  lp.n = nv;
  lp.c.assign(nv, Quad(0));
  if (with_t) lp.c[nv - 1] = Quad(-1);  // maximize t
  lp.nonneg.assign(nv, false);
  if (with_t) lp.nonneg[nv - 1] = true;
  for (int i = 0; i < k; ++i) {
    for (const Row& r : blocks[i].rows) {
      Row out;
      out.coeffs.assign(nv, Quad(0));
      for (int j = 0; j < n; ++j) out.coeffs[i * n + j] = r.coeffs[j];
      if (with_t) out.coeffs[nv - 1] = -r.rhs * blocks[i].dtheta;
      out.sense = r.sense;
      out.rhs = r.rhs * blocks[i].theta0;
      lp.rows.push_back(out);
    }
  }
  for (int j = 0; j < n; ++j) {
    Row sum;
    sum.coeffs.assign(nv, Quad(0));
    for (int i = 0; i < k; ++i) sum.coeffs[i * n + j] = Quad(1);
    if (with_t) sum.coeffs[nv - 1] = -dir[j];
    sum.sense = Sense::Eq;
    sum.rhs = pt[j];
    lp.rows.push_back(sum);
  }
  if (with_t) {
    Row cap;
    cap.coeffs.assign(nv, Quad(0));
    cap.coeffs[nv - 1] = Quad(1);
    cap.sense = Sense::Le;
    cap.rhs = tcap;
    lp.rows.push_back(cap);
  }
  return solve_lp(lp);
}

// union of polyhedral pieces, weights free: stack the scaled-piece rows with
// theta variables and ask for feasibility / wiggle room along dir
inline LPResult free_theta_lp(const std::vector<ClosedPiece>& pieces, const QVec& pt,
                              const QVec& dir, const Quad& tcap) {
  int n = static_cast<int>(pt.size());
  int k = static_cast<int>(pieces.size());
  bool with_t = !dir.empty();
  int nv = k * (n + 1) + (with_t ? 1 : 0);
  LP lp;
  lp.n = nv;
  lp.c.assign(nv, Quad(0));
  if (with_t) lp.c[nv - 1] = Quad(-1);
  lp.nonneg.assign(nv, false);
  for (int i = 0; i < k; ++i) lp.nonneg[k * n + i] = true;  // theta_i >= 0
  if (with_t) lp.nonneg[nv - 1] = true;
  for (int i = 0; i < k; ++i) {
    for (const Row& r : pieces[i].rows.rows) {
      Row out;
      out.coeffs.assign(nv, Quad(0));
      for (int j = 0; j < n; ++j) out.coeffs[i * n + j] = r.coeffs[j];
      out.coeffs[k * n + i] = -r.rhs;
      out.sense = r.sense;
      out.rhs = Quad(0);
      lp.rows.push_back(out);
    }
  }
  Row unit;
  unit.coeffs.assign(nv, Quad(0));
  for (int i = 0; i < k; ++i) unit.coeffs[k * n + i] = Quad(1);
  unit.sense = Sense::Eq;
  unit.rhs = Quad(1);
  lp.rows.push_back(unit);
  for (int j = 0; j < n; ++j) {
    Row sum;
    sum.coeffs.assign(nv, Quad(0));
    for (int i = 0; i < k; ++i) sum.coeffs[i * n + j] = Quad(1);
    if (with_t) sum.coeffs[nv - 1] = -dir[j];
    sum.sense = Sense::Eq;
    sum.rhs = pt[j];
    lp.rows.push_back(sum);
  }
  if (with_t) {
    Row cap;
    cap.coeffs.assign(nv, Quad(0));
    cap.coeffs[nv - 1] = Quad(1);
    cap.sense = Sense::Le;
    cap.rhs = tcap;
    lp.rows.push_back(cap);
  }
  return solve_lp(lp);
}

inline Region classify_polyhedral_union(const std::vector<ClosedPiece>& pieces, const QVec& pt) {
  int n = static_cast<int>(pt.size());
  LPResult feas = free_theta_lp(pieces, pt, {}, Quad(0));
  if (feas.status == LPStatus::Infeasible) return Region::Outside;
  for (int j = 0; j < n; ++j) {
    for (int sgn : {+1, -1}) {
      QVec dir(n, Quad(0));
      dir[j] = Quad(sgn);
      LPResult r = free_theta_lp(pieces, pt, dir, Quad(1));
      if (r.status != LPStatus::Optimal) throw PreconditionError("wiggle probe failed");
      if (r.value.sign() == 0) return Region::Boundary;
    }
  }
  return Region::Interior;
}

// two-piece union where a pinned coordinate fixes the convex weights; this is
// the shape the pell-capped pieces need, since their chord list has to be cut
// off at a bound derived from the actual weight
inline Region classify_leveled_pair(const std::vector<ClosedPiece>& pieces, const QVec& pt) {
  int n = static_cast<int>(pt.size());
  auto lv0 = piece_level(pieces[0].rows), lv1 = piece_level(pieces[1].rows);
  if (!lv0 || !lv1 || lv0->first != lv1->first || lv0->second == lv1->second)
    throw UnsupportedError("union shape outside the registered families");
  int lc = lv0->first;
  size_t lo = 0, hi = 1;
  if (lv1->second < lv0->second) std::swap(lo, hi);
  Quad L0 = (lo == 0 ? lv0 : lv1)->second, L1 = (hi == 1 ? lv1 : lv0)->second;
  for (size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].pell_capped && !piece_implies_x0(pieces[1 - i].rows))
      throw UnsupportedError("cannot bound the chord range for this union");

  Quad th = (pt[lc] - L0) / (L1 - L0);  // weight of the upper piece
  if (th.sign() < 0 || th > Quad(1)) return Region::Outside;

  auto rows_for = [&](const ClosedPiece& cp, const Quad& xmax) {
    std::vector<Row> rows = cp.rows.rows;
    if (cp.pell_capped) {
      auto ch = lifted_chords(n, xmax);
      rows.insert(rows.end(), ch.begin(), ch.end());
    }
    return rows;
  };

  if (th.sign() == 0 || th == Quad(1)) {
    // pure slice: the far piece enters through its recession cone only
    const ClosedPiece& here = th.sign() == 0 ? pieces[lo] : pieces[hi];
    const ClosedPiece& far = th.sign() == 0 ? pieces[hi] : pieces[lo];
    std::vector<ComboBlock> blocks(2);
    blocks[0].rows = rows_for(here, abs(pt[0]) + Quad(2));
    blocks[0].theta0 = Quad(1);
    blocks[0].dtheta = Quad(0);
    blocks[1].rows = far.pell_capped ? pell_recession_rows(n, lc) : far.rows.rows;
    blocks[1].theta0 = Quad(0);  // homogenized: recession directions
    blocks[1].dtheta = Quad(0);
    LPResult feas = combo_lp(blocks, pt, {}, Quad(0));
    // the slice level itself is a tight valid inequality
    return feas.status == LPStatus::Infeasible ? Region::Outside : Region::Boundary;
  }

  Quad margin = abs(pt[0]) + Quad(2);
  auto blocks_at = [&](const Quad& th_lo_scale) {
    std::vector<ComboBlock> blocks(2);
    Quad bound = margin / th_lo_scale;
    blocks[0].rows = rows_for(pieces[lo], bound);
    blocks[0].theta0 = Quad(1) - th;
    blocks[1].rows = rows_for(pieces[hi], bound);
    blocks[1].theta0 = th;
    return blocks;
  };
  Quad worst = std::min(th, Quad(1) - th) / Quad(2);
  auto blocks = blocks_at(worst);
  LPResult feas = combo_lp(blocks, pt, {}, Quad(0));
  if (feas.status == LPStatus::Infeasible) return Region::Outside;
  for (int j = 0; j < n; ++j) {
    for (int sgn : {+1, -1}) {
      QVec dir(n, Quad(0));
      dir[j] = Quad(sgn);
      Quad tcap = Quad(1);
      Quad dth;
      if (j == lc) {
        dth = Quad(sgn) / (L1 - L0);
        tcap = std::min(Quad(1), std::min(th, Quad(1) - th) * abs(L1 - L0) / Quad(2));
      }
      auto wiggle = blocks_at(worst);
      wiggle[0].dtheta = -dth;
      wiggle[1].dtheta = dth;
      LPResult r = combo_lp(wiggle, pt, dir, tcap);
      if (r.status != LPStatus::Optimal) throw PreconditionError("wiggle probe failed");
      if (r.value.sign() == 0) return Region::Boundary;
    }
  }
  return Region::Interior;
}

}  // namespace detail

inline Region membership(const ClosureDescription& C, const QVec& pt) {
  if (std::holds_alternative<UnknownClosure>(C))
    throw PreconditionError("membership against an unknown closure");
  if (const HalfspaceForm* h = std::get_if<HalfspaceForm>(&C)) {
    if (static_cast<int>(pt.size()) != h->sys.dim) throw DimensionError("point dimension mismatch");
    return detail::eval_rows(h->sys.rows, pt);
  }
  const ConvOfUnion& U = std::get<ConvOfUnion>(C);
  if (U.pieces.empty()) throw PreconditionError("union of nothing");
  int n = U.pieces[0].rows.dim;
  if (static_cast<int>(pt.size()) != n) throw DimensionError("point dimension mismatch");
  if (U.pieces.size() == 1) {
    std::vector<Row> rows = U.pieces[0].rows.rows;
    if (U.pieces[0].pell_capped) {
      auto ch = detail::lifted_chords(n, abs(pt[0]) + Quad(2));
      rows.insert(rows.end(), ch.begin(), ch.end());
    }
    return detail::eval_rows(rows, pt);
  }
  bool any_pell = false;
  for (const ClosedPiece& cp : U.pieces) any_pell = any_pell || cp.pell_capped;
  if (!any_pell) return detail::classify_polyhedral_union(U.pieces, pt);
  if (U.pieces.size() != 2)
    throw UnsupportedError("pell-capped unions are only handled pairwise");
  return detail::classify_leveled_pair(U.pieces, pt);
}

// ---------------------------------------------------------------------------
// registry of closed forms

namespace detail {

inline std::optional<ConstraintSystem> wedge_closure(const LatticeSetSpec& X) {
  if (X.kind != LatticeSetSpec::Kind::PolyLattice || X.dim != 2) return std::nullopt;
  if (X.pieces.size() != 1 || X.pieces[0].rows.size() != 1) return std::nullopt;
  if (X.nonneg != std::vector<bool>{true, true}) return std::nullopt;
  Row r = X.pieces[0].rows[0];
  if (r.sense == Sense::Eq || r.rhs.sign() != 0) return std::nullopt;
  if (r.sense == Sense::Ge) {
    for (Quad& c : r.coeffs) c = -c;
    r.sense = Sense::Le;
  }
  if (r.coeffs[1].sign() <= 0) return std::nullopt;
  Quad slope = -r.coeffs[0] / r.coeffs[1];
  if (slope.is_rational() || slope.sign() <= 0) return std::nullopt;
  // lattice rays hug both edges of the wedge, so the closure is the wedge
  ConstraintSystem cs;
  cs.dim = 2;
  cs.rows = {Row{{-slope, Quad(1)}, Sense::Le, Quad(0)},
             Row{{Quad(1), Quad(0)}, Sense::Ge, Quad(0)},
             Row{{Quad(0), Quad(1)}, Sense::Ge, Quad(0)}};
  return cs;
}

inline std::optional<ConstraintSystem> slab_closure(const LatticeSetSpec& X) {
  if (X.kind != LatticeSetSpec::Kind::PolyLattice || X.dim != 3) return std::nullopt;
  if (X.pieces.size() != 1 || X.pieces[0].rows.size() != 1) return std::nullopt;
  for (bool f : X.nonneg)
    if (f) return std::nullopt;
  Row r = X.pieces[0].rows[0];
  if (r.sense == Sense::Eq) return std::nullopt;
  if (r.sense == Sense::Ge) {
    for (Quad& c : r.coeffs) c = -c;
    r.rhs = -r.rhs;
    r.sense = Sense::Le;
  }
  // s*(x - y) + z <= h with s a pure surd: every parallel slab below the
  // boundary contains integer points, so the halfspace is its own closure
  const Quad& w = r.coeffs[2];
  if (!w.is_rational() || w.sign() <= 0) return std::nullopt;
  Quad s = r.coeffs[0] / w;
  if (s.is_rational() || s.a() != Rational(0)) return std::nullopt;
  if (r.coeffs[1] / w != -s) return std::nullopt;
  if (!(r.rhs / w).is_rational()) return std::nullopt;
  ConstraintSystem cs;
  cs.dim = 3;
  cs.rows = {X.pieces[0].rows[0]};
  return cs;
}

}  // namespace detail

inline ClosureDescription analytic_closure(const LatticeSetSpec& X) {
  if (auto w = detail::wedge_closure(X)) return HalfspaceForm{*w};
  if (auto s = detail::slab_closure(X)) return HalfspaceForm{*s};
  // the two-piece union with a cone at level 0 and a shifted copy at level 1:
  // the cone is its own lattice hull, the shifted piece closes to the chord
  // description over x >= 1
  if (X.kind == LatticeSetSpec::Kind::UnionConvLattice && X.dim == 3) {
    Quad r2 = Quad::sqrt_of(2);
    LatticeSetSpec probe;
    probe.kind = LatticeSetSpec::Kind::UnionConvLattice;
    probe.dim = 3;
    ConstraintSystem p1{3,
                        {Row{{r2, Quad(-1), Quad(0)}, Sense::Ge, Quad(0)},
                         Row{{Quad(0), Quad(1), Quad(0)}, Sense::Ge, Quad(0)},
                         Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, Quad(0)}}};
    ConstraintSystem p2{3,
                        {Row{{r2, Quad(-1), Quad(0)}, Sense::Ge, Quad(0)},
                         Row{{Quad(0), Quad(1), Quad(0)}, Sense::Ge, Quad(0)},
                         Row{{Quad(1), Quad(0), Quad(0)}, Sense::Ge, Quad(Rational(1) / 2)},
                         Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, Quad(1)}}};
    probe.pieces = {p1, p2};
    if (X == probe) {
      ConvOfUnion u;
      u.pieces.push_back(ClosedPiece{p1, false});
      ConstraintSystem k2{3,
                          {Row{{Quad(1), Quad(0), Quad(0)}, Sense::Ge, Quad(1)},
                           Row{{Quad(0), Quad(1), Quad(0)}, Sense::Ge, Quad(0)},
                           Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, Quad(1)}}};
      u.pieces.push_back(ClosedPiece{k2, true});
      return u;
    }
  }
  return UnknownClosure{};
}

// ---------------------------------------------------------------------------
// recession cones

namespace detail {

// is the cone row implied by the (homogeneous) system
inline bool cone_implies(const std::vector<Row>& sys, int dim, const Row& r) {
  auto dir_ok = [&](const QVec& c) {
    LP lp;
    lp.n = dim;
    lp.c = c;
    lp.rows = sys;
    lp.nonneg.assign(dim, false);
    LPResult res = solve_lp(lp);
    return res.status == LPStatus::Optimal && res.value.sign() >= 0;
  };
  QVec neg(r.coeffs.size());
  for (size_t i = 0; i < neg.size(); ++i) neg[i] = -r.coeffs[i];
  switch (r.sense) {
    case Sense::Ge: return dir_ok(r.coeffs);
    case Sense::Le: return dir_ok(neg);
    default: return dir_ok(r.coeffs) && dir_ok(neg);
  }
}

inline bool cone_contains(const ConstraintSystem& a, const ConstraintSystem& b) {
  for (const Row& r : b.rows) {
    std::vector<Row> sys = a.rows;
    if (!cone_implies(sys, a.dim, r)) return false;
  }
  return true;
}

}  // namespace detail

// homogenize (every rhs to zero) and strip rows the rest already imply
inline ConstraintSystem recession_cone(const ConstraintSystem& piece) {
  ConstraintSystem cs;
  cs.dim = piece.dim;
  for (Row r : piece.rows) {
    r.rhs = Quad(0);
    bool dup = false;
    for (const Row& have : cs.rows) dup = dup || have == r;
    if (!dup) cs.rows.push_back(r);
  }
  for (size_t i = 0; i < cs.rows.size();) {
    std::vector<Row> others;
    for (size_t j = 0; j < cs.rows.size(); ++j)
      if (j != i) others.push_back(cs.rows[j]);
    if (detail::cone_implies(others, cs.dim, cs.rows[i]))
      cs.rows.erase(cs.rows.begin() + i);
    else
      ++i;
  }
  return cs;
}

inline ConstraintSystem recession_cone(const LatticeSetSpec& X) {
  if (X.kind == LatticeSetSpec::Kind::FiniteList)
    throw PreconditionError("recession cone of a finite list");
  if (X.pieces.empty()) throw PreconditionError("no pieces");
  std::vector<ConstraintSystem> cones;
  for (size_t i = 0; i < X.pieces.size(); ++i)
    cones.push_back(recession_cone(piece_with_flags(X, i)));
  for (size_t i = 1; i < cones.size(); ++i) {
    if (!detail::cone_contains(cones[0], cones[i]) || !detail::cone_contains(cones[i], cones[0]))
      throw UnsupportedError("pieces have different recession cones");
  }
  return cones[0];
}

}  // namespace dualgap
