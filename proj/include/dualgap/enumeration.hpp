#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "dualgap/model.hpp"
#include "dualgap/simplex.hpp"

// Box enumeration over constraint pieces, plus LP-certified coordinate bounds
// that turn "enumerate a box" into an exact minimization over the whole piece.

namespace dualgap {

struct IntBox {
  Point lo, hi;  // inclusive
  BigInt cell_count() const {
    BigInt n = 1;
    for (size_t i = 0; i < lo.size(); ++i) {
      if (hi[i] < lo[i]) return BigInt(0);
      n *= hi[i] - lo[i] + 1;
    }
    return n;
  }
};

// every lattice point of the piece inside the box, in odometer order
inline std::vector<Point> lattice_points_in_box(const ConstraintSystem& cs, const IntBox& box,
                                                long budget = 2000000) {
  std::vector<Point> out;
  if (box.cell_count() == 0) return out;
  if (box.cell_count() > budget) throw PreconditionError("box enumeration over budget");
  Point p = box.lo;
  for (;;) {
    if (in_piece(cs, p)) out.push_back(p);
    int i = cs.dim - 1;
    while (i >= 0) {
      if (p[i] < box.hi[i]) {
        ++p[i];
        break;
      }
      p[i] = box.lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

// LP-certified integer bounds for each coordinate over the piece, or nullopt
// if some direction is unbounded
inline std::optional<IntBox> certified_box(const ConstraintSystem& cs) {
  IntBox box;
  box.lo.assign(cs.dim, BigInt(0));
  box.hi.assign(cs.dim, BigInt(0));
  for (int i = 0; i < cs.dim; ++i) {
    for (int dir : {+1, -1}) {
      LP lp;
      lp.n = cs.dim;
      lp.c.assign(cs.dim, Quad(0));
      lp.c[i] = Quad(dir);
      lp.rows = cs.rows;
      lp.nonneg.assign(cs.dim, false);
      LPResult r = solve_lp(lp);
      if (r.status == LPStatus::Infeasible) {
        box.lo.assign(cs.dim, BigInt(1));
        box.hi.assign(cs.dim, BigInt(0));  // empty box
        return box;
      }
      if (r.status == LPStatus::Unbounded) return std::nullopt;
      if (dir > 0)
        box.lo[i] = qceil(r.value);
      else
        box.hi[i] = qfloor(-r.value);
    }
  }
  return box;
}

// first lattice point found in growing centered boxes; deterministic
inline std::optional<Point> find_lattice_point(const ConstraintSystem& cs, int max_radius = 20) {
  for (int radius : {0, 1, 2, 3, 5, 8, 13, 20}) {
    if (radius > max_radius) break;
    IntBox box;
    box.lo.assign(cs.dim, BigInt(-radius));
    box.hi.assign(cs.dim, BigInt(radius));
    auto pts = lattice_points_in_box(cs, box);
    if (!pts.empty()) return pts.front();
  }
  return std::nullopt;
}

// small integer recession direction of the piece with w.r < 0, if one exists
// within the search radius
inline std::optional<Point> integer_descent_ray(const ConstraintSystem& cs, const QVec& w,
                                                int radius = 3) {
  IntBox box;
  box.lo.assign(cs.dim, BigInt(-radius));
  box.hi.assign(cs.dim, BigInt(radius));
  Point r = box.lo;
  for (;;) {
    bool zero = true;
    for (const BigInt& v : r) zero = zero && v == 0;
    if (!zero && dot(w, r).sign() < 0) {
      bool ok = true;
      for (const Row& row : cs.rows) {
        int s = dot(row.coeffs, r).sign();
        ok = row.sense == Sense::Ge ? s >= 0 : row.sense == Sense::Le ? s <= 0 : s == 0;
        if (!ok) break;
      }
      if (ok) return r;
    }
    int i = cs.dim - 1;
    while (i >= 0) {
      if (r[i] < box.hi[i]) {
        ++r[i];
        break;
      }
      r[i] = box.lo[i];
      --i;
    }
    if (i < 0) break;
  }
  return std::nullopt;
}

}  // namespace dualgap
