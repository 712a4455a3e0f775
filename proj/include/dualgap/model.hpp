#pragma once

#include <string>
#include <vector>

#include "dualgap/extreal.hpp"
#include "dualgap/quad.hpp"

namespace dualgap {

using QVec = std::vector<Quad>;
using Point = std::vector<BigInt>;

enum class Sense { Ge, Le, Eq };

inline const char* to_symbol(Sense s) {
  switch (s) {
    case Sense::Ge: return ">=";
    case Sense::Le: return "<=";
    default: return "=";
  }
}

struct Row {
  QVec coeffs;
  Sense sense = Sense::Ge;
  Quad rhs;

  friend bool operator==(const Row& x, const Row& y) {
    return x.sense == y.sense && x.coeffs == y.coeffs && x.rhs == y.rhs;
  }
};

template <class Vec>
Quad dot(const QVec& w, const Vec& x) {
  if (w.size() != x.size()) throw DimensionError("dot: size mismatch");
  Quad s;
  for (size_t i = 0; i < w.size(); ++i) s += w[i] * Quad(x[i]);
  return s;
}

template <class Vec>
bool row_holds(const Row& r, const Vec& x) {
  int s = compare(dot(r.coeffs, x), r.rhs);
  switch (r.sense) {
    case Sense::Ge: return s >= 0;
    case Sense::Le: return s <= 0;
    default: return s == 0;
  }
}

struct ConstraintSystem {
  int dim = 0;
  std::vector<Row> rows;

  friend bool operator==(const ConstraintSystem& x, const ConstraintSystem& y) {
    return x.dim == y.dim && x.rows == y.rows;
  }
};

// Lattice ground set X. Three shapes: an explicit finite list, the lattice
// points of one constraint system, or of a finite union of systems. Nonneg
// flags apply on top of any shape.
struct LatticeSetSpec {
  enum class Kind { FiniteList, PolyLattice, UnionConvLattice };

  Kind kind = Kind::PolyLattice;
  int dim = 0;
  std::vector<Point> points;            // FiniteList
  std::vector<ConstraintSystem> pieces; // PolyLattice uses pieces[0]
  std::vector<bool> nonneg;             // optional, per coordinate

  friend bool operator==(const LatticeSetSpec& x, const LatticeSetSpec& y) {
    return x.kind == y.kind && x.dim == y.dim && x.points == y.points && x.pieces == y.pieces &&
           x.nonneg == y.nonneg;
  }
};

inline bool nonneg_ok(const LatticeSetSpec& s, const Point& p) {
  for (size_t i = 0; i < s.nonneg.size(); ++i)
    if (s.nonneg[i] && p[i] < 0) return false;
  return true;
}

inline bool in_piece(const ConstraintSystem& cs, const Point& p) {
  for (const Row& r : cs.rows)
    if (!row_holds(r, p)) return false;
  return true;
}

inline bool in_lattice(const LatticeSetSpec& s, const Point& p) {
  if (static_cast<int>(p.size()) != s.dim) throw DimensionError("point dimension mismatch");
  if (!nonneg_ok(s, p)) return false;
  if (s.kind == LatticeSetSpec::Kind::FiniteList) {
    for (const Point& q : s.points)
      if (q == p) return true;
    return false;
  }
  for (const ConstraintSystem& cs : s.pieces)
    if (in_piece(cs, p)) return true;
  return false;
}

// Piece constraint system with nonneg flags folded in as explicit rows.
inline ConstraintSystem piece_with_flags(const LatticeSetSpec& s, size_t idx) {
  ConstraintSystem cs = s.pieces.at(idx);
  for (size_t i = 0; i < s.nonneg.size(); ++i) {
    if (!s.nonneg[i]) continue;
    Row r;
    r.coeffs.assign(s.dim, Quad(0));
    r.coeffs[i] = Quad(1);
    r.sense = Sense::Ge;
    r.rhs = Quad(0);
    cs.rows.push_back(r);
  }
  return cs;
}

// min c.x  s.t.  coupling rows on x,  x in lattice set.
struct Problem {
  std::string name;
  int n = 0;
  long d = 2;
  QVec objective;
  ConstraintSystem coupling;
  LatticeSetSpec lattice;

  friend bool operator==(const Problem& x, const Problem& y) {
    return x.n == y.n && x.d == y.d && x.objective == y.objective && x.coupling == y.coupling &&
           x.lattice == y.lattice;
  }
};

inline bool coupling_holds(const Problem& p, const Point& x) {
  for (const Row& r : p.coupling.rows)
    if (!row_holds(r, x)) return false;
  return true;
}

namespace detail {
inline void check_quad_field(const Quad& q, long d, const char* what) {
  if (!q.is_rational() && q.d() != d)
    throw DomainError(std::string(what) + ": surd index differs from problem");
}
}  // namespace detail

inline void validate(const Problem& p) {
  if (p.n <= 0) throw DimensionError("problem dimension must be positive");
  if (!is_square_free(p.d)) throw DomainError("problem surd index must be square-free");
  if (static_cast<int>(p.objective.size()) != p.n) throw DimensionError("objective size mismatch");
  for (const Quad& q : p.objective) detail::check_quad_field(q, p.d, "objective");
  auto check_system = [&](const ConstraintSystem& cs, const char* what) {
    if (cs.dim != p.n) throw DimensionError(std::string(what) + ": system dimension mismatch");
    for (const Row& r : cs.rows) {
      if (static_cast<int>(r.coeffs.size()) != p.n)
        throw DimensionError(std::string(what) + ": row size mismatch");
      for (const Quad& q : r.coeffs) detail::check_quad_field(q, p.d, what);
      detail::check_quad_field(r.rhs, p.d, what);
    }
  };
  check_system(p.coupling, "coupling");
  const LatticeSetSpec& s = p.lattice;
  if (s.dim != p.n) throw DimensionError("lattice dimension mismatch");
  if (!s.nonneg.empty() && static_cast<int>(s.nonneg.size()) != p.n)
    throw DimensionError("nonneg flag count mismatch");
  if (s.kind == LatticeSetSpec::Kind::FiniteList) {
    if (!s.pieces.empty()) throw DomainError("finite lattice with constraint pieces");
    for (const Point& q : s.points) {
      if (static_cast<int>(q.size()) != p.n) throw DimensionError("lattice point size mismatch");
      if (!nonneg_ok(s, q)) throw DomainError("finite lattice point violates nonneg flag");
    }
  } else {
    if (!s.points.empty()) throw DomainError("constraint lattice with explicit points");
    if (s.kind == LatticeSetSpec::Kind::PolyLattice && s.pieces.size() != 1)
      throw DomainError("poly lattice needs exactly one piece");
    if (s.kind == LatticeSetSpec::Kind::UnionConvLattice && s.pieces.empty())
      throw DomainError("union lattice needs at least one piece");
    for (const ConstraintSystem& cs : s.pieces) check_system(cs, "lattice");
  }
}

}  // namespace dualgap
