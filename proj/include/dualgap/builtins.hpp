#pragma once

#include "dualgap/model.hpp"

// Three small worked instances over Z[x] with sqrt(2) data. All have n <= 3
// and a single irrational direction, which keeps every downstream routine
// exact. ex1: unbounded dual, empty closed relaxation value at -inf, finite
// primal. ex2: duality gap with the dual infimum not attained on the inner
// problem. ex3: zero gap, attained everywhere.

namespace dualgap {

inline Problem builtin_ex1() {
  Quad r2 = Quad::sqrt_of(2);
  Problem p;
  p.name = "ex1";
  p.n = 2;
  p.objective = {Quad(-1), Quad(0)};
  p.coupling.dim = 2;
  p.coupling.rows = {Row{{-r2, Quad(1)}, Sense::Ge, Quad(0)}};
  p.lattice.kind = LatticeSetSpec::Kind::PolyLattice;
  p.lattice.dim = 2;
  p.lattice.pieces = {ConstraintSystem{2, {Row{{-r2, Quad(1)}, Sense::Le, Quad(0)}}}};
  p.lattice.nonneg = {true, true};
  validate(p);
  return p;
}

inline Problem builtin_ex2() {
  Quad r2 = Quad::sqrt_of(2);
  Problem p;
  p.name = "ex2";
  p.n = 3;
  p.objective = {Quad(0), Quad(0), Quad(-1)};
  p.coupling.dim = 3;
  p.coupling.rows = {Row{{-r2, Quad(1), Quad(0)}, Sense::Ge, Quad(0)}};
  p.lattice.kind = LatticeSetSpec::Kind::UnionConvLattice;
  p.lattice.dim = 3;
  ConstraintSystem p1{3,
                      {Row{{r2, Quad(-1), Quad(0)}, Sense::Ge, Quad(0)},
                       Row{{Quad(0), Quad(1), Quad(0)}, Sense::Ge, Quad(0)},
                       Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, Quad(0)}}};
  ConstraintSystem p2{3,
                      {Row{{r2, Quad(-1), Quad(0)}, Sense::Ge, Quad(0)},
                       Row{{Quad(0), Quad(1), Quad(0)}, Sense::Ge, Quad(0)},
                       Row{{Quad(1), Quad(0), Quad(0)}, Sense::Ge, Quad(Rational(1) / 2)},
                       Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, Quad(1)}}};
  p.lattice.pieces = {p1, p2};
  validate(p);
  return p;
}

inline Problem builtin_ex3() {
  Quad r2 = Quad::sqrt_of(2);
  Problem p;
  p.name = "ex3";
  p.n = 3;
  p.objective = {Quad(0), Quad(0), Quad(1)};
  p.coupling.dim = 3;
  p.coupling.rows = {Row{{Quad(1), Quad(0), Quad(0)}, Sense::Eq, Quad(1)},
                     Row{{Quad(0), Quad(1), Quad(0)}, Sense::Eq, Quad(1)},
                     Row{{Quad(0), Quad(0), Quad(1)}, Sense::Ge, Quad(1)}};
  p.lattice.kind = LatticeSetSpec::Kind::PolyLattice;
  p.lattice.dim = 3;
  p.lattice.pieces = {ConstraintSystem{3, {Row{{r2, -r2, Quad(1)}, Sense::Le, Quad(1)}}}};
  validate(p);
  return p;
}

inline Problem builtin_problem(const std::string& name) {
  if (name == "ex1") return builtin_ex1();
  if (name == "ex2") return builtin_ex2();
  if (name == "ex3") return builtin_ex3();
  throw DomainError("no builtin problem named '" + name + "'");
}

inline std::vector<std::string> builtin_names() { return {"ex1", "ex2", "ex3"}; }

}  // namespace dualgap
