#include <catch2/catch_amalgamated.hpp>

#include <dualgap/builtins.hpp>
#include <dualgap/relaxation.hpp>

using namespace dualgap;

namespace {

Quad rt2() { return Quad::sqrt_of(2); }

Problem finite_toy() {
  Problem p;
  p.name = "toy";
  p.n = 2;
  p.objective = {Quad(-1), Quad(-1)};
  p.coupling.dim = 2;
  p.coupling.rows = {Row{{Quad(1), Quad(1)}, Sense::Ge, Quad(1)}};
  p.lattice.kind = LatticeSetSpec::Kind::FiniteList;
  p.lattice.dim = 2;
  p.lattice.points = {{BigInt(0), BigInt(0)}, {BigInt(1), BigInt(0)}, {BigInt(0), BigInt(1)}};
  validate(p);
  return p;
}

// planar set with no registered closure: 2x + 3y >= 6 over the nonnegative grid
Problem ramp_2d() {
  Problem p;
  p.name = "ramp";
  p.n = 2;
  p.objective = {Quad(1), Quad(1)};
  p.coupling.dim = 2;
  p.lattice.kind = LatticeSetSpec::Kind::PolyLattice;
  p.lattice.dim = 2;
  p.lattice.pieces = {ConstraintSystem{2, {Row{{Quad(2), Quad(3)}, Sense::Ge, Quad(6)}}}};
  p.lattice.nonneg = {true, true};
  validate(p);
  return p;
}

Problem cube_sum() {
  Problem p;
  p.name = "cube";
  p.n = 3;
  p.objective = {Quad(1), Quad(1), Quad(1)};
  p.coupling.dim = 3;
  p.coupling.rows = {Row{{Quad(1), Quad(1), Quad(1)}, Sense::Ge, Quad(5)}};
  p.lattice.kind = LatticeSetSpec::Kind::PolyLattice;
  p.lattice.dim = 3;
  p.lattice.pieces = {ConstraintSystem{3,
                                       {Row{{Quad(1), Quad(0), Quad(0)}, Sense::Le, Quad(2)},
                                        Row{{Quad(0), Quad(1), Quad(0)}, Sense::Le, Quad(2)},
                                        Row{{Quad(0), Quad(0), Quad(1)}, Sense::Le, Quad(2)}}}};
  p.lattice.nonneg = {true, true, true};
  validate(p);
  return p;
}

Problem slab_half() {
  Problem p;
  p.name = "slab-half";
  p.n = 3;
  p.objective = {Quad(0), Quad(0), Quad(1)};
  p.coupling.dim = 3;
  p.lattice.kind = LatticeSetSpec::Kind::PolyLattice;
  p.lattice.dim = 3;
  p.lattice.pieces = {
      ConstraintSystem{3, {Row{{rt2(), -rt2(), Quad(1)}, Sense::Le, Quad(Rational(1, 2))}}}};
  validate(p);
  return p;
}

void check_attained(const Problem& p, const RelaxValue& rv) {
  REQUIRE(rv.attained);
  REQUIRE(rv.witness.has_value());
  REQUIRE(rv.value.is_finite());
  REQUIRE(dot(p.objective, *rv.witness) == rv.value.value());
  for (const Row& r : p.coupling.rows) REQUIRE(row_holds(r, *rv.witness));
}

void check_unbounded(const Problem& p, const RelaxValue& rv) {
  REQUIRE(rv.value.is_neg_inf());
  REQUIRE_FALSE(rv.attained);
  REQUIRE(rv.ray.has_value());
  REQUIRE(rv.ray_base.has_value());
  REQUIRE(dot(p.objective, *rv.ray).sign() < 0);
}

}  // namespace

TEST_CASE("closed hull relaxations of the builtin problems") {
  SECTION("ex1 slides to minus infinity along the irrational ray") {
    Problem p = builtin_ex1();
    RelaxValue rv = solve_closed_conv(p);
    check_unbounded(p, rv);
    REQUIRE(rv.method == RelaxMethod::Analytic);
    // every feasible point and every feasible direction hugs y = sqrt(2) x
    REQUIRE((*rv.ray)[1] == rt2() * (*rv.ray)[0]);
    REQUIRE((*rv.ray)[0].sign() > 0);
    REQUIRE((*rv.ray_base)[1] == rt2() * (*rv.ray_base)[0]);
  }
  SECTION("ex2 pins the union onto the cone edge") {
    Problem p = builtin_ex2();
    RelaxValue rv = solve_closed_conv(p);
    check_attained(p, rv);
    REQUIRE(rv.value == ExtReal(Quad(0)));
    REQUIRE((*rv.witness)[2] == Quad(0));
    REQUIRE((*rv.witness)[1] == rt2() * (*rv.witness)[0]);
  }
  SECTION("ex3 is forced onto a single point of the slab boundary") {
    Problem p = builtin_ex3();
    RelaxValue rv = solve_closed_conv(p);
    check_attained(p, rv);
    REQUIRE(rv.value == ExtReal(Quad(1)));
    REQUIRE(*rv.witness == QVec{Quad(1), Quad(1), Quad(1)});
  }
}

TEST_CASE("lattice hull relaxations of the builtin problems") {
  SECTION("ex1 keeps only the apex of the ray") {
    Problem p = builtin_ex1();
    RelaxValue rv = solve_conv(p);
    check_attained(p, rv);
    REQUIRE(rv.value == ExtReal(Quad(0)));
    REQUIRE(*rv.witness == QVec{Quad(0), Quad(0)});
  }
  SECTION("ex2 keeps only the origin") {
    Problem p = builtin_ex2();
    RelaxValue rv = solve_conv(p);
    check_attained(p, rv);
    REQUIRE(rv.value == ExtReal(Quad(0)));
    REQUIRE(*rv.witness == QVec{Quad(0), Quad(0), Quad(0)});
  }
  SECTION("ex3 agrees with the closed value") {
    Problem p = builtin_ex3();
    RelaxValue rv = solve_conv(p);
    check_attained(p, rv);
    REQUIRE(rv.value == ExtReal(Quad(1)));
    REQUIRE(*rv.witness == QVec{Quad(1), Quad(1), Quad(1)});
  }
}

TEST_CASE("finite lists reduce to a weight problem") {
  Problem p = finite_toy();
  SECTION("both relaxations agree on the segment optimum") {
    for (RelaxValue rv : {solve_closed_conv(p), solve_conv(p)}) {
      check_attained(p, rv);
      REQUIRE(rv.value == ExtReal(Quad(-1)));
      REQUIRE(rv.method == RelaxMethod::FiniteLP);
      const QVec& w = *rv.witness;
      REQUIRE(w[0] + w[1] == Quad(1));
      REQUIRE(w[0].sign() >= 0);
      REQUIRE(w[1].sign() >= 0);
    }
  }
  SECTION("an unreachable coupling row gives plus infinity") {
    p.coupling.rows = {Row{{Quad(1), Quad(1)}, Sense::Ge, Quad(5)}};
    for (const RelaxValue& rv : {solve_closed_conv(p), solve_conv(p)}) {
      REQUIRE(rv.value.is_pos_inf());
      REQUIRE_FALSE(rv.attained);
      REQUIRE_FALSE(rv.witness.has_value());
    }
  }
}

TEST_CASE("bounded lattice pieces are enumerated exactly") {
  SECTION("a cube sliced by a sum bound") {
    Problem p = cube_sum();
    for (const RelaxValue& rv : {solve_closed_conv(p), solve_conv(p)}) {
      check_attained(p, rv);
      REQUIRE(rv.value == ExtReal(Quad(5)));
      REQUIRE(rv.method == RelaxMethod::FiniteLP);
    }
  }
  SECTION("an unbounded set with no closed form is refused in dimension 3") {
    Problem p;
    p.n = 3;
    p.objective = {Quad(1), Quad(1), Quad(1)};
    p.coupling.dim = 3;
    p.lattice.kind = LatticeSetSpec::Kind::PolyLattice;
    p.lattice.dim = 3;
    p.lattice.pieces = {
        ConstraintSystem{3, {Row{{Quad(1), Quad(1), Quad(1)}, Sense::Ge, Quad(1)}}}};
    validate(p);
    REQUIRE_THROWS_AS(solve_closed_conv(p), UnsupportedError);
    REQUIRE_THROWS_AS(solve_conv(p), UnsupportedError);
  }
}

TEST_CASE("linear minima over the chord slice") {
  SECTION("the walk stops at the first contact") {
    RelaxValue rv = detail::chord_slice_min({Quad(3), Quad(-2), Quad(0)}, 2, Quad(1));
    REQUIRE(rv.value == ExtReal(Quad(1)));
    REQUIRE(*rv.witness == QVec{Quad(1), Quad(1), Quad(1)});
  }
  SECTION("a steeper functional walks further out") {
    RelaxValue rv = detail::chord_slice_min({Quad(17), Quad(-12), Quad(0)}, 2, Quad(1));
    REQUIRE(rv.value == ExtReal(Quad(1)));
    REQUIRE(*rv.witness == QVec{Quad(5), Quad(7), Quad(1)});
  }
  SECTION("a level functional sits at the first corner") {
    RelaxValue rv = detail::chord_slice_min({Quad(0), Quad(0), Quad(-1)}, 2, Quad(1));
    REQUIRE(rv.value == ExtReal(Quad(-1)));
    REQUIRE(rv.attained);
    REQUIRE(*rv.witness == QVec{Quad(1), Quad(0), Quad(1)});
  }
  SECTION("the edge functional has an unattained infimum") {
    RelaxValue rv = detail::chord_slice_min({rt2(), Quad(-1), Quad(0)}, 2, Quad(1));
    REQUIRE(rv.value == ExtReal(Quad(0)));
    REQUIRE_FALSE(rv.attained);
    REQUIRE_FALSE(rv.witness.has_value());
    REQUIRE_FALSE(rv.ray.has_value());
  }
  SECTION("descent along the flat direction") {
    RelaxValue rv = detail::chord_slice_min({Quad(-1), Quad(0), Quad(5)}, 2, Quad(1));
    REQUIRE(rv.value.is_neg_inf());
    REQUIRE(*rv.ray == QVec{Quad(1), Quad(0), Quad(0)});
    REQUIRE(*rv.ray_base == QVec{Quad(1), Quad(0), Quad(1)});
  }
  SECTION("descent along the irrational edge") {
    RelaxValue rv = detail::chord_slice_min({Quad(1), Quad(-1), Quad(0)}, 2, Quad(1));
    REQUIRE(rv.value.is_neg_inf());
    REQUIRE(*rv.ray == QVec{Quad(1), rt2(), Quad(0)});
  }
}

TEST_CASE("union relaxations split piecewise when nothing couples") {
  Problem p = builtin_ex2();
  p.coupling.rows.clear();
  SECTION("the slice piece wins on the level objective") {
    p.objective = {Quad(0), Quad(0), Quad(-1)};
    for (const RelaxValue& rv : {solve_closed_conv(p), solve_conv(p)}) {
      check_attained(p, rv);
      REQUIRE(rv.value == ExtReal(Quad(-1)));
      REQUIRE(*rv.witness == QVec{Quad(1), Quad(0), Quad(1)});
    }
  }
  SECTION("ties prefer the side that attains") {
    p.objective = {rt2(), Quad(-1), Quad(0)};
    for (const RelaxValue& rv : {solve_closed_conv(p), solve_conv(p)}) {
      check_attained(p, rv);
      REQUIRE(rv.value == ExtReal(Quad(0)));
      REQUIRE((*rv.witness)[2] == Quad(0));
    }
  }
  SECTION("the cone piece wins on the height objective") {
    p.objective = {Quad(0), Quad(0), Quad(1)};
    RelaxValue rv = solve_closed_conv(p);
    check_attained(p, rv);
    REQUIRE(rv.value == ExtReal(Quad(0)));
  }
}

TEST_CASE("union reduction under supporting coupling rows") {
  SECTION("an equality row supported from one side pins the level") {
    Problem p = builtin_ex2();
    p.coupling.rows = {Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, Quad(0)}};
    p.objective = {Quad(0), Quad(0), Quad(-1)};
    RelaxValue rv = solve_closed_conv(p);
    check_attained(p, rv);
    REQUIRE(rv.value == ExtReal(Quad(0)));
    REQUIRE((*rv.witness)[2] == Quad(0));
  }
  SECTION("rows that do not pin ride along as side constraints") {
    Problem p = builtin_ex2();
    p.coupling.rows.push_back(Row{{Quad(1), Quad(0), Quad(0)}, Sense::Le, Quad(10)});
    p.objective = {Quad(-1), Quad(0), Quad(0)};
    RelaxValue closed = solve_closed_conv(p);
    check_attained(p, closed);
    REQUIRE(closed.value == ExtReal(Quad(-10)));
    REQUIRE((*closed.witness)[0] == Quad(10));
    REQUIRE((*closed.witness)[1] == Quad(10) * rt2());
    // lattice points never touch the open part of the edge, so the hull
    // keeps only the apex and the bound never bites
    RelaxValue conv = solve_conv(p);
    check_attained(p, conv);
    REQUIRE(conv.value == ExtReal(Quad(0)));
    REQUIRE(*conv.witness == QVec{Quad(0), Quad(0), Quad(0)});
  }
  SECTION("a slicing equality row is refused") {
    Problem p = builtin_ex2();
    p.coupling.rows = {Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, Quad(Rational(1, 2))}};
    REQUIRE_THROWS_AS(solve_closed_conv(p), UnsupportedError);
    REQUIRE_THROWS_AS(solve_conv(p), UnsupportedError);
  }
  SECTION("a row that keeps the chord piece alive is refused") {
    Problem p = builtin_ex2();
    p.coupling.rows = {Row{{Quad(0), Quad(0), Quad(1)}, Sense::Eq, Quad(1)}};
    REQUIRE_THROWS_AS(solve_closed_conv(p), UnsupportedError);
  }
  SECTION("a row supporting neither piece is refused") {
    Problem p = builtin_ex2();
    p.coupling.rows = {Row{{Quad(0), Quad(1), Quad(0)}, Sense::Ge, Quad(1)}};
    REQUIRE_THROWS_AS(solve_closed_conv(p), UnsupportedError);
  }
}

TEST_CASE("slab relaxations on and off the boundary plane") {
  SECTION("dropping the height bound lets the closed problem dive") {
    Problem p = builtin_ex3();
    p.coupling.rows.pop_back();
    RelaxValue closed = solve_closed_conv(p);
    check_unbounded(p, closed);
    REQUIRE((*closed.ray)[0] == Quad(0));
    REQUIRE((*closed.ray)[1] == Quad(0));
    REQUIRE((*closed.ray)[2].sign() < 0);
    RelaxValue conv = solve_conv(p);
    check_unbounded(p, conv);
  }
  SECTION("contradictory height bounds give plus infinity") {
    Problem p = builtin_ex3();
    p.coupling.rows[2].rhs = Quad(2);
    REQUIRE(solve_closed_conv(p).value.is_pos_inf());
    REQUIRE(solve_conv(p).value.is_pos_inf());
  }
  SECTION("a plane with no lattice points splits the two hulls apart") {
    Problem p = slab_half();
    p.coupling.rows = {Row{{rt2(), -rt2(), Quad(1)}, Sense::Ge, Quad(Rational(1, 2))}};
    RelaxValue closed = solve_closed_conv(p);
    check_unbounded(p, closed);
    REQUIRE(rt2() * ((*closed.ray)[0] - (*closed.ray)[1]) + (*closed.ray)[2] == Quad(0));
    RelaxValue conv = solve_conv(p);
    REQUIRE(conv.value.is_pos_inf());
    REQUIRE_FALSE(conv.attained);
  }
}

TEST_CASE("wedge relaxations that leave the irrational edge") {
  Problem p = builtin_ex1();
  p.coupling.rows.clear();
  SECTION("minimizing x lands on the apex") {
    p.objective = {Quad(1), Quad(0)};
    RelaxValue closed = solve_closed_conv(p);
    check_attained(p, closed);
    REQUIRE(closed.value == ExtReal(Quad(0)));
    RelaxValue conv = solve_conv(p);
    check_attained(p, conv);
    REQUIRE(conv.value == ExtReal(Quad(0)));
    REQUIRE(*conv.witness == QVec{Quad(0), Quad(0)});
  }
  SECTION("minimizing y attains off the missing edge") {
    p.objective = {Quad(0), Quad(1)};
    RelaxValue conv = solve_conv(p);
    check_attained(p, conv);
    REQUIRE(conv.value == ExtReal(Quad(0)));
    REQUIRE((*conv.witness)[1] == Quad(0));
    REQUIRE(solve_closed_conv(p).value == ExtReal(Quad(0)));
  }
}

TEST_CASE("planar sets without a closed form fall back to growing boxes") {
  SECTION("the optimum stabilizes across box sizes") {
    Problem p = ramp_2d();
    for (const RelaxValue& rv : {solve_closed_conv(p), solve_conv(p)}) {
      check_attained(p, rv);
      REQUIRE(rv.value == ExtReal(Quad(2)));
      REQUIRE(rv.method == RelaxMethod::Boxed2D);
      REQUIRE(*rv.witness == QVec{Quad(0), Quad(2)});
    }
  }
  SECTION("an integer descent ray certifies minus infinity") {
    Problem p;
    p.n = 2;
    p.objective = {Quad(-1), Quad(-1)};
    p.coupling.dim = 2;
    p.lattice.kind = LatticeSetSpec::Kind::PolyLattice;
    p.lattice.dim = 2;
    p.lattice.pieces = {ConstraintSystem{2, {Row{{Quad(1), Quad(-1)}, Sense::Eq, Quad(0)}}}};
    validate(p);
    RelaxValue rv = solve_closed_conv(p);
    check_unbounded(p, rv);
    REQUIRE(rv.method == RelaxMethod::Boxed2D);
    REQUIRE((*rv.ray)[0] == (*rv.ray)[1]);
    REQUIRE((*rv.ray)[0].sign() > 0);
  }
  SECTION("a box sequence that never settles is refused") {
    Problem p = ramp_2d();
    p.coupling.rows = {Row{{Quad(1), Quad(1)}, Sense::Le, Quad(-1)}};
    REQUIRE_THROWS_AS(solve_closed_conv(p), UnsupportedError);
  }
}

TEST_CASE("relaxation method names") {
  REQUIRE(std::string(to_string(RelaxMethod::Analytic)) == "analytic");
  REQUIRE(std::string(to_string(RelaxMethod::Boxed2D)) == "boxed-2d");
  REQUIRE(std::string(to_string(RelaxMethod::FiniteLP)) == "finite-lp");
}
