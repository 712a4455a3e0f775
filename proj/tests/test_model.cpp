#include <catch2/catch_amalgamated.hpp>

#include "dualgap/builtins.hpp"
#include "dualgap/problem_io.hpp"

using namespace dualgap;

namespace {
Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long v : xs) p.push_back(BigInt(v));
  return p;
}
}  // namespace

TEST_CASE("row evaluation over surd coefficients", "[model]") {
  Quad r2 = Quad::sqrt_of(2);
  Row r{{r2, Quad(-1)}, Sense::Ge, Quad(0)};
  CHECK(row_holds(r, pt({1, 1})));    // sqrt(2) - 1 >= 0
  CHECK_FALSE(row_holds(r, pt({1, 2})));
  CHECK(row_holds(r, pt({0, 0})));
  r.sense = Sense::Eq;
  CHECK(row_holds(r, pt({0, 0})));
  CHECK_FALSE(row_holds(r, pt({1, 1})));  // sqrt(2) != 1, exactly
  CHECK(dot(r.coeffs, pt({3, 2})) == Quad(-2) + Quad(3) * r2);
  CHECK_THROWS_AS(dot(r.coeffs, pt({1, 2, 3})), DimensionError);
}

TEST_CASE("ex1 structure and membership", "[model]") {
  Problem p = builtin_ex1();
  CHECK(p.n == 2);
  CHECK(p.coupling.rows.size() == 1);
  CHECK(p.lattice.kind == LatticeSetSpec::Kind::PolyLattice);

  CHECK(in_lattice(p.lattice, pt({0, 0})));
  CHECK(in_lattice(p.lattice, pt({1, 1})));   // 1 < sqrt(2)
  CHECK(in_lattice(p.lattice, pt({5, 7})));   // 7 < 5*sqrt(2)
  CHECK_FALSE(in_lattice(p.lattice, pt({1, 2})));
  CHECK_FALSE(in_lattice(p.lattice, pt({-1, 0})));  // nonneg

  CHECK(coupling_holds(p, pt({0, 0})));
  CHECK(coupling_holds(p, pt({1, 2})));
  CHECK_FALSE(coupling_holds(p, pt({1, 1})));

  // only the origin is both in the lattice piece and above the coupling line
  CHECK((in_lattice(p.lattice, pt({0, 0})) && coupling_holds(p, pt({0, 0}))));
}

TEST_CASE("ex2 structure and membership", "[model]") {
  Problem p = builtin_ex2();
  CHECK(p.n == 3);
  CHECK(p.lattice.kind == LatticeSetSpec::Kind::UnionConvLattice);
  REQUIRE(p.lattice.pieces.size() == 2);

  CHECK(in_lattice(p.lattice, pt({0, 0, 0})));
  CHECK(in_lattice(p.lattice, pt({5, 7, 0})));
  CHECK(in_lattice(p.lattice, pt({1, 0, 1})));
  CHECK(in_lattice(p.lattice, pt({5, 7, 1})));
  CHECK_FALSE(in_lattice(p.lattice, pt({0, 0, 1})));  // z=1 needs x >= 1/2
  CHECK_FALSE(in_lattice(p.lattice, pt({1, 2, 0})));  // above the sqrt(2) line
  CHECK_FALSE(in_lattice(p.lattice, pt({1, 1, 2})));

  CHECK(coupling_holds(p, pt({1, 2, 0})));
  CHECK_FALSE(coupling_holds(p, pt({1, 1, 1})));
  CHECK(coupling_holds(p, pt({0, 0, 0})));
}

TEST_CASE("ex3 structure and membership", "[model]") {
  Problem p = builtin_ex3();
  CHECK(p.n == 3);
  CHECK(p.coupling.rows.size() == 3);

  CHECK(in_lattice(p.lattice, pt({1, 1, 1})));
  CHECK(in_lattice(p.lattice, pt({0, 0, 1})));
  CHECK(in_lattice(p.lattice, pt({0, 5, 8})));    // -5*sqrt(2) + 8 < 1
  CHECK_FALSE(in_lattice(p.lattice, pt({2, 1, 1})));  // sqrt(2) + 1 > 1

  CHECK(coupling_holds(p, pt({1, 1, 1})));
  CHECK(coupling_holds(p, pt({1, 1, 5})));
  CHECK_FALSE(coupling_holds(p, pt({1, 1, 0})));
  CHECK_FALSE(coupling_holds(p, pt({0, 1, 1})));
}

TEST_CASE("nonneg flags fold into piece rows", "[model]") {
  Problem p = builtin_ex1();
  ConstraintSystem cs = piece_with_flags(p.lattice, 0);
  CHECK(cs.rows.size() == 3);
  CHECK(in_piece(cs, pt({2, 2})));
  CHECK_FALSE(in_piece(cs, pt({-2, -4})));  // passes the raw lrow, fails nonneg
}

TEST_CASE("validation rejects malformed problems", "[model]") {
  Problem p = builtin_ex1();
  p.objective.pop_back();
  CHECK_THROWS_AS(validate(p), DimensionError);

  p = builtin_ex1();
  p.objective[0] = Quad(Rational(1), Rational(1), 3);  // sqrt(3) in a sqrt(2) problem
  CHECK_THROWS_AS(validate(p), DomainError);

  p = builtin_ex1();
  p.n = 0;
  CHECK_THROWS_AS(validate(p), DimensionError);

  p = builtin_ex1();
  p.lattice.nonneg = {true};
  CHECK_THROWS_AS(validate(p), DimensionError);

  p = builtin_ex1();
  p.lattice.points.push_back(pt({0, 0}));
  CHECK_THROWS_AS(validate(p), DomainError);

  Problem f;
  f.name = "finite";
  f.n = 2;
  f.objective = {Quad(1), Quad(1)};
  f.coupling.dim = 2;
  f.lattice.kind = LatticeSetSpec::Kind::FiniteList;
  f.lattice.dim = 2;
  f.lattice.points = {pt({0, 0}), pt({1, 0})};
  validate(f);
  f.lattice.points.push_back(pt({1}));
  CHECK_THROWS_AS(validate(f), DimensionError);
  f.lattice.points.back() = pt({-1, 0});
  f.lattice.nonneg = {true, true};
  CHECK_THROWS_AS(validate(f), DomainError);
}

TEST_CASE("builtins survive a print and parse round trip", "[model][io]") {
  for (const std::string& name : builtin_names()) {
    Problem p = builtin_problem(name);
    std::string text = write_problem(p);
    Problem q = read_problem(text);
    CHECK(p == q);
    CHECK(q.name == name);
    CHECK(write_problem(q) == text);
  }
}

TEST_CASE("reading a finite toy problem", "[model][io]") {
  const char* text =
      "# three points on the unit simplex corners\n"
      "problem toy\n"
      "dim 2\n"
      "min -1 -1\n"
      "row 1 1 >= 1\n"
      "lattice finite\n"
      "point 0 0\n"
      "point 1 0\n"
      "point 0 1\n";
  Problem p = read_problem(text);
  CHECK(p.name == "toy");
  CHECK(p.lattice.kind == LatticeSetSpec::Kind::FiniteList);
  REQUIRE(p.lattice.points.size() == 3);
  CHECK(in_lattice(p.lattice, pt({1, 0})));
  CHECK_FALSE(in_lattice(p.lattice, pt({1, 1})));
  CHECK(write_problem(read_problem(write_problem(p))) == write_problem(p));
}

TEST_CASE("reading surd and token forms", "[model][io]") {
  const char* text =
      "dim 2\n"
      "surd 3\n"
      "min sqrt(3) -1/2\n"
      "lattice poly\n"
      "nonneg 0\n"
      "lrow 1 1-sqrt(3) <= 2\n";
  Problem p = read_problem(text);
  CHECK(p.d == 3);
  CHECK(p.objective[0] == Quad::sqrt_of(3));
  CHECK(p.objective[1] == Quad(Rational(-1) / 2));
  CHECK(p.lattice.nonneg == std::vector<bool>{true, false});
  Quad c1 = p.lattice.pieces[0].rows[0].coeffs[1];
  CHECK(c1 == Quad(1) - Quad::sqrt_of(3));
  Problem q = read_problem(write_problem(p));
  CHECK(p == q);
}

TEST_CASE("tokens are spaceless and parse back", "[model][io]") {
  Quad r2 = Quad::sqrt_of(2);
  for (const Quad& q : {Quad(0), Quad(Rational(-7) / 3), r2, Quad(3) - Quad(2) * r2,
                        Quad(Rational(1) / 2) + Quad(Rational(5) / 3) * r2}) {
    std::string tok = to_token(q);
    CHECK(tok.find(' ') == std::string::npos);
    CHECK(parse_quad(tok) == q);
  }
}

TEST_CASE("parser reports malformed inputs", "[model][io]") {
  auto bad = [](const char* text) {
    CHECK_THROWS_AS(read_problem(std::string(text)), ParseError);
  };
  bad("min 1\n");                                     // before dim
  bad("dim 2\nmin 1 1\n");                            // missing lattice
  bad("dim 2\nlattice poly\n");                       // missing min
  bad("dim 0\n");
  bad("dim 2\nmin 1 1\nwat 3\n");
  bad("dim 2\nmin 1\n");                              // arity
  bad("dim 2\nmin 1 1\nrow 1 1 >> 0\n");              // bad sense
  bad("dim 2\nmin 1 1\nlattice poly\npoint 0 0\n");   // point needs finite
  bad("dim 2\nmin 1 1\nlattice union\nlrow 1 1 >= 0\n");
  bad("dim 2\nmin 1 1\nlattice union\npiece\npiece\n");
  bad("dim 2\nmin 1 1\nlattice union\npiece\nlrow 1 1 >= 0\n");  // unterminated
  bad("dim 2\nmin 1 1\nlattice finite\npoint 1 x\n");
  bad("dim 2\nsurd 4\nmin 1 1\nlattice poly\n");      // not square-free
  bad("dim 2\nmin sqrt(3) 1\nlattice poly\n");        // surd mismatch vs default 2
  bad("dim 2\nmin 1 1\nlattice poly\nlattice poly\n");
  bad("dim 2\nmin 1 1\nrow 1 1 >= 0\nlattice poly\nrow 1 1 >= 0\n");
}

TEST_CASE("comments and blank lines are skipped", "[model][io]") {
  const char* text =
      "\n# header comment\n"
      "dim 1\n\n"
      "min 2   # trailing note\n"
      "lattice poly\n"
      "lrow 1 >= 0   # one ray\n";
  Problem p = read_problem(text);
  CHECK(p.n == 1);
  CHECK(p.objective[0] == Quad(2));
  CHECK(p.lattice.pieces[0].rows.size() == 1);
}
