// Renders the wedge set under the line y = sqrt(2) x: lattice points, their
// boxed hull, and the irrational boundary the hull vertices creep toward.
// Writes figure.svg and vertices.csv under the directory given as argv[1]
// (default out/wedge-figure).

#include <filesystem>
#include <fstream>
#include <iostream>

#include <dualgap/builtins.hpp>
#include <dualgap/problem_io.hpp>
#include <dualgap/svg.hpp>

using namespace dualgap;

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "out/wedge-figure";
  std::filesystem::create_directories(dir);

  Problem p = builtin_ex1();
  Box2 box{Quad(0), Quad(20), Quad(0), Quad(30)};
  Polytope2D hull = boxed_hull_2d(p.lattice, box, Rational(2));

  std::vector<Point> dots;
  for (long x = 0; x <= 20; ++x)
    for (long y = 0; y <= 30; ++y) {
      Point q = {BigInt(x), BigInt(y)};
      if (in_lattice(p.lattice, q)) dots.push_back(q);
    }

  std::ofstream svg(dir / "figure.svg");
  svg << hull_figure_svg(p, box, hull, dots);

  std::ofstream csv(dir / "vertices.csv");
  csv << "x,y\n";
  for (const Pt2& v : hull.vertices) csv << to_token(v.x) << "," << to_token(v.y) << "\n";

  // the best rational slopes under sqrt(2) show up as hull edges
  std::cout << hull.vertices.size() << " hull vertices over " << dots.size()
            << " lattice points\n";
  for (const Pt2& v : hull.vertices)
    if (!v.y.is_zero() && v.x > Quad(0))
      std::cout << "  vertex " << to_token(v.x) << "," << to_token(v.y) << "  slope "
                << to_token(v.y / v.x) << "\n";
  std::cout << "wrote " << (dir / "figure.svg").string() << "\n";
  return 0;
}
