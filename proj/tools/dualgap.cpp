#include <CLI11.hpp>

#include <iostream>
#include <string>

#include <dualgap/cli_app.hpp>

int main(int argc, char** argv) {
  CLI::App app{"exact Lagrangian duality workbench for planar and slab lattice programs"};
  app.fallthrough();
  app.require_subcommand(1);

  dualgap::RunConfig cfg;
  std::string enlarge = "2";

  app.add_option("--outdir", cfg.outdir, "output directory (default: $DUALGAP_OUT, then ./out)");
  app.add_option("--run", cfg.run_name, "run name for the output subdirectory");
  app.add_option("--threads", cfg.threads,
                 "worker cap; outputs are identical whatever the value");

  CLI::App* rep = app.add_subcommand("reproduce", "rerun a built-in example and check its values");
  rep->add_option("name", cfg.problem, "ex1, ex2 or ex3")->required();

  auto with_problem = [&](const char* name, const char* what) {
    CLI::App* sub = app.add_subcommand(name, what);
    sub->add_option("--problem", cfg.problem, "builtin name or problem file")->required();
    return sub;
  };

  CLI::App* oracle = with_problem("oracle", "minimize a linear function over the lattice set");
  oracle->add_option("--weights", cfg.weights_csv, "w1,...,wn")->required();

  CLI::App* evald = with_problem("eval-dual", "evaluate the dual function at one multiplier");
  evald->add_option("--lambda", cfg.lambda_csv, "l1,...,lm")->required();

  CLI::App* maxd = with_problem("max-dual", "maximize the dual function");
  maxd->add_option("--grid", cfg.grid_csv, "multiplier grid hint (single-row problems)");
  maxd->add_option("--steps", cfg.steps, "ascent steps for multi-row problems");

  CLI::App* hull = with_problem("hull", "boxed hull with CSV vertices and an SVG figure");
  hull->add_option("--box", cfg.box_csv, "x0,x1,y0,y1")->required();
  hull->add_option("--enlarge", enlarge, "enlargement factor, rational like 2 or 5/2");

  CLI::App* solve = with_problem("solve", "optimal values over the hull and the closed hull");
  solve->add_option("--which", cfg.which, "conv, closed or both");

  with_problem("report", "full three-value comparison with certificates");
  with_problem("classify", "single-row level classification");

  CLI::App* cert = with_problem("certify", "multiplier certificate at a closed optimum");
  cert->add_option("--xstar", cfg.xstar_csv, "q1,...,qn")->required();

  with_problem("slater", "interior-point check for the coupling rows");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.enlarge = dualgap::Rational(enlarge);
  } catch (const std::exception&) {
    std::cerr << "--enlarge wants a rational like 2 or 5/2\n";
    return 2;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();
  return dualgap::run_cli(cfg, std::cout, std::cerr);
}
