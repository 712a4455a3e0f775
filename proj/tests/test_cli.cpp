#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <dualgap/builtins.hpp>
#include <dualgap/cli_app.hpp>

using namespace dualgap;

namespace {

std::filesystem::path fresh_outdir(const char* tag) {
  auto dir = std::filesystem::temp_directory_path() / "dualgap-cli-tests" / tag;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct RunOut {
  int rc;
  std::string out, err;
};

RunOut run(const RunConfig& cfg) {
  std::ostringstream o, e;
  int rc = run_cli(cfg, o, e);
  return {rc, o.str(), e.str()};
}

}  // namespace

TEST_CASE("problem files match the built-ins") {
  for (const std::string& name : builtin_names()) {
    std::ifstream f(std::filesystem::path(DUALGAP_PROBLEMS_DIR) / (name + ".prob"));
    REQUIRE(f.good());
    Problem p = read_problem(f);
    REQUIRE(p == builtin_problem(name));
  }
}

TEST_CASE("dispatch validates its inputs") {
  RunConfig cfg;
  cfg.subcommand = "frobnicate";
  cfg.problem = "ex1";
  REQUIRE(run(cfg).rc == 2);

  cfg.subcommand = "eval-dual";
  cfg.lambda_csv = "";
  REQUIRE(run(cfg).rc == 2);

  cfg.subcommand = "report";
  cfg.problem = "";
  REQUIRE(run(cfg).rc == 2);

  cfg.problem = "/no/such/file.prob";
  REQUIRE(run(cfg).rc == 1);

  cfg.subcommand = "reproduce";
  cfg.problem = "ex9";
  REQUIRE(run(cfg).rc == 2);

  cfg.subcommand = "hull";
  cfg.problem = "ex1";
  cfg.box_csv = "0,0,0,0";
  REQUIRE(run(cfg).rc == 2);
}

TEST_CASE("reproduce passes on all three examples") {
  auto dir = fresh_outdir("reproduce");
  for (const std::string& name : builtin_names()) {
    RunConfig cfg;
    cfg.subcommand = "reproduce";
    cfg.problem = name;
    cfg.outdir = dir.string();
    RunOut r = run(cfg);
    INFO(r.out << r.err);
    REQUIRE(r.rc == 0);
    REQUIRE(r.out.find("result: ok") != std::string::npos);
    REQUIRE(r.out.find("MISMATCH") == std::string::npos);
    REQUIRE(slurp(dir / ("reproduce-" + name) / "report.txt") == r.out);
  }
}

TEST_CASE("dual trace emits deterministic CSV with -inf tokens") {
  auto dir = fresh_outdir("maxdual");
  RunConfig cfg;
  cfg.subcommand = "max-dual";
  cfg.problem = "ex2";
  cfg.outdir = dir.string();
  cfg.run_name = "a";
  RunOut first = run(cfg);
  REQUIRE(first.rc == 0);
  cfg.run_name = "b";
  cfg.threads = 4;
  RunOut second = run(cfg);
  REQUIRE(second.rc == 0);
  std::string csv = slurp(dir / "a" / "trace.csv");
  REQUIRE(csv == slurp(dir / "b" / "trace.csv"));
  REQUIRE(csv.substr(0, 23) == "lambda,value,certified\n");
  REQUIRE(csv.find(",-1,1\n") != std::string::npos);
  REQUIRE(first.out.find("v_L: -1") != std::string::npos);

  cfg.problem = "ex1";
  cfg.run_name = "wedge";
  RunOut wedge = run(cfg);
  REQUIRE(wedge.rc == 0);
  std::string wcsv = slurp(dir / "wedge" / "trace.csv");
  REQUIRE(wcsv.find(",-inf,1\n") != std::string::npos);
  REQUIRE(wedge.out.find("v_L: -inf") != std::string::npos);
  REQUIRE(wedge.out.find("status: certified") != std::string::npos);
}

TEST_CASE("hull subcommand writes vertices and a figure") {
  auto dir = fresh_outdir("hull");
  RunConfig cfg;
  cfg.subcommand = "hull";
  cfg.problem = "ex1";
  cfg.box_csv = "0,20,0,30";
  cfg.outdir = dir.string();
  cfg.run_name = "wedge";
  RunOut r = run(cfg);
  REQUIRE(r.rc == 0);
  std::string csv = slurp(dir / "wedge" / "vertices.csv");
  REQUIRE(csv.substr(0, 27) == "x,y,x_approx,y_approx,kind\n");
  REQUIRE(csv.find("0,0,0,0,corner") != std::string::npos);
  REQUIRE(csv.find("820/29") != std::string::npos);  // hull edge hugging the surd line
  std::string svg = slurp(dir / "wedge" / "figure.svg");
  REQUIRE(svg.substr(0, 4) == "<svg");
  REQUIRE(svg.find("<polygon") != std::string::npos);
  REQUIRE(svg.find("<circle") != std::string::npos);
  REQUIRE(svg.find("</svg>") != std::string::npos);

  cfg.run_name = "again";
  RunOut r2 = run(cfg);
  REQUIRE(r2.rc == 0);
  REQUIRE(slurp(dir / "again" / "figure.svg") == svg);
  REQUIRE(slurp(dir / "again" / "vertices.csv") == csv);
}

TEST_CASE("text subcommands cover the toy problem file") {
  std::string prob = (std::filesystem::path(DUALGAP_PROBLEMS_DIR) / "triangle.prob").string();

  RunConfig cfg;
  cfg.subcommand = "report";
  cfg.problem = prob;
  RunOut rep = run(cfg);
  REQUIRE(rep.rc == 0);
  REQUIRE(rep.out.find("v_L        = 1") != std::string::npos);
  REQUIRE(rep.out.find("equality: slater-interior") != std::string::npos);

  cfg.subcommand = "slater";
  RunOut sl = run(cfg);
  REQUIRE(sl.rc == 0);
  REQUIRE(sl.out.find("outcome: holds") != std::string::npos);
  REQUIRE(sl.out.find("interior point") != std::string::npos);

  cfg.subcommand = "classify";
  RunOut cl = run(cfg);
  REQUIRE(cl.rc == 0);
  REQUIRE(cl.out.find("case: II") != std::string::npos);
  REQUIRE(cl.out.find("conclusion: v^L = v_bar_star = v_star") != std::string::npos);

  cfg.subcommand = "oracle";
  cfg.weights_csv = "1,1";
  RunOut orc = run(cfg);
  REQUIRE(orc.rc == 0);
  REQUIRE(orc.out.find("kind: attained") != std::string::npos);
  REQUIRE(orc.out.find("value: 0") != std::string::npos);

  cfg.subcommand = "eval-dual";
  cfg.lambda_csv = "1";
  RunOut ev = run(cfg);
  REQUIRE(ev.rc == 0);
  REQUIRE(ev.out.find("G: 1") != std::string::npos);

  cfg.subcommand = "solve";
  RunOut so = run(cfg);
  REQUIRE(so.rc == 0);
  REQUIRE(so.out.find("v_bar_star: 1") != std::string::npos);
  REQUIRE(so.out.find("v_star: 1") != std::string::npos);
}

TEST_CASE("certify prints a replaying certificate for the slab") {
  RunConfig cfg;
  cfg.subcommand = "certify";
  cfg.problem = "ex3";
  cfg.xstar_csv = "1,1,1";
  RunOut r = run(cfg);
  REQUIRE(r.rc == 0);
  REQUIRE(r.out.find("bound: 1") != std::string::npos);
  REQUIRE(r.out.find("replays exactly") != std::string::npos);
}
