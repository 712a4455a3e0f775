#pragma once

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dualgap/builtins.hpp"
#include "dualgap/gap_report.hpp"
#include "dualgap/problem_io.hpp"
#include "dualgap/svg.hpp"

// Subcommand dispatch behind the command-line binary, kept header-side so the
// tests can drive it in-process. Exit codes: 0 ok, 1 computational error,
// 2 usage error. All output is deterministic for a fixed config; file
// artifacts land under <outdir>/<run-name>/.

namespace dualgap {

struct RunConfig {
  std::string subcommand;
  std::string problem;  // builtin name or path; the example name for reproduce
  std::string lambda_csv;
  std::string weights_csv;
  std::string xstar_csv;
  std::string box_csv;
  std::string grid_csv;
  std::string which = "both";
  Rational enlarge = Rational(2);
  int steps = 500;
  int threads = 0;  // 0 picks the core count; everything stays deterministic
  std::string outdir;    // empty: $DUALGAP_OUT, then "out"
  std::string run_name;  // empty: "<subcommand>-<problem stem>"
};

namespace detail {

inline std::string approx(const Quad& q) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", q.to_double());
  return buf;
}

inline std::string show(const Quad& q) { return to_token(q) + " (~" + approx(q) + ")"; }

inline std::string show(const ExtReal& v) {
  if (v.is_neg_inf()) return "-inf";
  if (v.is_pos_inf()) return "+inf";
  return show(v.value());
}

inline std::string csv_token(const ExtReal& v) {
  if (v.is_neg_inf()) return "-inf";
  if (v.is_pos_inf()) return "+inf";
  return to_token(v.value());
}

inline std::string show_vec(const QVec& v) {
  std::string out = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += to_token(v[i]);
  }
  return out + ")";
}

inline std::string show_point(const Point& p) {
  std::string out = "(";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += p[i].str();
  }
  return out + ")";
}

inline QVec parse_qvec(const std::string& csv, long d) {
  QVec out;
  std::string item;
  std::istringstream in(csv);
  while (std::getline(in, item, ',')) {
    item.erase(std::remove(item.begin(), item.end(), ' '), item.end());
    if (item.empty()) throw ParseError("empty entry in '" + csv + "'", 0);
    out.push_back(parse_quad(item, d, 0));
  }
  if (out.empty()) throw ParseError("no entries in '" + csv + "'", 0);
  return out;
}

inline Problem load_problem(const std::string& src) {
  auto names = builtin_names();
  if (std::find(names.begin(), names.end(), src) != names.end()) return builtin_problem(src);
  std::ifstream in(src);
  if (!in) throw IoError("cannot open problem file '" + src + "'");
  Problem p = read_problem(in);
  return p;
}

inline std::filesystem::path run_dir(const RunConfig& cfg) {
  std::string base = cfg.outdir;
  if (base.empty()) {
    const char* env = std::getenv("DUALGAP_OUT");
    base = env && *env ? env : "out";
  }
  std::string run = cfg.run_name;
  if (run.empty()) run = cfg.subcommand + "-" + std::filesystem::path(cfg.problem).stem().string();
  std::filesystem::path dir = std::filesystem::path(base) / run;
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path.string() + "'");
  f << text;
}

// pass/fail log for the reproduction harness
struct CheckLog {
  std::ostringstream text;
  bool ok = true;

  void check(bool cond, const std::string& what) {
    if (cond)
      text << "  ok: " << what << "\n";
    else {
      text << "  MISMATCH: " << what << "\n";
      ok = false;
    }
  }
};

inline Quad dot_point(const QVec& w, const Point& x) {
  Quad s;
  for (size_t i = 0; i < w.size(); ++i) s = s + w[i] * Quad(Rational(x[i]));
  return s;
}

inline QVec reduced_cost(const Problem& p, const QVec& lambda) {
  QVec w = p.objective;
  for (size_t i = 0; i < p.coupling.rows.size(); ++i)
    for (int j = 0; j < p.n; ++j) w[j] = w[j] - lambda[i] * p.coupling.rows[i].coeffs[j];
  return w;
}

inline void describe_values(const GapReport& rep, std::ostream& out) {
  out << "v_L        = " << show(rep.v_L) << "\n";
  out << "v_bar_star = " << show(rep.v_bar_star);
  if (rep.closed.attained && rep.closed.witness) out << "  attained at " << show_vec(*rep.closed.witness);
  out << "\n";
  out << "v_star     = " << show(rep.v_star);
  if (rep.conv.attained && rep.conv.witness) out << "  attained at " << show_vec(*rep.conv.witness);
  out << "\n";
}

inline void describe_flags(const GapReport& rep, std::ostream& out) {
  if (rep.dual_gap) out << "flag: v^L < v_bar_star\n";
  if (rep.hull_gap) out << "flag: v_bar_star < v_star\n";
  if (rep.v_L < rep.v_star) out << "flag: v^L < v_star\n";
  out << "equality: " << to_string(rep.equality) << "\n";
}

inline bool verify_multiplier(const Problem& p, const FarkasCertificate& c) {
  QVec lhs(p.n, Quad(0));
  Quad paid;
  for (size_t i = 0; i < c.lambda.size(); ++i) {
    const Row& r = p.coupling.rows[i];
    for (int j = 0; j < p.n; ++j) lhs[j] = lhs[j] + c.lambda[i] * r.coeffs[j];
    paid = paid + c.lambda[i] * r.rhs;
  }
  for (size_t i = 0; i < c.mu.size(); ++i) {
    const Row& r = c.active.rows[i];
    for (int j = 0; j < p.n; ++j) lhs[j] = lhs[j] + c.mu[i] * r.coeffs[j];
    paid = paid + c.mu[i] * r.rhs;
  }
  return lhs == p.objective && paid == c.bound;
}

inline void reproduce_ex1(CheckLog& log) {
  Problem p = builtin_ex1();
  GapReport rep = gap_report(p);
  describe_values(rep, log.text);
  log.check(rep.v_L.is_neg_inf(), "v_L is -inf");
  log.check(rep.dual.status == BoundStatus::Certified, "the dual bound is certified");
  const DualEval* wit = nullptr;
  for (const DualEval& e : rep.dual.trace)
    if (e.certificate && e.value.is_neg_inf()) {
      wit = &e;
      break;
    }
  log.check(wit != nullptr, "an unbounded evaluation with a witness sequence is on the trace");
  if (wit) {
    std::vector<Point> pts = wit->certificate->points(20);
    QVec w = reduced_cost(p, wit->lambda);
    bool inside = true, falling = true;
    for (size_t k = 0; k < pts.size(); ++k) {
      inside = inside && in_lattice(p.lattice, pts[k]);
      if (k) falling = falling && dot_point(w, pts[k]) < dot_point(w, pts[k - 1]);
    }
    log.check(inside, "first 20 witness points lie in the ground set");
    log.check(falling, "dual objective strictly decreases along the witness");
  }
  log.check(rep.v_bar_star.is_neg_inf(), "v_bar_star is -inf");
  log.check(rep.closed.ray.has_value() && rep.closed.ray_base.has_value(),
            "divergence comes with a feasible ray");
  if (rep.closed.ray && rep.closed.ray_base) {
    const QVec& r = *rep.closed.ray;
    const QVec& base = *rep.closed.ray_base;
    Quad drop;
    for (int j = 0; j < p.n; ++j) drop = drop + p.objective[j] * r[j];
    bool feas = drop.sign() < 0;
    ClosureDescription close = analytic_closure(p.lattice);
    for (int k = 0; k < 5 && feas; ++k) {
      QVec pt(p.n);
      for (int j = 0; j < p.n; ++j) pt[j] = base[j] + Quad(k) * r[j];
      feas = membership(close, pt) != Region::Outside && rows_hold(p.coupling.rows, pt);
    }
    log.check(feas, "the ray stays feasible and strictly improves the objective");
  }
  log.check(rep.v_star == ExtReal(Quad(0)), "v_star is 0");
  log.check(rep.conv.attained && rep.conv.witness &&
                *rep.conv.witness == QVec{Quad(0), Quad(0)},
            "v_star attained at (0, 0)");
  log.check(rep.v_L < rep.v_star, "the report flags v^L < v_star");
  describe_flags(rep, log.text);
}

inline void reproduce_ex2(CheckLog& log) {
  Problem p = builtin_ex2();
  GapReport rep = gap_report(p);
  describe_values(rep, log.text);
  log.check(rep.v_L == ExtReal(Quad(-1)), "v_L is -1");
  log.check(rep.dual.status == BoundStatus::Certified, "the dual bound is certified");
  DualEval g0 = eval_G(p, QVec{Quad(0)});
  log.check(g0.value == ExtReal(Quad(-1)) && g0.inner == MinKind::Attained,
            "G(0) = -1 is attained");
  int limits = 0;
  for (Quad lam : {Quad(1), Quad(5)}) {
    DualEval gi = eval_G(p, QVec{lam});
    if (gi.certified && gi.inner == MinKind::InfimumOnly && gi.value == ExtReal(Quad(-1)))
      ++limits;
  }
  log.check(limits == 2, "two more multipliers give the certified limit value -1");
  log.check(rep.v_bar_star == ExtReal(Quad(0)), "v_bar_star is 0");
  log.check(rep.closed.attained && rep.closed.witness &&
                *rep.closed.witness == QVec{Quad(0), Quad(0), Quad(0)},
            "v_bar_star attained at (0, 0, 0)");
  log.check(rep.dual_gap, "the report flags v^L < v_bar_star");
  describe_flags(rep, log.text);
}

inline void reproduce_ex3(CheckLog& log) {
  Problem p = builtin_ex3();
  GapReport rep = gap_report(p);
  describe_values(rep, log.text);
  log.check(rep.v_L == ExtReal(Quad(1)), "v_L is 1");
  log.check(rep.v_bar_star == ExtReal(Quad(1)), "v_bar_star is 1");
  log.check(rep.v_star == ExtReal(Quad(1)), "v_star is 1");
  log.check(rep.closed.attained && rep.closed.witness &&
                *rep.closed.witness == QVec{Quad(1), Quad(1), Quad(1)},
            "the closed optimum sits at (1, 1, 1)");
  log.check(rep.multiplier.has_value(), "a multiplier certificate is attached");
  if (rep.multiplier) {
    log.check(verify_multiplier(p, *rep.multiplier), "the certificate identity replays exactly");
    log.check(rep.multiplier->bound == Quad(1), "the certified bound is 1");
  }
  log.check(rep.equality == EqualityTag::MultiplierAtOptimum, "equality of all three values");
  describe_flags(rep, log.text);
}

}  // namespace detail

inline int run_cli(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace detail;
  static const std::vector<std::string> known = {
      "reproduce", "eval-dual", "max-dual", "hull",    "solve",
      "report",    "classify",  "certify",  "slater",  "oracle"};
  if (std::find(known.begin(), known.end(), cfg.subcommand) == known.end()) {
    err << "unknown subcommand '" << cfg.subcommand << "'\n";
    err << "subcommands: reproduce eval-dual max-dual hull solve report classify certify "
           "slater oracle\n";
    return 2;
  }
  if (cfg.problem.empty()) {
    err << "a problem is required (builtin name or file path)\n";
    return 2;
  }
  if (cfg.steps <= 0 || cfg.threads < 0 || !(cfg.enlarge > Rational(1))) {
    err << "budgets must be positive (steps >= 1, threads >= 0, enlarge > 1)\n";
    return 2;
  }

  try {
    if (cfg.subcommand == "reproduce") {
      auto names = builtin_names();
      if (std::find(names.begin(), names.end(), cfg.problem) == names.end()) {
        err << "reproduce expects a builtin name: ex1 ex2 ex3\n";
        return 2;
      }
      CheckLog log;
      log.text << "reproduce " << cfg.problem << "\n";
      if (cfg.problem == "ex1") reproduce_ex1(log);
      if (cfg.problem == "ex2") reproduce_ex2(log);
      if (cfg.problem == "ex3") reproduce_ex3(log);
      log.text << "result: " << (log.ok ? "ok" : "MISMATCH") << "\n";
      std::string text = log.text.str();
      out << text;
      write_file(run_dir(cfg) / "report.txt", text);
      return log.ok ? 0 : 1;
    }

    Problem p = load_problem(cfg.problem);

    if (cfg.subcommand == "oracle") {
      if (cfg.weights_csv.empty()) {
        err << "oracle needs --weights w1,...,wn\n";
        return 2;
      }
      QVec w = parse_qvec(cfg.weights_csv, p.d);
      if (static_cast<int>(w.size()) != p.n) {
        err << "--weights needs " << p.n << " entries\n";
        return 2;
      }
      MinResult r = linear_min(p.lattice, w);
      out << "kind: " << to_string(r.kind) << "\n";
      if (r.kind == MinKind::Attained || r.kind == MinKind::InfimumOnly)
        out << "value: " << show(r.value) << "\n";
      if (r.kind == MinKind::Attained) out << "minimizer: " << show_point(r.minimizer) << "\n";
      if (r.witness) {
        out << "witness points:";
        for (const Point& q : r.witness->points(5)) out << " " << show_point(q);
        out << "\n";
      }
      return 0;
    }

    if (cfg.subcommand == "eval-dual") {
      if (cfg.lambda_csv.empty()) {
        err << "eval-dual needs --lambda l1,...,lm\n";
        return 2;
      }
      QVec lambda = parse_qvec(cfg.lambda_csv, p.d);
      if (lambda.size() != p.coupling.rows.size()) {
        err << "--lambda needs " << p.coupling.rows.size() << " entries\n";
        return 2;
      }
      DualEval ev = eval_G(p, lambda);
      out << "lambda: " << show_vec(ev.lambda) << "\n";
      out << "G: " << show(ev.value) << (ev.certified ? "" : "  (not certified, upper bound)")
          << "\n";
      out << "inner minimization: " << to_string(ev.inner) << "\n";
      if (ev.minimizer) out << "minimizer: " << show_point(*ev.minimizer) << "\n";
      if (ev.supergradient) out << "supergradient: " << show_vec(*ev.supergradient) << "\n";
      return 0;
    }

    if (cfg.subcommand == "max-dual") {
      DualBound b;
      const size_t m = p.coupling.rows.size();
      if (m == 1) {
        std::optional<Interval> hint;
        if (!cfg.grid_csv.empty()) {
          QVec g = parse_qvec(cfg.grid_csv, p.d);
          Quad lo = g[0], hi = g[0];
          for (const Quad& q : g) {
            if (q < lo) lo = q;
            if (hi < q) hi = q;
          }
          hint = Interval{lo, hi};
        }
        b = maximize_dual_1d(p, hint);
      } else {
        b = maximize_dual_nd(p, cfg.steps);
      }
      std::ostringstream csv;
      csv << "lambda,value,certified\n";
      for (const DualEval& e : b.trace) {
        for (size_t i = 0; i < e.lambda.size(); ++i)
          csv << (i ? ";" : "") << to_token(e.lambda[i]);
        csv << "," << csv_token(e.value) << "," << (e.certified ? 1 : 0) << "\n";
      }
      out << csv.str();
      out << "\n";
      out << "v_L: " << show(b.v_L) << "\n";
      out << "status: " << to_string(b.status) << "\n";
      if (b.best_lambda) out << "best lambda: " << show_vec(*b.best_lambda) << "\n";
      write_file(run_dir(cfg) / "trace.csv", csv.str());
      return 0;
    }

    if (cfg.subcommand == "hull") {
      if (cfg.box_csv.empty()) {
        err << "hull needs --box x0,x1,y0,y1\n";
        return 2;
      }
      QVec bv = parse_qvec(cfg.box_csv, p.d);
      if (bv.size() != 4) {
        err << "--box needs 4 entries\n";
        return 2;
      }
      Box2 box{bv[0], bv[1], bv[2], bv[3]};
      if (!box.proper()) {
        err << "--box needs x0 < x1 and y0 < y1\n";
        return 2;
      }
      Polytope2D hull = boxed_hull_2d(p.lattice, box, cfg.enlarge);
      std::ostringstream csv;
      csv << "x,y,x_approx,y_approx,kind\n";
      for (const Pt2& v : hull.vertices) {
        const char* kind = box.is_corner(v)             ? "corner"
                           : box.on_edge(v)             ? "edge"
                                                        : "lattice";
        csv << to_token(v.x) << "," << to_token(v.y) << "," << approx(v.x) << ","
            << approx(v.y) << "," << kind << "\n";
      }
      std::vector<Point> dots;
      long x0 = qceil(box.xlo).convert_to<long>(), x1 = qfloor(box.xhi).convert_to<long>();
      long y0 = qceil(box.ylo).convert_to<long>(), y1 = qfloor(box.yhi).convert_to<long>();
      if ((x1 - x0 + 1) * (y1 - y0 + 1) <= 10000)
        for (long gx = x0; gx <= x1; ++gx)
          for (long gy = y0; gy <= y1; ++gy) {
            Point q = {BigInt(gx), BigInt(gy)};
            if (in_lattice(p.lattice, q)) dots.push_back(q);
          }
      auto dir = run_dir(cfg);
      out << csv.str();
      out << "\n" << hull.vertices.size() << " vertices\n";
      write_file(dir / "vertices.csv", csv.str());
      write_file(dir / "figure.svg", hull_figure_svg(p, box, hull, dots));
      out << "wrote " << (dir / "vertices.csv").string() << "\n";
      out << "wrote " << (dir / "figure.svg").string() << "\n";
      return 0;
    }

    if (cfg.subcommand == "solve") {
      if (cfg.which != "conv" && cfg.which != "closed" && cfg.which != "both") {
        err << "--which is conv, closed or both\n";
        return 2;
      }
      auto describe = [&](const char* label, const RelaxValue& r) {
        out << label << ": " << show(r.value);
        if (r.attained && r.witness) out << "  attained at " << show_vec(*r.witness);
        if (!r.attained && r.value.is_finite()) out << "  (infimum, not attained)";
        out << "\n";
        if (r.ray) out << "  ray: " << show_vec(*r.ray) << " from "
                       << (r.ray_base ? show_vec(*r.ray_base) : std::string("(?)")) << "\n";
      };
      if (cfg.which != "conv") describe("v_bar_star", solve_closed_conv(p));
      if (cfg.which != "closed") describe("v_star", solve_conv(p));
      return 0;
    }

    if (cfg.subcommand == "report") {
      GapReport rep = p.n <= 2 ? dim2_pipeline(p) : gap_report(p);
      describe_values(rep, out);
      out << "ordering v_L <= v_bar_star <= v_star: " << (rep.ordering_ok ? "ok" : "VIOLATED")
          << "\n";
      describe_flags(rep, out);
      if (rep.open_unattained)
        out << "open: finite closed optimum not attained; equality status unresolved\n";
      if (rep.multiplier) {
        out << "multiplier certificate: lambda " << show_vec(rep.multiplier->lambda) << ", mu "
            << show_vec(rep.multiplier->mu) << ", bound " << show(rep.multiplier->bound)
            << "\n";
      }
      if (rep.slater) out << "slater: " << to_string(rep.slater->outcome) << "\n";
      if (!rep.note.empty()) out << "note: " << rep.note << "\n";
      return 0;
    }

    if (cfg.subcommand == "classify") {
      RowClassification rc = classify_single_row(p);
      out << "scale: " << rc.scale << "\n";
      out << "scan complete: " << (rc.complete_scan ? "yes" : "no") << "\n";
      if (const CaseI* c1 = std::get_if<CaseI>(&rc.outcome)) {
        (void)c1;
        out << "case: I (the row is valid on the whole ground set)\n";
      } else if (const CaseII* c2 = std::get_if<CaseII>(&rc.outcome)) {
        out << "case: II (two feasible levels)\n";
        out << "  beta1 " << c2->beta1.str() << " at " << show_point(c2->on_beta1) << "\n";
        out << "  beta2 " << c2->beta2.str() << " at " << show_point(c2->on_beta2) << "\n";
      } else if (const CaseIII* c3 = std::get_if<CaseIII>(&rc.outcome)) {
        out << "case: III (every feasible point sits on the level line)\n";
        out << "  " << c3->on_level.size() << " sampled on-level points\n";
      } else if (const NotApplicable* na = std::get_if<NotApplicable>(&rc.outcome)) {
        out << "case: not applicable (" << na->why << ")\n";
      } else {
        out << "case: inconclusive (" << std::get_if<Inconclusive>(&rc.outcome)->why << ")\n";
      }
      out << "base infimum certified finite: " << (rc.equality_certified ? "yes" : "no") << "\n";
      if (rc.equality_certified && !std::holds_alternative<NotApplicable>(rc.outcome) &&
          !std::holds_alternative<Inconclusive>(rc.outcome))
        out << "conclusion: v^L = v_bar_star = v_star\n";
      return 0;
    }

    if (cfg.subcommand == "certify") {
      if (cfg.xstar_csv.empty()) {
        err << "certify needs --xstar q1,...,qn\n";
        return 2;
      }
      QVec x = parse_qvec(cfg.xstar_csv, p.d);
      if (static_cast<int>(x.size()) != p.n) {
        err << "--xstar needs " << p.n << " entries\n";
        return 2;
      }
      FarkasCertificate cert = farkas_certificate(p, x, detail::hull_valid_system(p));
      out << "lambda: " << show_vec(cert.lambda) << "\n";
      out << "mu: " << show_vec(cert.mu) << "\n";
      out << "bound: " << show(cert.bound) << "\n";
      out << "active rows: " << cert.active.rows.size() << "\n";
      out << "identity: " << (verify_multiplier(p, cert) ? "replays exactly" : "BROKEN") << "\n";
      return 0;
    }

    if (cfg.subcommand == "slater") {
      SlaterReport rep = slater_check(p);
      out << "outcome: " << to_string(rep.outcome) << "\n";
      if (rep.witness) {
        out << "interior point: " << show_vec(rep.witness->point) << "\n";
        out << "combination size: " << rep.witness->combination.size() << "\n";
        out << "spanning sample: " << (rep.witness->spanning ? "yes" : "no") << "\n";
      }
      if (!rep.note.empty()) out << "note: " << rep.note << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;  // unreachable for known subcommands
}

}  // namespace dualgap
