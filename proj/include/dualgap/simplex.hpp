#pragma once

#include <vector>

#include "dualgap/model.hpp"

// Two-phase primal simplex on a dense tableau, everything exact over Q(sqrt d).
// Bland's rule for both entering and leaving, so no cycling. Free variables are
// split, inequalities get slacks, every row gets an artificial. Results carry
// exact certificates (duals for Optimal, a feasible point plus improving ray
// for Unbounded) and are re-verified against the input before returning.

namespace dualgap {

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LP {
  int n = 0;
  QVec c;  // minimize c.x
  std::vector<Row> rows;
  std::vector<bool> nonneg;  // empty means every variable is nonnegative
};

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Quad value;      // Optimal only
  QVec x;          // Optimal: a minimizer; Unbounded: a feasible point
  QVec ray;        // Unbounded: direction with c.ray < 0 that stays feasible
  QVec row_duals;  // Optimal: exact multipliers, one per input row
};

inline LPResult solve_lp(const LP& lp) {
  const int n = lp.n;
  const int m = static_cast<int>(lp.rows.size());
  if (n <= 0 || static_cast<int>(lp.c.size()) != n) throw DimensionError("lp: bad objective");
  if (!lp.nonneg.empty() && static_cast<int>(lp.nonneg.size()) != n)
    throw DimensionError("lp: bad nonneg flags");
  for (const Row& r : lp.rows)
    if (static_cast<int>(r.coeffs.size()) != n) throw DimensionError("lp: bad row");
  auto is_nn = [&](int i) { return lp.nonneg.empty() || lp.nonneg[i]; };

  // column layout: structural (free vars split into +/-), slacks, artificials
  struct Col {
    int var;
    int sign;
  };
  std::vector<Col> structural;
  for (int i = 0; i < n; ++i) {
    structural.push_back({i, +1});
    if (!is_nn(i)) structural.push_back({i, -1});
  }
  const int ns = static_cast<int>(structural.size());
  std::vector<int> slack_of(m, -1);
  int nk = 0;
  for (int r = 0; r < m; ++r)
    if (lp.rows[r].sense != Sense::Eq) slack_of[r] = nk++;
  const int art0 = ns + nk;
  const int cols = art0 + m;

  std::vector<QVec> t(m, QVec(cols + 1, Quad(0)));
  std::vector<int> flip(m, 1);
  std::vector<int> basis(m);
  for (int r = 0; r < m; ++r) {
    const Row& row = lp.rows[r];
    for (int j = 0; j < ns; ++j)
      t[r][j] = row.coeffs[structural[j].var] * Quad(structural[j].sign);
    if (slack_of[r] >= 0) t[r][ns + slack_of[r]] = Quad(row.sense == Sense::Ge ? -1 : 1);
    t[r][cols] = row.rhs;
    if (t[r][cols].sign() < 0) {
      flip[r] = -1;
      for (Quad& v : t[r]) v = -v;
    }
    t[r][art0 + r] = Quad(1);
    basis[r] = art0 + r;
  }

  auto reduced = [&](const QVec& cv, int j) {
    Quad d = cv[j];
    for (int r = 0; r < m; ++r) d -= cv[basis[r]] * t[r][j];
    return d;
  };
  auto pivot = [&](int pr, int pj) {
    Quad p = t[pr][pj];
    for (Quad& v : t[pr]) v = v / p;
    for (int r = 0; r < m; ++r) {
      if (r == pr || t[r][pj].sign() == 0) continue;
      Quad f = t[r][pj];
      for (int j = 0; j <= cols; ++j) t[r][j] -= f * t[pr][j];
    }
    basis[pr] = pj;
  };
  // returns the entering column when unbounded, -1 at optimality
  auto run = [&](const QVec& cv) {
    for (long iter = 0;; ++iter) {
      if (iter > 200000) throw PreconditionError("simplex: iteration guard tripped");
      int enter = -1;
      for (int j = 0; j < art0; ++j) {
        bool basic = false;
        for (int r = 0; r < m && !basic; ++r) basic = basis[r] == j;
        if (!basic && reduced(cv, j).sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -1;
      int leave = -1;
      Quad best;
      for (int r = 0; r < m; ++r) {
        if (t[r][enter].sign() <= 0) continue;
        Quad ratio = t[r][cols] / t[r][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter);
    }
  };

  QVec c1(cols + 1, Quad(0)), c2(cols + 1, Quad(0));
  for (int r = 0; r < m; ++r) c1[art0 + r] = Quad(1);
  for (int j = 0; j < ns; ++j) c2[j] = lp.c[structural[j].var] * Quad(structural[j].sign);

  if (run(c1) >= 0) throw PreconditionError("simplex: phase one cannot be unbounded");
  Quad w;
  for (int r = 0; r < m; ++r) w += c1[basis[r]] * t[r][cols];
  LPResult res;
  if (w.sign() > 0) return res;  // Infeasible

  // pivot artificials out where possible; rows that stay artificial are
  // identically zero over real columns and inert from here on
  for (int r = 0; r < m; ++r) {
    if (basis[r] < art0) continue;
    for (int j = 0; j < art0; ++j) {
      if (t[r][j].sign() != 0) {
        pivot(r, j);
        break;
      }
    }
  }

  int enter = run(c2);
  auto structural_point = [&](const QVec& hat) {
    QVec x(n, Quad(0));
    for (int j = 0; j < ns; ++j) x[structural[j].var] += Quad(structural[j].sign) * hat[j];
    return x;
  };
  QVec hat(cols, Quad(0));
  for (int r = 0; r < m; ++r) hat[basis[r]] = t[r][cols];
  res.x = structural_point(hat);
  for (int r = 0; r < m; ++r)
    if (!row_holds(lp.rows[r], res.x)) throw PreconditionError("simplex: point check failed");
  for (int i = 0; i < n; ++i)
    if (is_nn(i) && res.x[i].sign() < 0) throw PreconditionError("simplex: point check failed");

  if (enter >= 0) {
    res.status = LPStatus::Unbounded;
    QVec rhat(cols, Quad(0));
    rhat[enter] = Quad(1);
    for (int r = 0; r < m; ++r) rhat[basis[r]] = -t[r][enter];
    res.ray = structural_point(rhat);
    if (dot(lp.c, res.ray).sign() >= 0) throw PreconditionError("simplex: ray check failed");
    for (int r = 0; r < m; ++r) {
      int s = dot(lp.rows[r].coeffs, res.ray).sign();
      bool ok = lp.rows[r].sense == Sense::Ge ? s >= 0 : lp.rows[r].sense == Sense::Le ? s <= 0 : s == 0;
      if (!ok) throw PreconditionError("simplex: ray check failed");
    }
    return res;
  }

  res.status = LPStatus::Optimal;
  res.value = dot(lp.c, res.x);
  res.row_duals.assign(m, Quad(0));
  Quad yb;
  for (int r = 0; r < m; ++r) {
    res.row_duals[r] = Quad(flip[r]) * (-reduced(c2, art0 + r));
    yb += res.row_duals[r] * lp.rows[r].rhs;
    int s = res.row_duals[r].sign();
    bool ok = lp.rows[r].sense == Sense::Ge ? s >= 0 : lp.rows[r].sense == Sense::Le ? s <= 0 : true;
    if (!ok) throw PreconditionError("simplex: dual check failed");
  }
  if (yb != res.value) throw PreconditionError("simplex: dual check failed");
  for (int i = 0; i < n; ++i) {
    Quad slack = lp.c[i];
    for (int r = 0; r < m; ++r) slack -= res.row_duals[r] * lp.rows[r].coeffs[i];
    if (is_nn(i) ? slack.sign() < 0 : slack.sign() != 0)
      throw PreconditionError("simplex: dual check failed");
  }
  return res;
}

}  // namespace dualgap
