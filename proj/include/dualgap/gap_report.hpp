#pragma once

#include <optional>
#include <string>
#include <variant>

#include "dualgap/conditions.hpp"
#include "dualgap/dual.hpp"

// Assembles the three-value comparison for a problem: the dual bound, the
// optimum over the closed hull, and the optimum over the hull itself, with
// the ordering invariant and whichever equality argument applies. Also the
// planar pipeline that walks the attained / diverging / interior trichotomy.

namespace dualgap {

// which argument pins v_L = v_bar_star (the stronger ones pin v_star too)
enum class EqualityTag {
  None,
  DivergenceSqueeze,    // v_bar_star = -inf drags the dual down with it
  SlaterInterior,       // interior-point argument, equality of all three
  SingleRowLevels,      // one rational row classified, equality of all three
  MultiplierAtOptimum,  // exact multipliers at an attained closed optimum
};

inline const char* to_string(EqualityTag t) {
  switch (t) {
    case EqualityTag::None: return "none";
    case EqualityTag::DivergenceSqueeze: return "divergence-squeeze";
    case EqualityTag::SlaterInterior: return "slater-interior";
    case EqualityTag::SingleRowLevels: return "single-row-levels";
    default: return "multiplier-at-optimum";
  }
}

struct GapReport {
  ExtReal v_L = ExtReal::neg_inf();
  ExtReal v_bar_star = ExtReal::pos_inf();
  ExtReal v_star = ExtReal::pos_inf();
  bool ordering_ok = false;  // v_L <= v_bar_star <= v_star, the hard invariant
  bool dual_gap = false;     // v_L < v_bar_star strictly
  bool hull_gap = false;     // v_bar_star < v_star strictly
  EqualityTag equality = EqualityTag::None;
  DualBound dual;
  RelaxValue closed;
  RelaxValue conv;
  std::optional<FarkasCertificate> multiplier;  // with MultiplierAtOptimum
  std::optional<SlaterReport> slater;           // filled when consulted
  std::optional<RowClassification> row_case;    // filled when consulted
  // finite closed optimum that no point attains: whether equality at the
  // optimum survives is left open, so no multiplier claim is made
  bool open_unattained = false;
  std::string note;
};

namespace detail {

// rows known valid on the closed hull, usable as the local polyhedron of a
// multiplier certificate; falls back to the lattice-defining rows, which
// contain the hull by construction
inline ConstraintSystem hull_valid_system(const Problem& p) {
  ConstraintSystem sys;
  sys.dim = p.n;
  ClosureDescription C = analytic_closure(p.lattice);
  if (const HalfspaceForm* h = std::get_if<HalfspaceForm>(&C)) {
    sys.rows = h->sys.rows;
    return sys;
  }
  if (std::holds_alternative<ConvOfUnion>(C)) {
    sys.rows = closure_valid_rows(p.lattice);
    return sys;
  }
  if (p.lattice.kind == LatticeSetSpec::Kind::PolyLattice)
    sys.rows = piece_with_flags(p.lattice, 0).rows;
  // a finite list gets the empty system; only multipliers on the coupling
  // rows alone can then close the certificate
  return sys;
}

}  // namespace detail

inline GapReport gap_report(const Problem& p) {
  GapReport rep;
  const int m = static_cast<int>(p.coupling.rows.size());
  if (m == 0) {
    DualEval ev = eval_G(p, QVec{});
    rep.dual.v_L = ev.value;
    rep.dual.status = ev.certified ? BoundStatus::Certified : BoundStatus::BestEffort;
    rep.dual.best_lambda = QVec{};
    rep.dual.trace.push_back(std::move(ev));
  } else if (m == 1) {
    rep.dual = maximize_dual_1d(p);
  } else {
    rep.dual = maximize_dual_nd(p);
  }
  rep.closed = solve_closed_conv(p);
  rep.conv = solve_conv(p);

  rep.v_L = rep.dual.v_L;
  rep.v_bar_star = rep.closed.value;
  rep.v_star = rep.conv.value;
  rep.ordering_ok = rep.v_L <= rep.v_bar_star && rep.v_bar_star <= rep.v_star;
  rep.dual_gap = rep.v_L < rep.v_bar_star;
  rep.hull_gap = rep.v_bar_star < rep.v_star;
  rep.open_unattained = rep.v_bar_star.is_finite() && !rep.closed.attained;

  if (rep.v_bar_star.is_neg_inf()) {
    rep.equality = EqualityTag::DivergenceSqueeze;
  } else {
    rep.slater = slater_check(p);
    if (rep.slater->outcome == SlaterOutcome::Holds) rep.equality = EqualityTag::SlaterInterior;
  }
  if (rep.equality == EqualityTag::None && m == 1) {
    rep.row_case = classify_single_row(p);
    bool cased = !std::holds_alternative<NotApplicable>(rep.row_case->outcome) &&
                 !std::holds_alternative<Inconclusive>(rep.row_case->outcome);
    if (cased && rep.row_case->equality_certified) rep.equality = EqualityTag::SingleRowLevels;
  }
  if (rep.equality == EqualityTag::None && rep.closed.attained && rep.closed.witness) {
    try {
      rep.multiplier = farkas_certificate(p, *rep.closed.witness, detail::hull_valid_system(p));
      rep.equality = EqualityTag::MultiplierAtOptimum;
    } catch (const Error&) {
    }
  }

  // a tag asserts v_L = v_bar_star; a certified dual value must agree
  if (rep.equality != EqualityTag::None && rep.dual.status == BoundStatus::Certified &&
      rep.v_L != rep.v_bar_star) {
    rep.equality = EqualityTag::None;
    rep.note = "certificate contradicted the certified dual value";
  }
  return rep;
}

// Planar case walk: with a feasible point in hand, either the closed optimum
// diverges and squeezes the dual, or an interior point settles all three
// values, or an attained optimum carries exact multipliers.
inline GapReport dim2_pipeline(const Problem& p) {
  if (p.n > 2) throw PreconditionError("planar pipeline got a higher-dimensional problem");

  bool feasible = false;
  detail::LatticeSample S = detail::sample_lattice(p.lattice, 8, 2000000);
  for (const Point& s : S.points) {
    QVec x(p.n);
    for (int j = 0; j < p.n; ++j) x[j] = Quad(s[j]);
    if (detail::rows_hold(p.coupling.rows, x)) {
      feasible = true;
      break;
    }
  }
  if (!feasible && p.lattice.kind != LatticeSetSpec::Kind::FiniteList) {
    const size_t count =
        p.lattice.kind == LatticeSetSpec::Kind::PolyLattice ? 1 : p.lattice.pieces.size();
    for (size_t i = 0; i < count && !feasible; ++i) {
      ConstraintSystem cs = piece_with_flags(p.lattice, static_cast<int>(i));
      for (const Row& r : p.coupling.rows) cs.rows.push_back(r);
      feasible = find_lattice_point(cs).has_value();
    }
  }
  if (!feasible) throw PreconditionError("feasibility not established: no lattice point meets the coupling rows");

  GapReport rep = gap_report(p);
  switch (rep.equality) {
    case EqualityTag::DivergenceSqueeze:
      rep.note = "closed optimum diverges; the dual bound is squeezed to -inf";
      break;
    case EqualityTag::SlaterInterior:
      rep.note = "interior point meets the coupling rows; all three values coincide";
      break;
    case EqualityTag::SingleRowLevels:
      rep.note = "single rational row classified; all three values coincide";
      break;
    case EqualityTag::MultiplierAtOptimum:
      rep.note = "attained closed optimum with exact multipliers; dual meets it";
      break;
    case EqualityTag::None:
      rep.note = rep.open_unattained ? "finite closed optimum is not attained; equality left open"
                                     : "no equality certificate assembled";
      break;
  }
  return rep;
}

}  // namespace dualgap
