#pragma once

// Small-step random walks in the quarter plane: walk specifications and
// their kernel curves, bundled step sets, direct determinant conditions for
// group orders 4/6/8/10 (with Hankel fallbacks and diagnostics), analytic
// walk diagnostics, and the finiteness survey over step sets.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrt/biquad.hpp"
#include "qrt/cubic.hpp"
#include "qrt/number.hpp"
#include "qrt/singular.hpp"

namespace qrt::walks {

using biquad::Biquad;
using biquad::Mat3;
using biquad::Mat4;
using num::Number;
using num::Tower;

// ---- walk specifications --------------------------------------------------

// Transition probabilities p[i][j] for the step (i-1, j-1); p[1][1] is the
// probability of staying put.
struct WalkSpec {
  std::array<std::array<Number, 3>, 3> p{};
  bool strict = true;  // enforce nonnegativity and total mass one
};

Number total_mass(const WalkSpec& w);

// Strict walks: every entry >= 0, total mass exactly 1, and at least one
// step other than (0,0) has nonzero weight. Non-strict specs are only
// required to yield a nonzero kernel. Throws std::invalid_argument.
void validate(const WalkSpec& w);

// Kernel curve: a_{i+1, j+1} = p_{i j} except a_11 = p_00 - 1
// (x-degree is the first index of a).
Biquad kernel(const WalkSpec& w);

// Inverse of kernel(): p_{i j} = a_{i+1, j+1} except p_00 = a_11 + 1.
WalkSpec walk_from_kernel(const Biquad& q, bool strict = false);

// ---- step sets -------------------------------------------------------------

struct StepSet {
  std::string name;
  std::vector<std::pair<int, int>> steps;  // entries in {-1,0,1}^2 \ {(0,0)}
};

// The bundled step sets: the simple walk S1 and the seven sets S17..S23
// from the finiteness survey.
const std::vector<StepSet>& bundled_step_sets();
std::optional<StepSet> step_set_by_name(const std::string& name);

// xy * sum_{(i,j) in S} x^i y^j as a biquadratic.
Biquad xys_curve(const StepSet& s);

// Weighted kernel xy - t * (xy * sum_S x^i y^j).
Biquad kernel_t(const StepSet& s, const Number& t);

// Two coupled processors with arrival rates l1, l2 and service rates m1, m2.
// The kernel is written in the reciprocal chart, so the coefficient matrix
// has middle row (-m2, l1+l2+m1+m2, -l2) and middle column (-m1, ., -l1);
// its determinant vanishes identically (group order four family).
Biquad coupled_processor(const Number& l1, const Number& l2, const Number& m1,
                         const Number& m2);

// ---- direct order conditions ------------------------------------------------

// Determinantal data entering the closed-form order conditions.
struct OrderData {
  Mat3 M;      // coefficient matrix
  Mat4 Delta;  // cofactor-block matrix (group order six condition)
  Mat3 Omega;  // (group order eight condition)
  Number det_M, det_Delta, det_Omega;
  Number Xhat;   // degree-four invariant entering the order-ten condition
  Number B1hat;  // = 12 X
  Number C1hat;  // degree-four invariant entering the order-ten condition
};

OrderData order_data(const Biquad& q);

// C4 assembled from the degree-four invariants:
//   C4 = -(5/8) Xhat^4 / det^7 + (3/4) B1hat Xhat^2 / det^5 + C1hat / det^3.
// Equals the Taylor coefficient C4 of the associated cubic (identity
//   (12 X^2 - D) det(Omega) - 2 det(Delta)^2
//     = -(5/8) Xhat^4 + (3/4) det^2 B1hat Xhat^2 + det^4 C1hat).
// Throws std::domain_error when det = 0.
Number closed_form_C4(const OrderData& d);

// Auxiliary invariants of the direct order-eight criterion
//   4608 det^4 = (1/12) P (576 det^2 B1hat - P^2),
//   P = B1hat^2 - R^2 + 12 S T - 12 U V.
// The left-minus-right residual is divisible by det(Omega), so the relation
// holds on every curve with group order eight.
Number order8_polynomial_P(const Biquad& q);
bool order8_identity_holds(const OrderData& d, const Biquad& q);

struct OrderConditionReport {
  int group_order_tested = 0;  // 4, 6, 8 or 10
  bool condition_met = false;  // group order is exactly the tested value
  std::string route;           // "determinant" or "hankel-fallback"
  std::string certificate;     // exact vanishing / non-vanishing facts
};

// Direct test "group order == k" for k in {4, 6, 8, 10} on a smooth curve:
//   k =  4:  det M = 0
//   k =  6:  det Delta = 0 and det M != 0
//   k =  8:  det Omega = 0 and det M != 0
//   k = 10:  16 det(Omega)^2 =
//              (-10 Xhat^4 + 12 det^2 B1hat Xhat^2 + 8 det^4 C1hat) det(Delta)
//            and det M, det Delta, det Omega all nonzero.
// The order-ten route reports "hankel-fallback" when a lower determinant
// vanishes (the order is then already 4, 6 or 8 and the test is settled by
// the Taylor coefficients). Throws cubic::singular_curve_error on singular
// input.
OrderConditionReport order_condition(const Biquad& q, int k);

// Diagnostics attached to the order-ten condition over the reals.
struct Order10Diagnostics {
  bool discriminant_nonnegative = false;  // 9 det^4 B1hat^2 >=
                                          //   40 (2 detOmega^2/detDelta - det^4 C1hat)
  bool sign_condition = false;            // B1hat >= 0 or
                                          //   C1hat >= 2 detOmega^2/(detDelta det^4)
  // Candidate values of 5 Xhat^2 (both square-root branches) when the
  // branch discriminant has a square root inside the tower.
  std::optional<Number> branch_plus, branch_minus;
  bool xhat_on_branch = false;  // 5 Xhat^2 solves the branch quadratic;
                                // equivalent to the order-ten vanishing
};

// Requires det M != 0 and det Delta != 0 (throws std::domain_error).
Order10Diagnostics order10_diagnostics(const OrderData& d, Tower& tower);

// ---- analytic diagnostics ----------------------------------------------------

struct WalkDiagnostics {
  Number drift_x, drift_y;  // E[step]
  bool zero_drift = false;
  Number mxx, mxy, myy;                // second moments about the origin
  std::optional<Number> correlation;   // mxy / sqrt(mxx myy) when the square
                                       // roots lie inside the tower
  double correlation_approx = 0.0;     // always populated (mxx, myy > 0)
  double theta = 0.0;                  // arccos(-correlation)
};

// Requires positive mxx and myy (some horizontal and some vertical motion);
// throws std::domain_error otherwise.
WalkDiagnostics walk_diagnostics(const WalkSpec& w, Tower& tower, int digits = 50);

// ---- unified group order of a kernel curve ------------------------------------

struct CurveOrderResult {
  // "periodic", "aperiodic", "identity", "undefined-line-component",
  // "not-computed-complex-pair"
  std::string status;
  int qrt_order = 0;    // 0 unless periodic
  int group_order = 0;  // 2 * qrt_order when periodic
  std::string route;    // "cayley-smooth" or "singular:<case>"
  std::optional<singular::SingularAnalysis> singular_detail;
  std::string certificate;
};

// Routes a kernel curve to the smooth Hankel scan or to the singular
// pipeline and reports the group order of the curve. run_oracle controls
// the independent group-law cross-check on the smooth route.
CurveOrderResult group_order_of_curve(const Biquad& q, Tower& tower, int n_max,
                                      int digits = 50, bool run_oracle = true);

// ---- finiteness survey ----------------------------------------------------------

struct WeightedOrder {
  Number t;
  bool curve_smooth = false;
  CurveOrderResult result;
};

struct StepSetSurvey {
  StepSet set;
  // group of the unweighted curve xy * S; undefined when the curve has a
  // line component
  CurveOrderResult unweighted;
  std::vector<WeightedOrder> weighted;  // group of xy - t xy S per sample t
  bool weighted_consistent = false;     // all sampled t agree on the order
};

// Surveys one step set at the given t samples (default {1/5, 1/3, 2/7}).
StepSetSurvey survey_step_set(const StepSet& s, const std::vector<Number>& ts,
                              Tower& tower, int n_max, int digits = 50);
std::vector<Number> default_t_samples();

}  // namespace qrt::walks
