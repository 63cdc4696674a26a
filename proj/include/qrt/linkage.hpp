#pragma once

// Planar four-bar linkages and their Darboux transformations: the
// correspondence curve of a linkage, exact closed-form periodicity
// conditions, the secondary curve and semi-periodicity, tangential
// (Pitot-type) degenerations, the walk conversion, and a floating-point
// geometric orbit layer with an SVG renderer.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qrt/biquad.hpp"
#include "qrt/number.hpp"
#include "qrt/singular.hpp"
#include "qrt/walks.hpp"

namespace qrt::linkage {

using biquad::Biquad;
using num::Number;
using num::Tower;

// Consecutive side lengths: V1V2 = a (fixed base), V2V3 = b, V3V4 = c,
// V4V1 = d.
struct FourBarLink {
  Number a, b, c, d;
};

// Positive sides and the strict closure inequality (every side shorter than
// the sum of the other three). Throws std::invalid_argument.
void validate(const FourBarLink& L);

// Corner coefficients of the correspondence curve in the chart
// x = cot(phi/2), y = -tan(psi/2), phi the joint angle at V2, psi at V1:
//   A22 = (a+b+d)^2 - c^2   (x^2 y^2)
//   A20 = (a+b-d)^2 - c^2   (x^2)
//   A02 = (a-b+d)^2 - c^2   (y^2)
//   A00 = (a-b-d)^2 - c^2   (1)
//   A11 = 8 b d             (x y)
Biquad link_correspondence(const FourBarLink& L);

// Exact invariants (polynomials in the squared side lengths):
Number S_invariant(const FourBarLink& L);  // a^2 - b^2 + c^2 - d^2
Number W_invariant(const FourBarLink& L);  // a^2 c^2 - b^2 d^2
Number T_invariant(const FourBarLink& L);  // a^4 - 2a^2(b^2+c^2+d^2) + b^4
                                           //   - 2b^2(c^2+d^2) + (c^2-d^2)^2
Number K4_invariant(const FourBarLink& L);
Number K6_invariant(const FourBarLink& L);

// Closed-form test "the Darboux order divides n" for n in 2..6:
//   n = 2:  S = 0
//   n = 3:  b^2 d^2 S^2 = W^2
//   n = 4:  S = 0, or a^2 c^2 = b^2 d^2, or K4 = 0
//   n = 5:  b^2 d^2 S^2 (a^2 c^2 S^2 - W^2)^2 = W^2 (W^2 - b^2 d^2 S^2)^2
//   n = 6:  S = 0, or b^2 d^2 S^2 = W^2, or a^2 c^2 S^2 = W^2, or K6 = 0
// Valid for a smooth correspondence curve.
bool closed_form_divisibility(const FourBarLink& L, int n);

struct PeriodicityReport {
  bool smooth = true;
  walks::CurveOrderResult order;  // unified verdict on the curve
  std::array<bool, 5> divides{};  // closed-form divisibility for n = 2..6
  bool closed_form_agrees = true; // closed forms vs Taylor-coefficient route
};

// Decides the Darboux order of the linkage. On smooth curves the
// closed-form conditions are checked against the Taylor-coefficient
// conditions for n = 2..6 (throws std::logic_error on disagreement).
PeriodicityReport periodicity(const FourBarLink& L, Tower& tower, int n_max,
                              int digits = 50);

// ---- secondary curve and semi-periodicity -----------------------------------

// For a centrally symmetric biquadratic (a21 = a12 = a10 = a01 = 0) returns
// the curve in u = x^2, v = y^2 with Qhat(x^2, y^2) = Q(x, y) Q(x, -y).
// Throws std::invalid_argument when q is not centrally symmetric.
Biquad secondary_curve(const Biquad& q);

struct SemiPeriodicityReport {
  // Minimal k <= n_max whose k-th Darboux iterate is the reflection across
  // the fixed side V1V2: the secondary order divides k, the primary order
  // does not. 0 when none exists in range.
  int semi_period = 0;
  int implied_period = 0;  // 2 * semi_period
  bool closed2 = false;    // a c = b d          (semi-period-2 condition)
  bool closed3 = false;    // a^2 c^2 S^2 = W^2  (semi-period-3 condition)
  walks::CurveOrderResult primary, secondary;
  std::string certificate;
};

SemiPeriodicityReport semi_periodicity(const FourBarLink& L, Tower& tower,
                                       int n_max, int digits = 50);

// ---- tangential degenerations -------------------------------------------------

struct TangentialReport {
  // Which side-sum degenerations hold; each makes one corner coefficient of
  // the correspondence curve vanish.
  bool tangential = false;       // a + c = b + d  (A00 = 0)
  bool ex_tangential_ab = false; // a + b = c + d  (A20 = 0)
  bool ex_tangential_ad = false; // a + d = b + c  (A02 = 0)
  std::string shape;             // "none", "generic", "kite", "rhombus",
                                 // "parallelogram"
  std::optional<Number> node_ratio;       // closed form, single degeneration
  bool ratio_matches_pipeline = false;    // closed form vs double-point route
  std::string status;                     // verdict from the singular pipeline
  std::optional<singular::SingularAnalysis> analysis;
};

// Analyzes a linkage with at least one tangential-type side-sum relation
// (shape = "none" and no analysis otherwise). Closed node ratios:
//   a + c = b + d:  b d / ((a - d)(a - b))
//   a + b = c + d:  b d / ((d - a)(a + b))
//   a + d = b + c:  b d / ((b - a)(a + d))
TangentialReport tangential_analysis(const FourBarLink& L, Tower& tower,
                                     int n_max, int digits = 50);

// ---- walk conversion ------------------------------------------------------------

struct LinkWalkConversion {
  walks::WalkSpec walk;  // non-strict
  Number lambda;
  Number mass;            // total mass of the produced walk
  bool stochastic = false;
  bool kernel_matches = false;  // kernel(walk) == (1/lambda) * correspondence
};

// Walk with p_00 = (8 b d + lambda)/lambda, axial steps zero and
// p_jk = ((a + j b + k d)^2 - c^2)/lambda for j, k = +-1. No normalization
// is applied; mass and stochasticity are reported as computed.
LinkWalkConversion link_to_walk(const FourBarLink& L, const Number& lambda);

struct WalkLinkInversion {
  FourBarLink link;
  bool kite_limit = false;  // a = b taken as the limit of the side recovery
  bool round_trip = false;  // link_to_walk(link, lambda) reproduces the walk
};

// Inverse side recovery from a diagonal walk (throws std::invalid_argument
// when an axial step has nonzero weight or a radicand is nonpositive).
// Square roots may extend the tower.
WalkLinkInversion walk_to_link(const walks::WalkSpec& w, const Number& lambda,
                               Tower& tower);

// ---- geometric layer (floating point) --------------------------------------------

struct Configuration {
  double phi, psi;  // joint angles at V2 and V1
};

struct QuadPoints {
  std::array<std::pair<double, double>, 4> v;  // V1, V2, V3, V4
};

QuadPoints configuration_points(const FourBarLink& L, const Configuration& c);

// (x, y) = (cot(phi/2), -tan(psi/2)).
std::pair<double, double> chart_coordinates(const Configuration& c);
Configuration configuration_from_chart(double x, double y);

// psi branches compatible with |V3 V4| = c at the given phi (0-2 entries).
std::vector<Configuration> configurations_at_phi(const FourBarLink& L,
                                                 double phi);

// One Darboux step: reflect V4 across the diagonal V1 V3, then V3 across
// the diagonal V2 V4'. Throws std::runtime_error when a diagonal shorter
// than 1e-12 makes the reflection ill-defined.
Configuration darboux_step_geometric(const FourBarLink& L,
                                     const Configuration& c);

// n-step closure of the geometric orbit (vertex-wise within tol).
bool orbit_closes(const FourBarLink& L, const Configuration& start, int n,
                  double tol = 1e-9);

// After n steps, the quadrilateral is the reflection of the start across
// the line V1 V2.
bool orbit_reflects(const FourBarLink& L, const Configuration& start, int n,
                    double tol = 1e-9);

// n-step closure from `trials` random starting configurations.
bool poristic_check(const FourBarLink& L, int n, int trials, unsigned seed,
                    double tol = 1e-9);

// Random valid configuration (rejection sampling on phi).
Configuration random_configuration(const FourBarLink& L, unsigned seed);

// Deterministic SVG strip of the orbit: `steps + 1` panels starting at
// `start`. Byte-identical output for identical inputs.
std::string render_orbit_svg(const FourBarLink& L, const Configuration& start,
                             int steps);

}  // namespace qrt::linkage
