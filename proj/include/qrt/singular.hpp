#pragma once

// Singular biquadratic correspondences: classification into the fifteen
// component configurations of a (2,2) divisor on P1 x P1, double-point
// normalization, and the exact periodicity decisions available in each
// configuration (angle recognition at an ordinary double point, the order
// of a Mobius composition for split conic pairs, zero-drift walk kernels).

#include <optional>
#include <string>
#include <vector>

#include "qrt/biquad.hpp"
#include "qrt/number.hpp"
#include "qrt/poly.hpp"

namespace qrt::singular {

using biquad::Biquad;
using biquad::Coord;
using biquad::PointQ;
using num::Number;
using num::Tower;
using poly::Poly;

// The fifteen singular configurations; `smooth` marks the nonsingular case.
enum class CaseLabel {
  smooth,
  i,     // irreducible with one ordinary double point
  ii,    // irreducible with one cusp
  iii,   // two (1,1) conics meeting in two distinct points
  iv,    // two (1,1) conics tangent at one point
  v,     // one (1,1) conic doubled
  vi,    // conic + horizontal + vertical line, lines crossing off the conic
  vii,   // conic + horizontal + vertical line, lines crossing on the conic
  viii,  // two horizontal + two vertical lines, all simple
  ix,    // one double horizontal + one double vertical line
  x,     // two horizontal lines + one double vertical line
  xi,    // one double horizontal line + two vertical lines
  xii,   // horizontal line + (2,1) curve, transversal
  xiii,  // horizontal line + (2,1) curve, tangent
  xiv,   // vertical line + (1,2) curve, transversal
  xv,    // vertical line + (1,2) curve, tangent
};

std::string to_string(CaseLabel label);  // "smooth", "i", ..., "xv"
std::string describe(CaseLabel label);   // one-line structure summary

// One component of the zero divisor.
struct Component {
  // vertical-line | horizontal-line | vertical-line-pair |
  // horizontal-line-pair | vertical-line-pair-conjugate |
  // horizontal-line-pair-conjugate | conic | conic-pair-conjugate |
  // curve-(2,1) | curve-(1,2) | irreducible-nodal | irreducible-cuspidal
  std::string kind;
  int multiplicity = 1;
  std::optional<Coord> location;  // lines only: x = v or y = h (maybe infinity)
  // conic: {xy, x, y, 1} coefficients; line pair: ascending coefficients of
  // the unsplit quadratic factor; curve-(2,1)/(1,2): row-major a_ij.
  std::vector<Number> coeffs;
  int bidegree_x = 0;
  int bidegree_y = 0;
};

struct SingularClass {
  CaseLabel label = CaseLabel::smooth;
  // Multiplicity patterns of the two discriminant quartics, including roots
  // at infinity; empty optional when the discriminant vanishes identically.
  std::optional<std::vector<int>> d1, d2;
  std::vector<Component> components;
  bool symmetrizable = false;  // configurations (i)-(ix) and smooth curves
};

// Decides the configuration by peeling line components (coefficient-content
// gcds in each variable plus degree drops at infinity) and dispatching on
// the bidegree of the remaining factor. The result is cross-checked against
// the expected discriminant multiplicity patterns; any inconsistency throws
// std::logic_error.
SingularClass classify(const Biquad& q, Tower& tower);

// Exact recognition of r = cos^2(m*pi/n) with gcd(m,n) = 1, 1 <= m,
// 2 <= n <= n_max. Rational r uses the closed four-value test (0, 1/4, 1/2,
// 3/4 are the only rational values below 1 that a squared cosine takes at
// rational multiples of pi); irrational tower values are recognized from a
// high-precision continued-fraction expansion of arccos(sqrt(r))/pi with
// acceptance tolerance 1e-30.
struct CosSqRecognition {
  bool periodic = false;
  int n = 0;                         // minimal period when periodic
  int m = 0;                         // angle witness, theta = m*pi/n
  bool degenerate_identity = false;  // r == 1
  std::string method;  // rational-closed-form | continued-fraction |
                       // out-of-range | cusp | proportional-identity
};
CosSqRecognition recognize_cos_sq(const Number& r, int n_max, int digits = 50);

// Translation data moving the unique double point of an irreducible singular
// curve to the origin. Charts are inverted first when the double point lies
// at infinity, so the returned curve always has a00 = a10 = a01 = 0.
struct NormalizedDoublePoint {
  Biquad curve;
  PointQ location;  // double point in the original charts
  bool inverted_x = false;
  bool inverted_y = false;
};
NormalizedDoublePoint normalize_double_point(const Biquad& q);

// Periodicity at the double point of a normalized curve (a00 = a10 = a01
// = 0): a cusp is never periodic; at an ordinary double point the step is
// n-periodic exactly when a11^2 / (4 a20 a02) = cos^2(m pi / n).
struct DoublePointReport {
  bool is_cusp = false;
  std::optional<Number> ratio;  // a11^2 / (4 a20 a02); empty when undefined
  CosSqRecognition recognition;
};
DoublePointReport double_point_period(const Biquad& normalized, int n_max,
                                      int digits = 50);

// Projective 2x2 matrix acting on P1 as u -> (a u + b) / (c u + d).
struct Mobius {
  Number a, b, c, d;
  Number det() const { return a * d - b * c; }
  Number tr() const { return a + d; }
};

// Splitting of a line-free singular biquadratic into two (1,1) graphs
// y = phi_j(x), available when the y-fiber discriminant is +-(square).
struct ConicSplit {
  bool real = true;        // false: conjugate-complex pair, no real graphs
  bool identical = false;  // doubled conic, the two graphs coincide
  std::optional<Mobius> phi1, phi2;
  Poly s;   // discriminant = sign * s^2 (zero polynomial when identical)
  int sign = 1;
};
ConicSplit split_conic_pair(const Biquad& q, Tower& tower);

// Order of the composition phi2^{-1} o phi1; the correspondence built from
// the two graphs is N-periodic for every start exactly when this composition
// has order N. Decided through r = tr^2 / (4 det) with the same cos^2
// recognition, and confirmed by direct matrix powering.
struct MobiusOrderReport {
  int order = 0;     // 0 when no order <= n_max exists
  std::string type;  // identity | elliptic | parabolic | loxodromic
  Number ratio;
  CosSqRecognition recognition;
  int power_oracle_order = 0;  // 0 when no power <= n_max is scalar
  bool oracle_agreement = true;
};
MobiusOrderReport mobius_order(const Mobius& phi1, const Mobius& phi2,
                               int n_max, int digits = 50);

// Periodicity of a zero-drift walk kernel through the boundary-sum ratio
//   (a00 - a02 - a20 + a22)^2 / (4 (a20+a21+a22)(a02+a12+a22)).
// The three zero-drift coefficient relations must hold exactly. When the
// kernel encodes a probability step distribution the report also carries the
// correlation coefficient R, theta = arccos(-R), and the group order
// 2 * min { l >= 1 : l * theta / pi integral } as an independent route.
struct ZeroDriftReport {
  Number ratio;
  CosSqRecognition recognition;
  bool probability_data = false;
  double correlation = 0.0;
  double theta = 0.0;
  int group_order_from_theta = 0;  // 0 when no l <= n_max works
  bool paths_agree = true;         // ratio route vs angle route
};
ZeroDriftReport zero_drift_period(const Biquad& q, int n_max, int digits = 50);

// One-call driver: classify, then run whichever periodicity decision the
// configuration supports.
struct SingularAnalysis {
  SingularClass cls;
  // smooth | periodic | aperiodic | identity | undefined-line-component |
  // not-computed-complex-pair
  std::string status;
  std::optional<int> qrt_period;
  std::optional<int> group_order;  // 2 * qrt_period
  std::optional<DoublePointReport> double_point;
  std::optional<PointQ> double_point_location;
  std::optional<MobiusOrderReport> mobius;
};
SingularAnalysis analyze_singular(const Biquad& q, Tower& tower, int n_max,
                                  int digits = 50);

}  // namespace qrt::singular
