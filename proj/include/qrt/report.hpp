#pragma once

// Structured reports: JSON wire formats for curves, walks, step sets,
// linkages and conversions, plus the deterministic text rendering. Every
// report embeds the exact certificate behind its verdict. All numbers are
// serialized as exact strings in the surd-tower grammar accepted by
// num::parse_number.

#include <string>
#include <vector>

#include "json.hpp"  // vendored single-header JSON library

#include "qrt/biquad.hpp"
#include "qrt/linkage.hpp"
#include "qrt/number.hpp"
#include "qrt/walks.hpp"

namespace qrt::report {

using ordered_json = nlohmann::ordered_json;

struct Options {
  int max_order = 24;     // Hankel / orbit scan bound
  int precision = 50;     // decimal digits for float diagnostics
  bool run_oracle = true; // independent group-law cross-check
};

// ---- wire-format parsing (throws std::invalid_argument on bad shapes) ------

// {"coefficients": [[a00,a01,a02],[a10,a11,a12],[a20,a21,a22]]},
// row index = x-degree, entries as exact number strings.
biquad::Biquad parse_curve(const ordered_json& j, num::Tower& tower);

// {"p": {"-1,-1": "3/10", "0,0": "1/5", ...}, "strict": true}
walks::WalkSpec parse_walk(const ordered_json& j, num::Tower& tower);

// {"name": "S17"} for a bundled set, or {"steps": [[0,1],[-1,0],[1,-1]]}
// (optionally with a custom "name").
walks::StepSet parse_step_set(const ordered_json& j);

// {"sides": ["3/2", "1", "sqrt(13)/2", "1"]}
linkage::FourBarLink parse_link(const ordered_json& j, num::Tower& tower);

// ---- report builders --------------------------------------------------------

ordered_json curve_report(const biquad::Biquad& q, num::Tower& tower,
                          const Options& opt);
ordered_json walk_report(const walks::WalkSpec& w, num::Tower& tower,
                         const Options& opt);
ordered_json step_set_report(const walks::StepSet& s,
                             const std::vector<num::Number>& ts,
                             num::Tower& tower, const Options& opt);
ordered_json linkage_report(const linkage::FourBarLink& L, num::Tower& tower,
                            const Options& opt);
ordered_json link_to_walk_report(const linkage::FourBarLink& L,
                                 const num::Number& lambda, num::Tower& tower);
ordered_json walk_to_link_report(const walks::WalkSpec& w,
                                 const num::Number& lambda, num::Tower& tower);

// Dispatches a full request object. Exactly one payload key is expected:
//   {"curve": {...}}   -> curve_report
//   {"walk": {...}}    -> walk_report
//   {"steps": {...}}   -> step_set_report ("t": [..] optional sample list)
//   {"link": {...}}    -> linkage_report
//   {"convert": {"direction": "to-link"|"to-walk", "lambda": "-10",
//                "walk"/"link": {...}}}
// Option keys "max_order", "precision", "oracle" override opt per request.
ordered_json analyze_request(const ordered_json& request, num::Tower& tower,
                             const Options& opt);

// Deterministic human-readable rendering of a report tree.
std::string render_text(const ordered_json& report);

}  // namespace qrt::report
