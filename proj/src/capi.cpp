#include "qrt_c.h"

#include <exception>
#include <new>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "qrt/cubic.hpp"
#include "qrt/linkage.hpp"
#include "qrt/number.hpp"
#include "qrt/report.hpp"

using qrt::report::ordered_json;

struct qrt_result {
  std::string json;
  std::string text;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, const std::string& message, qrt_result** out) {
  t_last_error = message;
  if (out) *out = nullptr;
  return code;
}

int finish(ordered_json report, std::string text, qrt_result** out) {
  if (!out) return QRT_ERR_INPUT;
  auto* r = new (std::nothrow) qrt_result;
  if (!r) return QRT_ERR_INTERNAL;
  r->json = report.dump(2);
  r->text = std::move(text);
  t_last_error.clear();
  *out = r;
  return QRT_OK;
}

// Distinguishes bad input (caller-fixable) from internal cross-check
// failures. invalid_argument/domain_error/out_of_range and JSON parse
// errors are input errors; anything else (logic_error from a dual-route
// disagreement, bad_alloc, ...) is internal.
int run(const char* request_json, qrt_result** out) {
  if (!request_json) return fail(QRT_ERR_INPUT, "null request", out);
  try {
    ordered_json request = ordered_json::parse(request_json);
    qrt::num::Tower tower;
    ordered_json report =
        qrt::report::analyze_request(request, tower, qrt::report::Options{});
    std::string text = qrt::report::render_text(report);
    return finish(std::move(report), std::move(text), out);
  } catch (const nlohmann::json::exception& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const qrt::cubic::singular_curve_error& e) {
    // a singular curve reaching a smooth-only routine is a routing bug
    return fail(QRT_ERR_INTERNAL, e.what(), out);
  } catch (const qrt::num::parse_error& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const std::invalid_argument& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const std::domain_error& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const std::out_of_range& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const std::exception& e) {
    return fail(QRT_ERR_INTERNAL, e.what(), out);
  } catch (...) {
    return fail(QRT_ERR_INTERNAL, "unknown failure", out);
  }
}

int wrap_payload(const char* payload_json, const char* key, qrt_result** out) {
  if (!payload_json) return fail(QRT_ERR_INPUT, "null request", out);
  try {
    ordered_json envelope;
    envelope[key] = ordered_json::parse(payload_json);
    return run(envelope.dump().c_str(), out);
  } catch (const nlohmann::json::exception& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  }
}

}  // namespace

extern "C" {

int qrt_analyze_json(const char* request_json, qrt_result** out) {
  return run(request_json, out);
}

int qrt_analyze_curve_json(const char* curve_json, qrt_result** out) {
  return wrap_payload(curve_json, "curve", out);
}

int qrt_analyze_walk_json(const char* walk_json, qrt_result** out) {
  return wrap_payload(walk_json, "walk", out);
}

int qrt_analyze_linkage_json(const char* link_json, qrt_result** out) {
  return wrap_payload(link_json, "link", out);
}

int qrt_render_svg_json(const char* request_json, qrt_result** out) {
  if (!request_json) return fail(QRT_ERR_INPUT, "null request", out);
  try {
    ordered_json request = ordered_json::parse(request_json);
    qrt::num::Tower tower;
    qrt::linkage::FourBarLink L = qrt::report::parse_link(request, tower);
    int steps = request.value("steps", 8);
    if (steps < 1 || steps > 500)
      throw std::invalid_argument("render: steps must be in 1..500");
    unsigned seed = request.value("seed", 20240803u);
    auto start = qrt::linkage::random_configuration(L, seed);
    std::string svg = qrt::linkage::render_orbit_svg(L, start, steps);
    ordered_json report{{"kind", "render"},
                        {"steps", steps},
                        {"seed", seed},
                        {"svg", svg}};
    return finish(std::move(report), std::move(svg), out);
  } catch (const nlohmann::json::exception& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const qrt::num::parse_error& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const std::invalid_argument& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const std::domain_error& e) {
    return fail(QRT_ERR_INPUT, e.what(), out);
  } catch (const std::exception& e) {
    return fail(QRT_ERR_INTERNAL, e.what(), out);
  }
}

const char* qrt_result_json(const qrt_result* r) {
  return r ? r->json.c_str() : "";
}

const char* qrt_result_text(const qrt_result* r) {
  return r ? r->text.c_str() : "";
}

void qrt_result_free(qrt_result* r) { delete r; }

const char* qrt_last_error(void) { return t_last_error.c_str(); }

int qrt_api_version(void) { return 1; }

}  // extern "C"
