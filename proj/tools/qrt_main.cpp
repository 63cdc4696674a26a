// Command-line surface over the C library interface (qrt_c.h). The CLI
// assembles JSON requests, runs them through the shared library, and prints
// the resulting reports. Reports on stdout are byte-identical across runs
// and thread counts; timing goes to stderr.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qrt_c.h"

using ordered_json = nlohmann::ordered_json;

namespace {

struct CommonOpts {
  int max_order = 24;
  int precision = 50;
  bool oracle = true;
  std::string format = "text";
  std::string out;
};

int env_int(const char* name, int fallback, bool& ok) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long parsed = std::strtol(v, &end, 10);
  if (!end || *end != '\0' || parsed < 2 || parsed > 10000) {
    std::cerr << "error: invalid " << name << "=" << v << "\n";
    ok = false;
    return fallback;
  }
  return static_cast<int>(parsed);
}

void add_common(CLI::App* cmd, CommonOpts& c) {
  cmd->add_option("--max-order", c.max_order,
                  "Largest order scanned (env QRT_MAX_ORDER)");
  cmd->add_option("--precision", c.precision,
                  "Decimal digits for float diagnostics (env QRT_PRECISION)");
  cmd->add_flag("--oracle,!--no-oracle", c.oracle,
                "Run the independent group-law cross-check (default on)");
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", c.out, "Write the report to a file");
}

bool read_file(const std::string& path, std::string& contents,
               std::string& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err = "cannot open " + path;
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  contents = ss.str();
  return true;
}

bool parse_json_file(const std::string& path, ordered_json& j) {
  std::string text, err;
  if (!read_file(path, text, err)) {
    std::cerr << "error: " << err << "\n";
    return false;
  }
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return false;
  }
  return true;
}

bool write_output(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return true;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return false;
  }
  out << payload;
  return true;
}

// Runs one assembled request through the library and prints the report.
int run_request(ordered_json request, const CommonOpts& c,
                const char* timing_label) {
  request["max_order"] = c.max_order;
  request["precision"] = c.precision;
  request["oracle"] = c.oracle;
  auto t0 = std::chrono::steady_clock::now();
  qrt_result* res = nullptr;
  int rc = qrt_analyze_json(request.dump().c_str(), &res);
  auto ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - t0)
                .count();
  if (rc != QRT_OK) {
    std::cerr << "error: " << qrt_last_error() << "\n";
    return rc;
  }
  std::string payload = c.format == "json"
                            ? std::string(qrt_result_json(res)) + "\n"
                            : std::string(qrt_result_text(res));
  qrt_result_free(res);
  std::fprintf(stderr, "[timing] %s: %.1f ms\n", timing_label, ms);
  return write_output(c.out, payload) ? 0 : 2;
}

// The payload of an input file: either already wrapped ({"curve": ...}) or
// bare (the payload object itself).
ordered_json unwrap_or(const ordered_json& file, const char* key) {
  if (file.is_object() && file.contains(key)) return file.at(key);
  return file;
}

// ---- sweep ------------------------------------------------------------------

// Exact rational linspace for grid ranges (integer or p/q endpoints).
struct Frac {
  long long num = 0, den = 1;
};

bool parse_frac(const std::string& s, Frac& f) {
  const char* p = s.c_str();
  char* end = nullptr;
  long long num = std::strtoll(p, &end, 10);
  if (end == p) return false;
  long long den = 1;
  if (*end == '/') {
    const char* q = end + 1;
    den = std::strtoll(q, &end, 10);
    if (end == q || den == 0) return false;
  }
  if (*end != '\0') return false;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  f = {num, den};
  return true;
}

std::string frac_str(Frac f) {
  long long g = std::gcd(std::llabs(f.num), f.den);
  if (g > 1) {
    f.num /= g;
    f.den /= g;
  }
  if (f.den == 1) return std::to_string(f.num);
  return std::to_string(f.num) + "/" + std::to_string(f.den);
}

bool expand_grid_axis(const std::string& name, const ordered_json& spec,
                      std::vector<std::string>& values) {
  if (spec.is_array()) {
    for (const auto& v : spec)
      values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return !values.empty();
  }
  if (!spec.is_object()) return false;
  if (spec.contains("values")) {
    for (const auto& v : spec.at("values"))
      values.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    return !values.empty();
  }
  if (spec.contains("from") && spec.contains("to") && spec.contains("count")) {
    Frac a, b;
    auto get = [&](const char* k, Frac& f) {
      const auto& v = spec.at(k);
      std::string s = v.is_string() ? v.get<std::string>() : v.dump();
      return parse_frac(s, f);
    };
    int count = spec.at("count").get<int>();
    if (!get("from", a) || !get("to", b) || count < 1 || count > 100000) {
      std::cerr << "error: grid \"" << name
                << "\": from/to must be rational, 1 <= count <= 100000\n";
      return false;
    }
    for (int k = 0; k < count; ++k) {
      if (count == 1) {
        values.push_back(frac_str(a));
        break;
      }
      // a + k (b - a) / (count - 1), exact
      long long dn = b.num * a.den - a.num * b.den;
      long long dd = a.den * b.den * static_cast<long long>(count - 1);
      Frac v{a.num * dd + static_cast<long long>(k) * dn * a.den,
             a.den * dd};
      values.push_back(frac_str(v));
    }
    return true;
  }
  return false;
}

ordered_json substitute(const ordered_json& node, const std::string& name,
                        const std::string& value) {
  if (node.is_string() && node.get<std::string>() == name)
    return ordered_json(value);
  if (node.is_object()) {
    ordered_json out = ordered_json::object();
    for (auto it = node.begin(); it != node.end(); ++it)
      out[it.key()] = substitute(it.value(), name, value);
    return out;
  }
  if (node.is_array()) {
    ordered_json out = ordered_json::array();
    for (const auto& e : node) out.push_back(substitute(e, name, value));
    return out;
  }
  return node;
}

int cmd_sweep(const std::string& family_file, const CommonOpts& c,
              int threads) {
  ordered_json family;
  if (!parse_json_file(family_file, family)) return 2;
  if (!family.is_object() || !family.contains("template") ||
      !family.contains("grid")) {
    std::cerr << "error: family spec needs \"template\" and \"grid\"\n";
    return 2;
  }
  const ordered_json& grid = family.at("grid");
  if (!grid.is_object() || grid.empty() || grid.size() > 2) {
    std::cerr << "error: \"grid\" must define one or two parameters\n";
    return 2;
  }

  std::vector<std::pair<std::string, std::vector<std::string>>> axes;
  for (auto it = grid.begin(); it != grid.end(); ++it) {
    std::vector<std::string> values;
    if (!expand_grid_axis(it.key(), it.value(), values)) {
      std::cerr << "error: grid \"" << it.key()
                << "\": need \"values\" or from/to/count\n";
      return 2;
    }
    axes.emplace_back(it.key(), std::move(values));
  }

  // Cartesian product in row-major order of declaration.
  struct Point {
    std::vector<std::pair<std::string, std::string>> params;
  };
  std::vector<Point> points;
  if (axes.size() == 1) {
    for (const auto& v : axes[0].second)
      points.push_back({{{axes[0].first, v}}});
  } else {
    for (const auto& u : axes[0].second)
      for (const auto& v : axes[1].second)
        points.push_back({{{axes[0].first, u}, {axes[1].first, v}}});
  }

  std::vector<std::string> requests(points.size());
  for (size_t i = 0; i < points.size(); ++i) {
    ordered_json req = family.at("template");
    for (const auto& [name, value] : points[i].params)
      req = substitute(req, name, value);
    if (family.contains("max_order")) req["max_order"] = family.at("max_order");
    if (family.contains("precision")) req["precision"] = family.at("precision");
    if (!req.contains("max_order")) req["max_order"] = c.max_order;
    if (!req.contains("precision")) req["precision"] = c.precision;
    req["oracle"] = c.oracle;
    requests[i] = req.dump();
  }

  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> lines(points.size());
  std::vector<int> codes(points.size(), 0);
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      ordered_json line;
      ordered_json params = ordered_json::object();
      for (const auto& [name, value] : points[i].params)
        params[name] = value;
      line["params"] = std::move(params);
      qrt_result* res = nullptr;
      int rc = qrt_analyze_json(requests[i].c_str(), &res);
      codes[i] = rc;
      if (rc == QRT_OK) {
        line["report"] = ordered_json::parse(qrt_result_json(res));
        qrt_result_free(res);
      } else {
        line["error"] =
            ordered_json{{"code", rc}, {"message", qrt_last_error()}};
      }
      lines[i] = line.dump();
    }
  };
  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::min(
                            4u, std::max(1u, std::thread::hardware_concurrency())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  auto ms = std::chrono::duration<double, std::milli>(
                std::chrono::steady_clock::now() - t0)
                .count();

  std::ostringstream payload;
  for (const auto& l : lines) payload << l << "\n";
  std::fprintf(stderr, "[timing] sweep: %zu points, %d threads, %.1f ms\n",
               points.size(), n_threads, ms);
  if (!write_output(c.out, payload.str())) return 2;
  int worst = 0;
  for (int rc : codes) worst = std::max(worst, rc);
  return worst;
}

std::vector<std::string> split_sides(const std::string& sides) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : sides) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

ordered_json sides_json(const std::string& sides) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : split_sides(sides)) arr.push_back(s);
  return ordered_json{{"sides", std::move(arr)}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact finiteness and order analysis for biquadratic (2-2) "
      "correspondences: quarter-plane walk groups, QRT periodicity, "
      "four-bar Darboux transformations"};
  app.require_subcommand(1);

  bool env_ok = true;
  CommonOpts defaults;
  defaults.max_order = env_int("QRT_MAX_ORDER", 24, env_ok);
  defaults.precision = env_int("QRT_PRECISION", 50, env_ok);
  if (!env_ok) return 2;

  // analyze
  CommonOpts c_an = defaults;
  std::string an_file;
  auto* an = app.add_subcommand("analyze",
                                "Invariants, smoothness, classification and "
                                "group order of a biquadratic curve");
  an->add_option("file", an_file, "Curve JSON file")->required();
  add_common(an, c_an);

  // walk
  CommonOpts c_wk = defaults;
  std::string wk_file, wk_steps;
  std::vector<std::string> wk_t;
  auto* wk = app.add_subcommand(
      "walk", "Walk diagnostics and the group order of a walk kernel");
  wk->add_option("file", wk_file, "Walk or step-set JSON file");
  wk->add_option("--steps", wk_steps, "Bundled step-set name (e.g. S22)");
  wk->add_option("--t", wk_t, "Kernel weight sample (repeatable)");
  add_common(wk, c_wk);

  // linkage
  CommonOpts c_lk = defaults;
  std::string lk_file, lk_sides;
  auto* lk = app.add_subcommand(
      "linkage", "Darboux periodicity analysis of a four-bar linkage");
  lk->add_option("file", lk_file, "Link JSON file ({\"sides\": [...]})");
  lk->add_option("--sides", lk_sides, "Side lengths a,b,c,d");
  add_common(lk, c_lk);

  // convert
  CommonOpts c_cv = defaults;
  std::string cv_dir, cv_file, cv_sides, cv_lambda;
  auto* cv = app.add_subcommand(
      "convert", "Convert between walk weights and linkage sides");
  cv->add_option("direction", cv_dir, "to-link or to-walk")
      ->required()
      ->check(CLI::IsMember({"to-link", "to-walk"}));
  cv->add_option("file", cv_file, "Input JSON file (walk or link)");
  cv->add_option("--sides", cv_sides, "Side lengths a,b,c,d (to-walk)");
  cv->add_option("--lambda", cv_lambda, "Conversion scale (exact number)")
      ->required();
  add_common(cv, c_cv);

  // sweep
  CommonOpts c_sw = defaults;
  std::string sw_file;
  int sw_threads = 0;
  auto* sw = app.add_subcommand(
      "sweep", "Evaluate a parametrized family; one JSON line per point");
  sw->add_option("family", sw_file, "Family spec JSON file")->required();
  sw->add_option("--threads", sw_threads,
                 "Worker threads (default: up to 4)");
  add_common(sw, c_sw);

  // render
  CommonOpts c_rd = defaults;
  std::string rd_sides, rd_out;
  int rd_steps = 8;
  unsigned rd_seed = 20240803u;
  auto* rd = app.add_subcommand(
      "render", "Render a Darboux orbit of a four-bar linkage as SVG");
  rd->add_option("--sides", rd_sides, "Side lengths a,b,c,d")->required();
  rd->add_option("--steps", rd_steps, "Number of Darboux steps");
  rd->add_option("--seed", rd_seed, "Start-configuration seed");
  rd->add_option("--out", rd_out, "Output SVG file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (an->parsed()) {
    ordered_json file;
    if (!parse_json_file(an_file, file)) return 2;
    ordered_json request{{"curve", unwrap_or(file, "curve")}};
    return run_request(std::move(request), c_an, "analyze");
  }

  if (wk->parsed()) {
    if (wk_file.empty() == wk_steps.empty()) {
      std::cerr << "error: walk needs exactly one of <file> or --steps\n";
      return 2;
    }
    ordered_json request;
    if (!wk_steps.empty()) {
      request["steps"] = ordered_json{{"name", wk_steps}};
    } else {
      ordered_json file;
      if (!parse_json_file(wk_file, file)) return 2;
      if (file.is_object() && (file.contains("p") || file.contains("walk"))) {
        request["walk"] = unwrap_or(file, "walk");
      } else {
        request["steps"] = unwrap_or(file, "steps");
      }
    }
    if (!wk_t.empty()) {
      if (!request.contains("steps")) {
        std::cerr << "error: --t applies to step-set input only\n";
        return 2;
      }
      ordered_json ts = ordered_json::array();
      for (const auto& t : wk_t) ts.push_back(t);
      request["t"] = std::move(ts);
    }
    return run_request(std::move(request), c_wk, "walk");
  }

  if (lk->parsed()) {
    if (lk_file.empty() == lk_sides.empty()) {
      std::cerr << "error: linkage needs exactly one of <file> or --sides\n";
      return 2;
    }
    ordered_json payload;
    if (!lk_sides.empty()) {
      payload = sides_json(lk_sides);
    } else {
      ordered_json file;
      if (!parse_json_file(lk_file, file)) return 2;
      payload = unwrap_or(file, "link");
    }
    ordered_json request{{"link", std::move(payload)}};
    return run_request(std::move(request), c_lk, "linkage");
  }

  if (cv->parsed()) {
    ordered_json convert{{"direction", cv_dir}, {"lambda", cv_lambda}};
    if (cv_dir == "to-walk") {
      if (cv_sides.empty() == cv_file.empty()) {
        std::cerr
            << "error: convert to-walk needs exactly one of <file> or "
               "--sides\n";
        return 2;
      }
      if (!cv_sides.empty()) {
        convert["link"] = sides_json(cv_sides);
      } else {
        ordered_json file;
        if (!parse_json_file(cv_file, file)) return 2;
        convert["link"] = unwrap_or(file, "link");
      }
    } else {
      if (cv_file.empty()) {
        std::cerr << "error: convert to-link needs a walk JSON file\n";
        return 2;
      }
      ordered_json file;
      if (!parse_json_file(cv_file, file)) return 2;
      convert["walk"] = unwrap_or(file, "walk");
    }
    ordered_json request{{"convert", std::move(convert)}};
    return run_request(std::move(request), c_cv, "convert");
  }

  if (sw->parsed()) return cmd_sweep(sw_file, c_sw, sw_threads);

  if (rd->parsed()) {
    ordered_json request = sides_json(rd_sides);
    request["steps"] = rd_steps;
    request["seed"] = rd_seed;
    auto t0 = std::chrono::steady_clock::now();
    qrt_result* res = nullptr;
    int rc = qrt_render_svg_json(request.dump().c_str(), &res);
    auto ms = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (rc != QRT_OK) {
      std::cerr << "error: " << qrt_last_error() << "\n";
      return rc;
    }
    std::string svg = qrt_result_text(res);
    qrt_result_free(res);
    std::fprintf(stderr, "[timing] render: %.1f ms\n", ms);
    std::ofstream out(rd_out, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << rd_out << "\n";
      return 2;
    }
    out << svg;
    return 0;
  }

  return 2;
}
