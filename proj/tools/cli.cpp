#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <boost/version.hpp>
#include <CLI11.hpp>

#include "leeyang/geometry.hpp"
#include "leeyang/laguerre_checks.hpp"
#include "leeyang/oracle_quadrature.hpp"
#include "leeyang/series.hpp"
#include "leeyang/transfer_recursion.hpp"
#include "leeyang/version.hpp"

namespace leeyang::cli {

namespace {

using nlohmann::json;

constexpr int kSchema = 1;
constexpr int kMaxDegree = 60;
constexpr int kMaxChain = 12;
constexpr int kMaxDimension = 64;
constexpr double kMemoryBudget = 3.0 * (1ull << 30);

const std::vector<std::pair<std::string, Command>> kCommands{
    {"laplace", Command::Laplace},
    {"phi", Command::Phi},
    {"zeros", Command::Zeros},
    {"verify", Command::Verify},
    {"oracle-compare", Command::OracleCompare},
    {"geometry-selftest", Command::GeometrySelftest},
    {"counterexample-scan", Command::CounterexampleScan},
    {"sweep", Command::Sweep},
};

const std::set<std::string> kKeys{"command", "measure", "N",       "D",       "J",    "ladder",
                                  "degreeLadder", "M", "tolerances", "outputDir", "seed", "backend",
                                  "oracle",  "jobs",    "y",       "nodes",   "samples", "scan",
                                  "evidenceDepth"};

Command parse_command(const std::string& name) {
  for (const auto& [n, c] : kCommands) {
    if (n == name) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

std::vector<int> int_list(const json& j, const char* key) {
  const auto& v = j.at(key);
  std::vector<int> out;
  auto one = [&](const json& e) {
    if (!e.is_number_integer()) throw ConfigError(std::string(key) + " entries must be integers");
    out.push_back(e.get<int>());
  };
  if (v.is_array()) {
    for (const auto& e : v) one(e);
  } else {
    one(v);
  }
  if (out.empty()) throw ConfigError(std::string(key) + " must be nonempty");
  return out;
}

std::vector<double> number_list(const json& j, const char* key) {
  const auto& v = j.at(key);
  std::vector<double> out;
  auto one = [&](const json& e) {
    if (!e.is_number()) throw ConfigError(std::string(key) + " entries must be numbers");
    const double x = e.get<double>();
    if (!std::isfinite(x)) throw ConfigError(std::string(key) + " entries must be finite");
    out.push_back(x);
  };
  if (v.is_array()) {
    for (const auto& e : v) one(e);
  } else {
    one(v);
  }
  if (out.empty()) throw ConfigError(std::string(key) + " must be nonempty");
  return out;
}

std::string format_g(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string format_full(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Coupling parse_coupling(const json& e) {
  Coupling c;
  if (e.is_number()) {
    c.value = e.get<double>();
    if (!std::isfinite(c.value)) throw ConfigError("J must be finite");
    c.exact = to_rational(c.value);
    c.tag = format_g(c.value);
  } else if (e.is_string()) {
    const auto text = e.get<std::string>();
    try {
      c.exact = rational_from_string(text);
    } catch (const std::exception& ex) {
      throw ConfigError("J: " + std::string(ex.what()));
    }
    c.value = to_double(c.exact);
    c.tag = text;
    std::replace(c.tag.begin(), c.tag.end(), '/', '_');
  } else {
    throw ConfigError("J entries must be numbers or rational strings");
  }
  return c;
}

void check_ladder(const std::vector<int>& ladder, const char* what) {
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 2 || ladder[i] > kMaxDegree) {
      throw ConfigError(std::string(what) + " degrees must lie in [2, " + std::to_string(kMaxDegree) + "]");
    }
    if (i > 0 && ladder[i] <= ladder[i - 1]) throw ConfigError(std::string(what) + " must be strictly increasing");
  }
}

bool uses_grid(Command c) {
  return c != Command::GeometrySelftest && c != Command::CounterexampleScan;
}

bool needs_ladder(Command c) { return c == Command::Zeros || c == Command::Verify || c == Command::Sweep; }

bool is_sphere(const RadialMeasure& m) { return m.kind == MeasureKind::SphereDelta; }

// Name of the direct oracle available for (N, D), empty when none exists.
std::string oracle_kind(const RadialMeasure& m, int n, int d) {
  if (n == 1) return (m.kind == MeasureKind::Tabulated && d < 2) ? "" : "radial-quadrature";
  if (!is_sphere(m)) return "";
  if (d == 2 && n <= 4) return "angular-grid";
  if (d >= 2 && n == 2) return "monte-carlo";
  return "";
}

std::string guarantee_label(bool covered) { return covered ? "theorem-covered" : "outside theorem guarantee"; }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

struct Artifact {
  std::string name;
  std::string content;
};

struct TaskOutput {
  std::string name;
  std::vector<std::string> log;
  std::vector<Artifact> artifacts;
  json verdicts = json::array();
  json evidence = json::array();
  json extra = json::object();
  double seconds = 0.0;
  std::string error;
  bool covered_violation = false;
  bool failed_check = false;
};

struct Task {
  std::string name;
  std::function<void(TaskOutput&)> body;
};

class Context {
 public:
  Context(const RunConfig& cfg, std::string hash) : cfg_(cfg), hash_(std::move(hash)) {}

  const RunConfig& cfg() const { return cfg_; }

  void add_csv(TaskOutput& out, const std::string& stem, std::string csv, json meta) const {
    meta["schema"] = kSchema;
    meta["config_hash"] = hash_;
    meta["artifact"] = stem + ".csv";
    out.artifacts.push_back({stem + ".csv", std::move(csv)});
    out.artifacts.push_back({stem + ".json", meta.dump(2) + "\n"});
  }

  void add_json(TaskOutput& out, const std::string& name, json body) const {
    body["schema"] = kSchema;
    body["config_hash"] = hash_;
    out.artifacts.push_back({name, body.dump(2) + "\n"});
  }

 private:
  const RunConfig& cfg_;
  std::string hash_;
};

std::string stem(const char* prefix, int n, int d, const Coupling& j) {
  return std::string(prefix) + "_" + std::to_string(n) + "_" + std::to_string(d) + "_" + j.tag;
}

void oracle_table(const Context& ctx, TaskOutput& out, int n, int d, const Coupling& j,
                  const std::vector<double>& phi_coefficients) {
  const auto& cfg = ctx.cfg();
  const auto kind = oracle_kind(cfg.measure, n, d);
  if (kind.empty()) {
    out.log.push_back("N=" + std::to_string(n) + ": no direct oracle for this measure and dimension");
    return;
  }
  std::string csv = "y,phi,oracle_re,oracle_im,oracle_error,rel_diff,method\n";
  double worst = 0.0;
  for (double y : cfg.ys) {
    const double phi_value = horner(phi_coefficients, -y * y);
    OracleResult o;
    if (kind == "radial-quadrature") {
      o = laplace_direct(cfg.measure, d, -y * y);
    } else if (kind == "angular-grid") {
      o = z_direct_circle(n, j.value, cfg.measure.radius, y, cfg.nodes);
    } else {
      o = z_direct_mc(n, d, j.value, cfg.measure.radius, y, cfg.samples, cfg.seed);
    }
    const double rel = std::abs(phi_value - o.value) / std::max(std::abs(o.value), 1e-300);
    worst = std::max(worst, rel);
    csv += format_full(y) + "," + format_full(phi_value) + "," + format_full(o.value.real()) + "," +
           format_full(o.value.imag()) + "," + format_full(o.estimated_error) + "," + format_full(rel) + "," +
           o.method + "\n";
  }
  json meta{{"N", n}, {"D", d}, {"J", j.value}, {"method", kind}, {"max_rel_diff", worst},
            {"truncation_degree", cfg.ladder.back()}};
  if (kind == "angular-grid") meta["nodes"] = cfg.nodes;
  if (kind == "monte-carlo") {
    meta["samples"] = cfg.samples;
    meta["seed"] = cfg.seed;
  }
  ctx.add_csv(out, stem("oracle", n, d, j), std::move(csv), meta);
  out.log.push_back("N=" + std::to_string(n) + ": oracle " + kind + " max relative difference " + format_g(worst));
}

void laplace_task(const Context& ctx, TaskOutput& out, int d) {
  const auto& cfg = ctx.cfg();
  const int m = cfg.ladder.back();
  const std::string name = "laplace_" + std::to_string(d);
  if (cfg.backend == Backend::Rational) {
    const auto v = laplace_transform_exact(cfg.measure, d, m);
    ctx.add_csv(out, name, to_csv(v),
                {{"D", d}, {"M", m}, {"measure", v.measure_label}, {"pi_power", v.pi_power}, {"backend", "rational"}});
  } else {
    const auto v = laplace_transform(cfg.measure, d, m);
    ctx.add_csv(out, name, to_csv(v),
                {{"D", d}, {"M", m}, {"measure", v.measure_label}, {"pi_power", v.pi_power}, {"backend", "float"}});
    if (cfg.oracle) oracle_table(ctx, out, 1, d, Coupling{0.0, Rational(0), "0"}, v.coefficients);
  }
  out.log.push_back("laplace series D=" + std::to_string(d) + " through degree " + std::to_string(m));
}

void rational_phi_task(const Context& ctx, TaskOutput& out, int d, const Coupling& j) {
  const auto& cfg = ctx.cfg();
  const int m = cfg.ladder.back();
  const int max_n = *std::max_element(cfg.chain_lengths.begin(), cfg.chain_lengths.end());
  const auto chain = phi_chain<Rational>(max_n, laplace_transform_exact(cfg.measure, d, m), j.exact, m);
  for (int n : cfg.chain_lengths) {
    const auto& s = chain[static_cast<std::size_t>(n - 1)];
    auto meta = metadata_json(s, std::nullopt);
    meta["backend"] = "rational";
    meta["J_exact"] = rational_to_string(j.exact);
    ctx.add_csv(out, stem("phi", n, d, j), to_csv(s), meta);
  }
  out.log.push_back("exact recursion through degree " + std::to_string(m));
}

void grid_task(const Context& ctx, TaskOutput& out, int d, const Coupling& j) {
  const auto& cfg = ctx.cfg();
  const auto cmd = cfg.command;
  const bool want_phi = cmd == Command::Phi || cmd == Command::Sweep;
  const bool want_zeros = needs_ladder(cmd);
  const bool want_evidence = cmd == Command::Verify || cmd == Command::Sweep;
  const bool want_oracle = cmd == Command::OracleCompare || cfg.oracle;

  if (cfg.backend == Backend::Rational) {
    rational_phi_task(ctx, out, d, j);
    return;
  }

  const int max_n = *std::max_element(cfg.chain_lengths.begin(), cfg.chain_lengths.end());
  std::vector<int> degrees = cfg.ladder;
  if (!want_phi && !want_zeros) degrees = {cfg.ladder.back()};
  std::vector<std::vector<PartitionSeries<double>>> chains;
  for (int m : degrees) {
    const auto start = std::chrono::steady_clock::now();
    chains.push_back(phi_chain<double>(max_n, laplace_transform(cfg.measure, d, m), j.value, m));
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    out.log.push_back("recursion M=" + std::to_string(m) + " in " + format_g(dt.count()) + " s");
  }
  const auto& top = chains.back();

  if (want_phi) {
    for (int n : cfg.chain_lengths) {
      const auto& s = top[static_cast<std::size_t>(n - 1)];
      std::optional<int> stable;
      if (chains.size() >= 2) {
        stable = stable_through(chains[chains.size() - 2][static_cast<std::size_t>(n - 1)].coefficients,
                                s.coefficients);
      }
      auto meta = metadata_json(s, stable);
      meta["backend"] = "float";
      ctx.add_csv(out, stem("phi", n, d, j), to_csv(s), meta);
    }
  }

  if (want_zeros) {
    const bool covered = theorem_covered(cfg.measure, d, j.value);
    const auto reports = analyze_chain_ladder(chains, cfg.zero_options);
    for (int n : cfg.chain_lengths) {
      const auto& r = reports[static_cast<std::size_t>(n - 1)];
      const int stable_roots = static_cast<int>(
          std::count_if(r.classes.begin(), r.classes.end(), [](RootClass c) { return c != RootClass::Unstable; }));
      auto meta = to_json(r);
      meta["N"] = n;
      meta["D"] = d;
      meta["J"] = j.value;
      meta["guarantee"] = guarantee_label(covered);
      ctx.add_csv(out, stem("zeros", n, d, j), to_csv(r), meta);

      json verdict{{"N", n},
                   {"D", d},
                   {"J", j.value},
                   {"measure", cfg.measure.label},
                   {"verdict", std::string(verdict_name(r.overall))},
                   {"theorem_covered", covered},
                   {"guarantee", guarantee_label(covered)},
                   {"stable_roots", stable_roots},
                   {"stable_through", r.stable_through},
                   {"converged", r.converged}};
      if (want_evidence) {
        const auto& s = top[static_cast<std::size_t>(n - 1)];
        const auto ev = laguerre_evidence(s.coefficients, default_window(s.truncation_degree, cfg.zero_options.max_window),
                                          cfg.evidence_depth, r.label, cfg.zero_options);
        verdict["laguerre_evidence"] = std::string(outcome_name(ev.overall));
        out.evidence.push_back(to_json(ev));
      }
      out.verdicts.push_back(verdict);
      if (covered && r.overall == Verdict::Violated) {
        out.covered_violation = true;
        out.log.push_back("N=" + std::to_string(n) + ": Violated inside the theorem-covered regime");
      }
      out.log.push_back("N=" + std::to_string(n) + ": " + std::string(verdict_name(r.overall)) + " (" +
                        std::to_string(stable_roots) + " stable roots)");
    }
  }

  if (want_oracle) {
    for (int n : cfg.chain_lengths) oracle_table(ctx, out, n, d, j, top[static_cast<std::size_t>(n - 1)].coefficients);
  }
}

void geometry_task(const Context& ctx, TaskOutput& out) {
  const auto r = geometry_selftest(ctx.cfg().seed);
  auto body = to_json(r);
  body["seed"] = ctx.cfg().seed;
  ctx.add_json(out, "geometry_selftest.json", body);
  out.extra["geometry"] = to_json(r);
  out.failed_check = !r.passed;
  out.log.push_back(std::string("geometry self-test ") + (r.passed ? "passed" : "FAILED"));
}

void scan_task(const Context& ctx, TaskOutput& out) {
  const auto& cfg = ctx.cfg();
  const auto& sc = cfg.scan;
  const auto scan = counterexample_scan(sc.a_min, sc.a_max, sc.step, sc.dimension, sc.degrees, cfg.zero_options);
  std::string csv = "a,verdict,stable_roots,off_axis_re,off_axis_im\n";
  for (const auto& p : scan.points) {
    const bool covered = theorem_covered(counterexample_measure(p.a), sc.dimension, 1.0);
    csv += format_full(p.a) + "," + std::string(verdict_name(p.verdict)) + "," + std::to_string(p.stable_roots) + ",";
    if (p.off_axis_roots.empty()) {
      csv += ",\n";
    } else {
      csv += format_full(p.off_axis_roots.front().real()) + "," + format_full(p.off_axis_roots.front().imag()) + "\n";
    }
    out.verdicts.push_back({{"a", p.a},
                            {"D", sc.dimension},
                            {"measure", counterexample_measure(p.a).label},
                            {"verdict", std::string(verdict_name(p.verdict))},
                            {"theorem_covered", covered},
                            {"guarantee", guarantee_label(covered)},
                            {"stable_roots", p.stable_roots}});
    if (covered && p.verdict == Verdict::Violated) out.covered_violation = true;
  }
  auto meta = to_json(scan);
  ctx.add_csv(out, "counterexample_scan", std::move(csv),
              {{"dimension", scan.dimension}, {"degrees", scan.degrees}, {"violating", scan.violating}});
  ctx.add_json(out, "counterexample_scan.json", meta);
  out.extra["counterexample"] = {{"violating", scan.violating}, {"points", scan.points.size()}};
  out.log.push_back(std::to_string(scan.violating.size()) + " of " + std::to_string(scan.points.size()) +
                    " scan points Violated");
}

std::vector<Task> build_tasks(const Context& ctx) {
  const auto& cfg = ctx.cfg();
  std::vector<Task> tasks;
  switch (cfg.command) {
    case Command::GeometrySelftest:
      tasks.push_back({"geometry-selftest", [&ctx](TaskOutput& o) { geometry_task(ctx, o); }});
      return tasks;
    case Command::CounterexampleScan:
      tasks.push_back({"counterexample-scan", [&ctx](TaskOutput& o) { scan_task(ctx, o); }});
      return tasks;
    case Command::Laplace:
      for (int d : cfg.dimensions) {
        tasks.push_back({"laplace D=" + std::to_string(d), [&ctx, d](TaskOutput& o) { laplace_task(ctx, o, d); }});
      }
      return tasks;
    default:
      break;
  }
  for (int d : cfg.dimensions) {
    for (const auto& j : cfg.couplings) {
      tasks.push_back({"D=" + std::to_string(d) + " J=" + j.tag, [&ctx, d, &j](TaskOutput& o) { grid_task(ctx, o, d, j); }});
    }
  }
  return tasks;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int effective_jobs(const RunConfig& cfg, std::size_t tasks) {
  int jobs = cfg.jobs > 0 ? cfg.jobs : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (uses_grid(cfg.command)) {
    const double bytes = 2.0 * binomial(cfg.ladder.back() + 6, 6) * (cfg.backend == Backend::Float ? 8.0 : 64.0);
    jobs = std::min(jobs, std::max(1, static_cast<int>(kMemoryBudget / bytes)));
  }
  return std::max(1, std::min(jobs, static_cast<int>(tasks)));
}

json versions() {
  return {{"leeyang", std::string(kVersion)},
          {"boost", BOOST_LIB_VERSION},
          {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
          {"cli11", CLI11_VERSION},
          {"compiler", __VERSION__}};
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  f << content;
  if (!f) throw std::runtime_error("cannot write " + p.string());
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& [n, cmd] : kCommands) {
    if (cmd == c) return n;
  }
  return "unknown";
}

std::string config_hash(const json& canonical) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(canonical.dump())));
  return buf;
}

RunConfig parse_config(const json& j, const Overrides& ov) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!kKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  RunConfig cfg;
  try {
    if (ov.command) {
      cfg.command = parse_command(*ov.command);
    } else if (j.contains("command")) {
      cfg.command = parse_command(j.at("command").get<std::string>());
    } else {
      throw ConfigError("no command given");
    }

    if (j.contains("measure")) {
      try {
        cfg.measure = measure_from_json(j.at("measure"));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("measure: ") + e.what());
      }
    }
    const auto validation = validate_measure(cfg.measure);
    if (!validation.passed) {
      std::string msg = "measure failed validation";
      for (const auto& d : validation.diagnostics) msg += "; " + d;
      throw ConfigError(msg);
    }
    if (cfg.measure.label.empty()) cfg.measure.label = std::string(measure_kind_name(cfg.measure.kind));

    if (j.contains("N")) cfg.chain_lengths = int_list(j, "N");
    if (j.contains("D")) cfg.dimensions = int_list(j, "D");
    for (int n : cfg.chain_lengths) {
      if (n < 1 || n > kMaxChain) throw ConfigError("N must lie in [1, " + std::to_string(kMaxChain) + "]");
    }
    for (int d : cfg.dimensions) {
      if (d < 1 || d > kMaxDimension) throw ConfigError("D must lie in [1, " + std::to_string(kMaxDimension) + "]");
    }

    if (j.contains("J")) {
      const auto& v = j.at("J");
      if (v.is_array()) {
        for (const auto& e : v) cfg.couplings.push_back(parse_coupling(e));
      } else {
        cfg.couplings.push_back(parse_coupling(v));
      }
      if (cfg.couplings.empty()) throw ConfigError("J must be nonempty");
    } else {
      cfg.couplings.push_back(parse_coupling(json(0.5)));
    }

    if (j.contains("ladder") && j.contains("degreeLadder")) throw ConfigError("give either ladder or degreeLadder");
    if (j.contains("ladder")) cfg.ladder = int_list(j, "ladder");
    if (j.contains("degreeLadder")) cfg.ladder = int_list(j, "degreeLadder");
    if (j.contains("M")) {
      if (j.contains("ladder") || j.contains("degreeLadder")) throw ConfigError("give either M or a ladder");
      cfg.ladder = int_list(j, "M");
      if (cfg.ladder.size() != 1) throw ConfigError("M must be a single integer");
    }
    check_ladder(cfg.ladder, "ladder");
    if (needs_ladder(cfg.command) && cfg.ladder.size() < 2) {
      throw ConfigError("command '" + command_name(cfg.command) + "' needs a ladder of at least two degrees");
    }

    if (j.contains("tolerances")) {
      const auto& t = j.at("tolerances");
      if (!t.is_object()) throw ConfigError("tolerances must be an object");
      for (const auto& [key, value] : t.items()) {
        if (key != "root" && key != "drift" && key != "maxWindow") throw ConfigError("unknown tolerance '" + key + "'");
      }
      cfg.zero_options.tolerance = t.value("root", cfg.zero_options.tolerance);
      cfg.zero_options.drift_tolerance = t.value("drift", cfg.zero_options.drift_tolerance);
      cfg.zero_options.max_window = t.value("maxWindow", cfg.zero_options.max_window);
    }
    if (!(cfg.zero_options.tolerance > 0.0) || !(cfg.zero_options.drift_tolerance > 0.0) ||
        cfg.zero_options.max_window < 1) {
      throw ConfigError("tolerances must be positive");
    }

    if (j.contains("outputDir")) cfg.output_dir = j.at("outputDir").get<std::string>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("backend")) cfg.backend = parse_backend(j.at("backend").get<std::string>());
    if (j.contains("oracle")) cfg.oracle = j.at("oracle").get<bool>();
    if (j.contains("jobs")) cfg.jobs = j.at("jobs").get<int>();
    if (j.contains("y")) cfg.ys = number_list(j, "y");
    if (j.contains("nodes")) cfg.nodes = j.at("nodes").get<int>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<long long>();
    if (j.contains("evidenceDepth")) cfg.evidence_depth = j.at("evidenceDepth").get<int>();
    if (j.contains("scan")) {
      const auto& s = j.at("scan");
      if (!s.is_object()) throw ConfigError("scan must be an object");
      for (const auto& [key, value] : s.items()) {
        if (key != "aMin" && key != "aMax" && key != "step" && key != "D" && key != "degrees") {
          throw ConfigError("unknown scan key '" + key + "'");
        }
      }
      cfg.scan.a_min = s.value("aMin", cfg.scan.a_min);
      cfg.scan.a_max = s.value("aMax", cfg.scan.a_max);
      cfg.scan.step = s.value("step", cfg.scan.step);
      cfg.scan.dimension = s.value("D", cfg.scan.dimension);
      if (s.contains("degrees")) cfg.scan.degrees = int_list(s, "degrees");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  if (ov.output_dir) cfg.output_dir = *ov.output_dir;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.backend) {
    try {
      cfg.backend = parse_backend(*ov.backend);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (ov.oracle) cfg.oracle = true;
  if (ov.jobs) cfg.jobs = *ov.jobs;

  if (cfg.jobs < 0) throw ConfigError("jobs must be >= 0");
  if (cfg.nodes < 64 || (cfg.nodes & (cfg.nodes - 1)) != 0) throw ConfigError("nodes must be a power of two >= 64");
  if (cfg.samples < 100000) throw ConfigError("samples must be >= 100000");
  if (cfg.evidence_depth < 0 || cfg.evidence_depth > 8) throw ConfigError("evidenceDepth must lie in [0, 8]");
  if (cfg.output_dir.empty()) throw ConfigError("outputDir must be nonempty");
  if (cfg.command == Command::CounterexampleScan) {
    const auto& s = cfg.scan;
    if (!(s.step > 0.0) || !(s.a_max >= s.a_min) || !std::isfinite(s.a_min) || !std::isfinite(s.a_max)) {
      throw ConfigError("scan range invalid");
    }
    if ((s.a_max - s.a_min) / s.step > 10000) throw ConfigError("scan has too many points");
    if (s.dimension < 1 || s.dimension > kMaxDimension) throw ConfigError("scan D out of range");
    if (s.degrees.size() < 2) throw ConfigError("scan degrees need at least two entries");
    check_ladder(s.degrees, "scan degrees");
  }
  if (cfg.backend == Backend::Rational) {
    if (cfg.command != Command::Laplace && cfg.command != Command::Phi) {
      throw ConfigError("the rational backend supports the laplace and phi commands only");
    }
    if (!is_sphere(cfg.measure)) throw ConfigError("the rational backend needs a sphere measure");
    for (int d : cfg.dimensions) {
      if (d % 2 != 0) throw ConfigError("the rational backend needs even D");
    }
    if (cfg.oracle) throw ConfigError("--oracle needs the float backend");
  }
  if (cfg.command == Command::OracleCompare) {
    for (int d : cfg.dimensions) {
      for (int n : cfg.chain_lengths) {
        if (oracle_kind(cfg.measure, n, d).empty()) {
          throw ConfigError("no direct oracle for N=" + std::to_string(n) + " D=" + std::to_string(d) +
                            " with this measure");
        }
      }
    }
  }

  json couplings = json::array();
  for (const auto& c : cfg.couplings) couplings.push_back(rational_to_string(c.exact));
  cfg.canonical = {{"command", command_name(cfg.command)},
                   {"measure", to_json(cfg.measure)},
                   {"N", cfg.chain_lengths},
                   {"D", cfg.dimensions},
                   {"J", couplings},
                   {"ladder", cfg.ladder},
                   {"tolerances",
                    {{"root", cfg.zero_options.tolerance},
                     {"drift", cfg.zero_options.drift_tolerance},
                     {"maxWindow", cfg.zero_options.max_window}}},
                   {"seed", cfg.seed},
                   {"backend", std::string(backend_name(cfg.backend))},
                   {"oracle", cfg.oracle},
                   {"y", cfg.ys},
                   {"nodes", cfg.nodes},
                   {"samples", cfg.samples},
                   {"evidenceDepth", cfg.evidence_depth},
                   {"scan",
                    {{"aMin", cfg.scan.a_min},
                     {"aMax", cfg.scan.a_max},
                     {"step", cfg.scan.step},
                     {"D", cfg.scan.dimension},
                     {"degrees", cfg.scan.degrees}}}};
  return cfg;
}

int run(const RunConfig& cfg, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const auto hash = config_hash(cfg.canonical);
  const Context ctx(cfg, hash);
  const auto tasks = build_tasks(ctx);
  const int jobs = effective_jobs(cfg, tasks.size());

  std::vector<TaskOutput> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      auto& out = results[i];
      out.name = tasks[i].name;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        tasks[i].body(out);
      } catch (const std::exception& e) {
        out.error = e.what();
        out.log.push_back(std::string("error: ") + e.what());
      }
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
      out.seconds = dt.count();
    }
  };
  {
    std::vector<std::jthread> pool;
    for (int k = 1; k < jobs; ++k) pool.emplace_back(worker);
    worker();
  }

  std::filesystem::create_directories(cfg.output_dir);
  json report{{"schema", kSchema},
              {"command", command_name(cfg.command)},
              {"config_hash", hash},
              {"config", cfg.canonical},
              {"versions", versions()},
              {"jobs", jobs}};
  json verdicts = json::array();
  json evidence = json::array();
  json task_logs = json::array();
  json errors = json::array();
  json artifacts = json::array();
  json task_times = json::object();
  bool covered_violation = false;
  bool failed_check = false;
  for (const auto& r : results) {
    for (const auto& a : r.artifacts) {
      write_file(cfg.output_dir / a.name, a.content);
      artifacts.push_back(a.name);
    }
    for (const auto& v : r.verdicts) verdicts.push_back(v);
    for (const auto& e : r.evidence) evidence.push_back(e);
    for (const auto& [k, v] : r.extra.items()) report[k] = v;
    json t{{"name", r.name}, {"seconds", r.seconds}, {"log", r.log}};
    if (!r.error.empty()) {
      t["error"] = r.error;
      errors.push_back({{"task", r.name}, {"error", r.error}});
    }
    task_logs.push_back(t);
    task_times[r.name] = r.seconds;
    covered_violation = covered_violation || r.covered_violation;
    failed_check = failed_check || r.failed_check;
  }
  const int status = (covered_violation || failed_check) ? 1 : 0;
  const std::chrono::duration<double> total = std::chrono::steady_clock::now() - start;
  report["verdicts"] = verdicts;
  if (!evidence.empty()) report["class_evidence"] = evidence;
  report["tasks"] = task_logs;
  report["errors"] = errors;
  report["artifacts"] = artifacts;
  report["timings"] = {{"total_seconds", total.count()}, {"tasks", task_times}};
  report["status"] = status;
  write_file(cfg.output_dir / "report.json", report.dump(2) + "\n");

  for (const auto& v : verdicts) {
    log << v.value("measure", std::string{}) << " D=" << v.at("D").get<int>();
    if (v.contains("N")) log << " N=" << v.at("N").get<int>() << " J=" << format_g(v.at("J").get<double>());
    if (v.contains("a")) log << " a=" << format_g(v.at("a").get<double>());
    log << ": " << v.at("verdict").get<std::string>() << " (" << v.at("guarantee").get<std::string>() << ")\n";
  }
  for (const auto& e : errors) {
    log << "error in " << e.at("task").get<std::string>() << ": " << e.at("error").get<std::string>() << "\n";
  }
  if (covered_violation) log << "Violated verdict inside the theorem-covered regime\n";
  if (failed_check) log << "self-test failed\n";
  log << "report: " << (cfg.output_dir / "report.json").string() << "\n";
  return status;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Lee-Yang zeros of O(D) spin chain partition functions"};
  std::vector<std::string> names;
  for (const auto& [n, c] : kCommands) names.push_back(n);

  std::string command;
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string backend;
  bool oracle = false;
  int jobs = 0;
  app.add_option("command", command, "Pipeline to run")->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "JSON run configuration");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Random seed");
  auto* backend_opt = app.add_option("--backend", backend, "Coefficient field")->check(CLI::IsMember({"float", "rational"}));
  app.add_flag("--oracle", oracle, "Write direct-integration comparison tables");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads (default: core count)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  Overrides ov;
  if (!command.empty()) ov.command = command;
  if (*out_opt) ov.output_dir = out_dir;
  if (*seed_opt) ov.seed = seed;
  if (*backend_opt) ov.backend = backend;
  ov.oracle = oracle;
  if (*jobs_opt) ov.jobs = jobs;

  RunConfig cfg;
  try {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) throw ConfigError("cannot read config '" + config_path + "'");
      try {
        j = json::parse(f);
      } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
      }
    }
    cfg = parse_config(j, ov);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    return run(cfg, std::cout);
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace leeyang::cli
