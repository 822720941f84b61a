#include "polarmax/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <list>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "polarmax/asymptotics.hpp"
#include "polarmax/closed_forms.hpp"
#include "polarmax/continuous.hpp"
#include "polarmax/covering.hpp"
#include "polarmax/io.hpp"
#include "polarmax/procedures.hpp"
#include "polarmax/solver.hpp"

namespace polarmax::cli {

namespace {

// Raised when a computation ran but did not produce a trustworthy answer.
struct SolverFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// "sphere:3" style text, or a JSON shape descriptor object.
Domain parse_set(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\n");
  if (first != std::string::npos && text[first] == '{') return domain_from_json(Json::parse(text));
  return Domain::parse(text);
}

Domain make_set(const std::string& spec, const std::string& cloud_path) {
  if (!cloud_path.empty()) return Domain::cloud(load_points_csv(cloud_path));
  return parse_set(spec);
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const int v = std::stoi(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad integer list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("range must look like 3:100");
  std::size_t u1 = 0, u2 = 0;
  const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
  const int lo = std::stoi(a, &u1), hi = std::stoi(b, &u2);
  if (u1 != a.size() || u2 != b.size() || lo > hi) throw std::invalid_argument("bad range '" + text + "'");
  return {lo, hi};
}

Json envelope(const Json& config) {
  Json j;
  j["tool"] = "polarmax";
  j["version"] = tool_version();
  j["config_hash"] = config_hash(config);
  j["config"] = config;
  return j;
}

void csv_preamble(std::ostream& os, const Json& config) {
  os << "# polarmax " << tool_version() << " config_hash=" << config_hash(config) << '\n';
  os << "# config " << config.dump() << '\n';
}

// Where results go: the --out file, or the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::invalid_argument("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : fallback_; }

 private:
  std::ostream& fallback_;
  std::unique_ptr<std::ofstream> file_;
};

struct SolveArgs {
  std::string kernel = "riesz:2";
  std::string set = "circle";
  std::string cloud;
  std::string set_b;
  int n = 0;
  std::string mode;
  int restarts = 4;
  int iterations = 2000;
  int stages = 20;
  double beta0 = 10.0;
  double beta_max = 1e5;
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
  int resolution = 0;
  int threads = 0;
  std::string out;
  std::string profile_csv;
};

int do_solve(const SolveArgs& a, std::ostream& out) {
  const KernelSpec kernel = KernelSpec::parse(a.kernel);
  const Domain A = make_set(a.set, a.cloud);
  SolveOptions opts;
  opts.mode = a.mode.empty() ? (a.set_b.empty() ? Mode::unconstrained : Mode::two_plate) : parse_mode(a.mode);
  if (!a.set_b.empty()) {
    if (opts.mode != Mode::two_plate) throw std::invalid_argument("--setB needs --mode two-plate");
    opts.plate = parse_set(a.set_b);
  }
  opts.restarts = a.restarts;
  opts.iterations = a.iterations;
  opts.stages = a.stages;
  opts.beta_start = a.beta0;
  opts.beta_end = a.beta_max;
  opts.tolerance = a.tolerance;
  opts.seed = a.seed;
  opts.threads = a.threads;
  opts.resolution = a.resolution > 0 ? a.resolution : default_resolution(A, std::max(a.n, 1));
  if (a.n < 1) throw std::invalid_argument("--n is required and must be >= 1");

  Json config;
  config["command"] = "solve";
  config["kernel"] = kernel.describe();
  config["set"] = a.cloud.empty() ? A.describe() : "cloud:" + a.cloud;
  if (opts.plate) config["setB"] = opts.plate->describe();
  config["n"] = a.n;
  config["mode"] = to_string(opts.mode);
  config["restarts"] = opts.restarts;
  config["iterations"] = opts.iterations;
  config["stages"] = opts.stages;
  config["beta0"] = opts.beta_start;
  config["beta_max"] = opts.beta_end;
  config["tolerance"] = opts.tolerance;
  config["seed"] = opts.seed;
  config["resolution"] = opts.resolution;

  const SolveResult r = maximize_polarization(kernel, A, a.n, opts);

  Json result = to_json(r.report);
  result["configuration"] = to_json(r.config.points());
  result["best_restart"] = r.best_restart;
  Json values = Json::array();
  for (double v : r.restart_values) values.push_back(std::isfinite(v) ? Json(v) : Json(format_double(v)));
  result["restart_values"] = values;
  if (std::isfinite(r.warm_start_value)) result["warm_start_value"] = r.warm_start_value;
  if (A.is_circle()) {
    result["canonical_angles"] = canonical_angles(r.config, A.center());
    std::vector<double> radii;
    for (int i = 0; i < r.config.size(); ++i) radii.push_back((r.config.point(i) - A.center()).norm());
    result["radii"] = radii;
  }
  // Sample points where the potential is (numerically) minimal.
  const auto profile = potential_profile(kernel, A, r.config, opts.resolution);
  double low = kSingular;
  for (const auto& s : profile) low = std::min(low, s.potential);
  Json ring = Json::array();
  if (std::isfinite(low))
    for (const auto& s : profile)
      if (s.potential <= low + 1e-6 * std::max(1.0, std::abs(low))) ring.push_back(to_json(s.y));
  result["witness_ring"] = ring;
  result["success"] = r.success;
  if (!a.profile_csv.empty()) {
    std::ofstream csv(a.profile_csv);
    if (!csv) throw std::invalid_argument("cannot write '" + a.profile_csv + "'");
    csv_preamble(csv, config);
    for (int i = 0; i < A.ambient_dim(); ++i) csv << 'y' << i << ',';
    csv << "potential\n";
    for (const auto& s : profile) {
      for (Eigen::Index i = 0; i < s.y.size(); ++i) csv << format_double(s.y[i]) << ',';
      csv << format_double(s.potential) << '\n';
    }
  }
  if (!r.success) result["message"] = r.message;

  Json doc = envelope(config);
  doc["result"] = result;
  Sink sink(a.out, out);
  sink.stream() << doc.dump(2) << '\n';
  if (!r.success) throw SolverFailure(r.message);
  return kOk;
}

struct CoverArgs {
  std::string set = "circle";
  std::string cloud;
  int n = 0;
  std::string mode = "unconstrained";
  int restarts = 4;
  int iterations = 2000;
  std::uint64_t seed = 0;
  int resolution = 0;
  int threads = 0;
  bool cross_check = false;
  std::string out;
};

int do_cover(const CoverArgs& a, std::ostream& out) {
  const Domain A = make_set(a.set, a.cloud);
  if (a.n < 1) throw std::invalid_argument("--n is required and must be >= 1");
  CoverOptions opts;
  opts.mode = parse_mode(a.mode);
  opts.restarts = a.restarts;
  opts.iterations = a.iterations;
  opts.seed = a.seed;
  opts.threads = a.threads;
  opts.cross_check = a.cross_check;
  opts.resolution = a.resolution > 0 ? a.resolution : default_resolution(A, a.n);

  Json config;
  config["command"] = "cover";
  config["set"] = a.cloud.empty() ? A.describe() : "cloud:" + a.cloud;
  config["n"] = a.n;
  config["mode"] = to_string(opts.mode);
  config["restarts"] = opts.restarts;
  config["iterations"] = opts.iterations;
  config["seed"] = opts.seed;
  config["resolution"] = opts.resolution;
  config["cross_check"] = opts.cross_check;

  const CoverReport r = minimize_covering(A, a.n, opts);
  Json result;
  result["eta"] = r.eta;
  result["configuration"] = to_json(r.config.points());
  if (opts.cross_check) result["cross_check_eta"] = r.cross_check_eta;
  Json doc = envelope(config);
  doc["result"] = result;
  Sink sink(a.out, out);
  sink.stream() << doc.dump(2) << '\n';
  return kOk;
}

struct ChebyshevArgs {
  std::string kernel = "riesz:1";
  std::string set_a = "circle";
  std::string set_b = "circle";
  int res = 400;
  int res_a = 0;
  int res_b = 0;
  int iterations = 20000;
  double tolerance = 0.0;
  int threads = 0;
  std::string out;
  std::string measure_csv;
};

int do_chebyshev(const ChebyshevArgs& a, std::ostream& out) {
  const KernelSpec kernel = KernelSpec::parse(a.kernel);
  const Domain A = parse_set(a.set_a), B = parse_set(a.set_b);
  ChebyshevOptions opts;
  opts.res_a = a.res_a > 0 ? a.res_a : a.res;
  opts.res_b = a.res_b > 0 ? a.res_b : a.res;
  opts.iterations = a.iterations;
  opts.tolerance = a.tolerance;
  opts.threads = a.threads;

  Json config;
  config["command"] = "chebyshev";
  config["kernel"] = kernel.describe();
  config["setA"] = A.describe();
  config["setB"] = B.describe();
  config["resA"] = opts.res_a;
  config["resB"] = opts.res_b;
  config["iterations"] = opts.iterations;
  config["tolerance"] = opts.tolerance;

  const ChebyshevResult r = chebyshev_constant(kernel, A, B, opts);
  Json result;
  result["value"] = r.value;
  result["duality_gap"] = r.duality_gap;
  result["tolerance"] = r.tolerance;
  result["converged"] = r.converged;
  result["iterations"] = r.iterations;
  result["support_size"] = r.measure.size();
  Json doc = envelope(config);
  doc["result"] = result;
  Sink sink(a.out, out);
  sink.stream() << doc.dump(2) << '\n';
  if (!a.measure_csv.empty()) {
    std::ofstream m(a.measure_csv);
    if (!m) throw std::invalid_argument("cannot write '" + a.measure_csv + "'");
    csv_preamble(m, config);
    for (Eigen::Index i = 0; i < r.measure.support.rows(); ++i) m << "x" << i << ",";
    m << "weight\n";
    for (Eigen::Index j = 0; j < r.measure.support.cols(); ++j) {
      for (Eigen::Index i = 0; i < r.measure.support.rows(); ++i) m << format_double(r.measure.support(i, j)) << ",";
      m << format_double(r.measure.weights[j]) << '\n';
    }
  }
  return kOk;
}

struct AsymptoticsArgs {
  std::string set = "circle";
  double s = 2.0;
  double d = 1.0;
  std::string ns = "16,32,64,128";
  std::string mode = "unconstrained";
  int restarts = 4;
  int iterations = 2000;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;
};

int do_asymptotics(const AsymptoticsArgs& a, std::ostream& out) {
  const Domain A = parse_set(a.set);
  const std::vector<int> ns = parse_int_list(a.ns);
  SolveOptions opts;
  opts.mode = parse_mode(a.mode);
  if (opts.mode == Mode::two_plate) throw std::invalid_argument("asymptotics: two-plate mode is not supported");
  opts.restarts = a.restarts;
  opts.iterations = a.iterations;
  opts.seed = a.seed;
  opts.threads = a.threads;

  Json config;
  config["command"] = "asymptotics";
  config["set"] = A.describe();
  config["s"] = a.s;
  config["d"] = a.d;
  config["ns"] = ns;
  config["mode"] = to_string(opts.mode);
  config["restarts"] = opts.restarts;
  config["iterations"] = opts.iterations;
  config["seed"] = opts.seed;

  const AsymptoticRun run = h_star_ratio_run(KernelSpec::riesz(a.s), A, a.d, ns, opts);
  Sink sink(a.out, out);
  std::ostream& os = sink.stream();
  csv_preamble(os, config);
  os << "N,value,tau,ratio\n";
  for (std::size_t i = 0; i < run.ns.size(); ++i)
    os << run.ns[i] << ',' << format_double(run.values[i]) << ',' << format_double(run.taus[i]) << ','
       << format_double(run.ratios[i]) << '\n';
  os << "# fit intercept=" << format_double(run.intercept) << " slope=" << format_double(run.slope) << '\n';
  if (const auto ref = sigma_reference(a.s, static_cast<int>(a.d)); ref && a.d == std::floor(a.d))
    os << "# sigma_reference=" << format_double(ref->value) << " status=" << to_string(ref->status) << '\n';
  if (!run.complete) throw SolverFailure(run.error);
  return kOk;
}

struct ThresholdArgs {
  double s = 1.0;
  std::string n_range = "3:100";
  std::string out;
};

int do_thresholds(const ThresholdArgs& a, std::ostream& out) {
  const auto [lo, hi] = parse_range(a.n_range);
  if (lo < 3) throw std::invalid_argument("thresholds: N must start at 3 or more");
  if (!(a.s > 0)) throw std::invalid_argument("thresholds: s must be > 0");
  Json config;
  config["command"] = "thresholds";
  config["s"] = a.s;
  config["n_range"] = a.n_range;
  Sink sink(a.out, out);
  std::ostream& os = sink.stream();
  csv_preamble(os, config);
  os << "N,r_bar,R_inv,R\n";
  for (int n = lo; n <= hi; ++n) {
    const CircleThresholds t = concentric_thresholds(n, a.s);
    os << n << ',' << format_double(t.r_bar) << ',' << format_double(1.0 / t.R) << ',' << format_double(t.R) << '\n';
  }
  return kOk;
}

struct ReplacementArgs {
  std::string cloud;
  std::string set;
  int res = 256;
  std::string x;
  std::string out;
};

int do_replacement(const ReplacementArgs& a, std::ostream& out) {
  if (a.x.empty()) throw std::invalid_argument("--x is required");
  if (a.cloud.empty() == a.set.empty()) throw std::invalid_argument("give exactly one of --cloud or --set");
  const PointSet samples = a.cloud.empty() ? parse_set(a.set).sample(a.res) : load_points_csv(a.cloud);
  const Point x = parse_point(a.x);
  Json config;
  config["command"] = "verify replacement";
  if (a.cloud.empty()) {
    config["set"] = parse_set(a.set).describe();
    config["res"] = a.res;
  } else {
    config["cloud"] = a.cloud;
  }
  config["x"] = to_json(x);
  const ReplacementResult r = replacement_points(samples, x);
  Json result;
  result["n"] = r.size();
  result["cap_bound"] = r.cap_bound;
  result["dominance_violations"] = r.dominance_violations;
  result["replacements"] = to_json(r.replacements);
  Json doc = envelope(config);
  doc["result"] = result;
  Sink sink(a.out, out);
  sink.stream() << doc.dump(2) << '\n';
  if (r.dominance_violations > 0 || r.size() > r.cap_bound)
    throw SolverFailure("replacement construction failed its own check");
  return kOk;
}

struct CensusArgs {
  std::string from;
  double eps = 0.2;
  std::string set;
  std::string out;
};

int do_census(const CensusArgs& a, std::ostream& out) {
  if (a.from.empty()) throw std::invalid_argument("--from is required");
  std::ifstream in(a.from);
  if (!in) throw std::invalid_argument("cannot open '" + a.from + "'");
  Json solved;
  try {
    solved = Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("--from: ") + e.what());
  }
  const std::string set = !a.set.empty() ? a.set : solved.at("config").at("set").get<std::string>();
  if (set.rfind("cloud:", 0) == 0) throw std::invalid_argument("census on a point cloud needs --set");
  const Domain A = parse_set(set);
  const Configuration config(points_from_json(solved.at("result").at("configuration")));
  Json cfg;
  cfg["command"] = "verify census";
  cfg["from"] = a.from;
  cfg["set"] = A.describe();
  cfg["eps"] = a.eps;
  Json result;
  result["n"] = config.size();
  result["census"] = non_concentration_census(config, A, a.eps);
  Json doc = envelope(cfg);
  doc["result"] = result;
  Sink sink(a.out, out);
  sink.stream() << doc.dump(2) << '\n';
  return kOk;
}

std::string config_value_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_double(v.get<double>());
  if (v.is_object()) return v.dump();  // shape descriptors
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : ",") + config_value_text(e);
    return s;
  }
  throw std::invalid_argument("config: unsupported value " + v.dump());
}

// Turns the --config file of the selected subcommand into extra command-line
// tokens. Unknown keys are rejected.
std::vector<std::string> config_tokens(CLI::App& sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!cfg.is_object()) throw std::invalid_argument("config: expected a JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = key == "config" ? nullptr : sub.get_option_no_throw(flag);
    if (!opt) throw std::invalid_argument("config: unknown field '" + key + "'");
    if (opt->get_type_size() == 0) {
      if (!value.is_boolean()) throw std::invalid_argument("config: field '" + key + "' must be true or false");
      tokens.push_back(flag + "=" + (value.get<bool>() ? "true" : "false"));
    } else {
      tokens.push_back(flag);
      tokens.push_back(config_value_text(value));
    }
  }
  return tokens;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-min polarization and Chebyshev constants for Riesz kernels", "polarmax"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  std::function<int()> action;
  std::list<std::string> config_paths;  // stable addresses for the bound options
  std::vector<std::pair<CLI::App*, std::string*>> config_slots;
  const auto with_config = [&](CLI::App* sub) {
    std::string& path = config_paths.emplace_back();
    sub->add_option("--config", path, "JSON file whose fields override the flags");
    config_slots.emplace_back(sub, &path);
  };

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Maximize the polarization of N points");
  s->add_option("--kernel", solve.kernel, "riesz:s | log | innerpower:k | geodesic:R:s");
  s->add_option("--set", solve.set, "circle[:r] | sphere:p[:r] | ball:p[:r] | cube:p[:side] | interval:a:b");
  s->add_option("--cloud", solve.cloud, "CSV file of points used as the set A");
  s->add_option("--setB", solve.set_b, "second plate B (two-plate mode)");
  s->add_option("--n", solve.n, "number of points");  // checked after --config is merged
  s->add_option("--mode", solve.mode, "unconstrained | constrained | two-plate");
  s->add_option("--restarts", solve.restarts);
  s->add_option("--iterations", solve.iterations, "ascent iterations per restart");
  s->add_option("--stages", solve.stages, "annealing stages");
  s->add_option("--beta0", solve.beta0);
  s->add_option("--beta-max", solve.beta_max);
  s->add_option("--tolerance", solve.tolerance);
  s->add_option("--seed", solve.seed);
  s->add_option("--resolution", solve.resolution, "sample size for the minimum over A (0 = automatic)");
  s->add_option("--threads", solve.threads, "worker threads (0 = POLARMAX_THREADS or all cores)");
  s->add_option("--out", solve.out, "output JSON file (default: stdout)");
  s->add_option("--profile-csv", solve.profile_csv, "write the potential over the A-sample here");
  with_config(s);
  s->callback([&] { action = [&] { return do_solve(solve, out); }; });

  CoverArgs cover;
  auto* c = app.add_subcommand("cover", "Minimize the covering radius of N points");
  c->add_option("--set", cover.set);
  c->add_option("--cloud", cover.cloud);
  c->add_option("--n", cover.n);  // checked after --config is merged
  c->add_option("--mode", cover.mode, "unconstrained | constrained");
  c->add_option("--restarts", cover.restarts);
  c->add_option("--iterations", cover.iterations);
  c->add_option("--seed", cover.seed);
  c->add_option("--resolution", cover.resolution);
  c->add_option("--threads", cover.threads);
  c->add_flag("--cross-check", cover.cross_check, "also run the s=64 polarization solver");
  c->add_option("--out", cover.out);
  with_config(c);
  c->callback([&] { action = [&] { return do_cover(cover, out); }; });

  ChebyshevArgs cheb;
  auto* t = app.add_subcommand("chebyshev", "Continuous two-plate Chebyshev constant");
  t->add_option("--kernel", cheb.kernel);
  t->add_option("--setA", cheb.set_a);
  t->add_option("--setB", cheb.set_b);
  t->add_option("--res", cheb.res, "resolution for both sets");
  t->add_option("--resA", cheb.res_a);
  t->add_option("--resB", cheb.res_b);
  t->add_option("--iterations", cheb.iterations);
  t->add_option("--tolerance", cheb.tolerance, "duality-gap target (0 = 1e-4 x payoff scale)");
  t->add_option("--threads", cheb.threads);
  t->add_option("--out", cheb.out);
  t->add_option("--measure-csv", cheb.measure_csv, "write the optimal measure here");
  with_config(t);
  t->callback([&] { action = [&] { return do_chebyshev(cheb, out); }; });

  AsymptoticsArgs asym;
  auto* y = app.add_subcommand("asymptotics", "Ratios P*/tau_{s,d}(N) over a list of N");
  y->add_option("--set", asym.set);
  y->add_option("--s", asym.s);
  y->add_option("--d", asym.d);
  y->add_option("--ns", asym.ns, "comma-separated increasing N values");
  y->add_option("--mode", asym.mode);
  y->add_option("--restarts", asym.restarts);
  y->add_option("--iterations", asym.iterations);
  y->add_option("--seed", asym.seed);
  y->add_option("--threads", asym.threads);
  y->add_option("--out", asym.out);
  with_config(y);
  y->callback([&] { action = [&] { return do_asymptotics(asym, out); }; });

  ThresholdArgs thr;
  auto* h = app.add_subcommand("thresholds", "Optimal circle radius and concentric band per N");
  h->add_option("--s", thr.s);
  h->add_option("--n-range", thr.n_range, "lo:hi");
  h->add_option("--out", thr.out);
  with_config(h);
  h->callback([&] { action = [&] { return do_thresholds(thr, out); }; });

  auto* v = app.add_subcommand("verify", "Check constructive procedures");
  v->require_subcommand(1);
  ReplacementArgs rep;
  auto* vr = v->add_subcommand("replacement", "Replace an outside point by dominating sample points");
  vr->add_option("--cloud", rep.cloud);
  vr->add_option("--set", rep.set);
  vr->add_option("--res", rep.res);
  vr->add_option("--x", rep.x, "comma-separated coordinates");  // checked after --config is merged
  vr->add_option("--out", rep.out);
  with_config(vr);
  vr->callback([&] { action = [&] { return do_replacement(rep, out); }; });
  CensusArgs cen;
  auto* vc = v->add_subcommand("census", "Count solver points farther than eps from A");
  vc->add_option("--from", cen.from, "JSON written by solve");  // checked after --config is merged
  vc->add_option("--eps", cen.eps);
  vc->add_option("--set", cen.set, "override the set recorded in the file");
  vc->add_option("--out", cen.out);
  with_config(vc);
  vc->callback([&] { action = [&] { return do_census(cen, out); }; });

  const auto parse = [&](std::vector<std::string> tokens) {
    std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes from the back
    app.parse(tokens);
  };

  try {
    parse(args);
    for (auto& [sub, path] : config_slots) {
      if (!sub->parsed() || path->empty()) continue;
      std::vector<std::string> again = args;
      const auto extra = config_tokens(*sub, *path);
      again.insert(again.end(), extra.begin(), extra.end());
      app.clear();
      action = nullptr;
      parse(again);
      break;
    }
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << tool_version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "polarmax: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "polarmax: " << e.what() << '\n';
    return kValidationError;
  }

  if (!action) {
    err << "polarmax: no subcommand given\n";
    return kValidationError;
  }
  try {
    return action();
  } catch (const SolverFailure& e) {
    err << "polarmax: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const std::invalid_argument& e) {
    err << "polarmax: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::domain_error& e) {
    err << "polarmax: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::out_of_range& e) {
    err << "polarmax: " << e.what() << '\n';
    return kValidationError;
  } catch (const Json::exception& e) {
    err << "polarmax: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "polarmax: solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace polarmax::cli
