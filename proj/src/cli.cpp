#include "reglab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "reglab/constants.hpp"
#include "reglab/errors.hpp"
#include "reglab/io.hpp"
#include "reglab/pde_residual.hpp"
#include "reglab/rearrange.hpp"
#include "reglab/regularity.hpp"

namespace reglab::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const std::vector<std::string> kCommands = {"verify", "lorentz", "morrey",
                                            "decay", "membership", "suite"};

struct Globals {
  std::string out = ".";
  bool out_given = false;
  double tol = 0.0;  // 0: command default
  std::uint64_t seed = 0;
  bool parallel = false;
  std::string name;  // report base name
};

double parse_number(const std::string& s) {
  if (s == "inf" || s == "+inf") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw ConfigError("bad number '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_number(item));
  return out;
}

// "lo:hi:count"
std::vector<double> parse_radii(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  if (parts.size() != 3) throw ConfigError("radii must be lo:hi:count");
  const double lo = parse_number(parts[0]), hi = parse_number(parts[1]);
  const double count = parse_number(parts[2]);
  if (!(lo > 0.0 && hi > lo) || count < 2 || count != std::floor(count)) {
    throw ConfigError("radii need 0 < lo < hi and an integer count >= 2");
  }
  return log_spaced(lo, hi, static_cast<std::size_t>(count));
}

std::string report_path(const Globals& g, const std::string& fallback, const std::string& ext) {
  const std::string base = g.name.empty() ? fallback : g.name;
  return (std::filesystem::path(g.out) / (base + ext)).string();
}

void write_json(const Globals& g, const std::string& fallback, const Json& j) {
  write_text(report_path(g, fallback, ".json"), j.dump(2) + "\n");
}

std::string format(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::vector<double> centre_arg(const std::string& s, int n) {
  if (s.empty()) return std::vector<double>(n, 0.0);
  std::vector<double> c = parse_list(s);
  if (static_cast<int>(c.size()) != n) throw ConfigError("centre needs n coordinates");
  return c;
}

// --- verify ---------------------------------------------------------------

struct VerifyArgs {
  std::string family;
  int n = 0;
  std::string radii = "1e-6:0.1353352832366127:100";
  bool weak = true;
  double weak_tol = 1e-6;
};

int cmd_verify(const VerifyArgs& a, const Globals& g, std::ostream& out) {
  if (a.family != "loglog4" && a.family != "sinlog2nd" && a.family != "sinlog4th") {
    throw ConfigError("verify needs family loglog4, sinlog2nd or sinlog4th");
  }
  const FieldSpec field = field_from_spec(a.family, a.n);
  const SystemSpec system = SystemSpec::for_family(field.family());
  const std::vector<double> radii = parse_radii(a.radii);
  if (radii.back() > field.domain().r_max * (1.0 + 1e-12)) {
    throw ConfigError("radii leave the domain |x| <= e^-2");
  }
  const double tol = g.tol > 0.0 ? g.tol : 1e-8;
  const ResidualReport rep = pointwise_residual(system, field, radii);
  const GrowthReport growth = growth_constant(system, field, radii);
  bool pass = rep.max_rel <= tol;

  Json weak = Json::array();
  if (a.weak) {
    const double R = field.domain().r_max;
    std::vector<double> off(field.n(), 0.0);
    off[0] = 0.08;
    const std::vector<Bump> bumps = {{{}, std::exp(-3.0)}, {{}, std::min(0.1, R)}, {off, 0.05}};
    for (const auto& b : bumps) {
      const WeakResidual ibp = weak_residual(field, b, system.order);
      const WeakResidual sys = weak_system_residual(system, field, b);
      pass = pass && ibp.relative <= a.weak_tol && sys.relative <= a.weak_tol;
      weak.push_back(Json{{"bump", {{"center", b.center.empty() ? Json::array() : Json(b.center)},
                                    {"radius", b.radius},
                                    {"power", b.power}}},
                          {"integration_by_parts", to_json(ibp)},
                          {"system", to_json(sys)}});
    }
  }
  const std::string base = "verify_" + a.family + "_n" + std::to_string(a.n);
  write_json(g, base,
             Json{{"command", "verify"},
                  {"field", to_json(field)},
                  {"system", to_string(system.kind)},
                  {"tol", tol},
                  {"weak_tol", a.weak_tol},
                  {"pass", pass},
                  {"residual", to_json(rep)},
                  {"growth", to_json(growth)},
                  {"weak", weak}});
  std::ostringstream csv;
  write_csv(csv, rep);
  write_text(report_path(g, base, ".csv"), csv.str());
  out << "verify " << a.family << " n=" << a.n << " max_rel=" << format(rep.max_rel)
      << " growth C=" << format(growth.C) << " (" << to_string(growth.verdict) << ") "
      << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? kOk : kFailure;
}

// --- lorentz --------------------------------------------------------------

struct LorentzArgs {
  std::string function;
  std::string field;
  std::string derivative = "grad";
  int n = 0;
  double p = 0.0;
  std::string q = "inf";
  double radius = 1.0;
  std::string center;
  std::string method = "empirical";
  std::size_t samples = 1 << 15;
};

int cmd_lorentz(const LorentzArgs& a, const Globals& g, std::ostream& out) {
  if (a.function.empty() == a.field.empty()) {
    throw ConfigError("lorentz needs exactly one of --function and --field");
  }
  if (a.n < 1) throw ConfigError("lorentz needs --n >= 1");
  const double q = parse_number(a.q);
  if (!(a.p > 1.0)) throw ConfigError("lorentz needs --p > 1");
  if (a.method != "empirical" && a.method != "exact") {
    throw ConfigError("method must be empirical or exact");
  }
  Json report{{"command", "lorentz"}, {"n", a.n}, {"p", number(a.p)}, {"q", number(q)},
              {"radius", number(a.radius)}};
  LorentzNormResult result;
  RearrangementCurve curve;
  bool have_curve = false;
  const std::vector<double> centre = centre_arg(a.center, a.n);
  if (!a.function.empty()) {
    const SpecString f = parse_spec(a.function);
    if (f.name != "powerlaw") throw ConfigError("unknown function '" + f.name + "'");
    const double s = f.get("s", 0.0), c = f.get("c", 1.0);
    const LorentzNormResult exact = power_law_lorentz_norm(a.n, s, a.p, q, a.radius, c);
    report["function"] = {{"name", "powerlaw"}, {"s", s}, {"c", c}};
    report["exact"] = to_json(exact);
    if (a.method == "exact" || !exact.finite()) {
      result = exact;
    } else {
      const RadialScalar h = [s, c](double r) { return c * std::pow(r, -s); };
      curve = decreasing_rearrangement(sample_radial(h, a.n, centre, 0.0, a.radius));
      have_curve = true;
      result = lorentz_norm(curve, a.p, q);
      report["relative_error"] = number(std::fabs(result.value / exact.value - 1.0));
    }
  } else {
    const FieldSpec field = field_from_spec(a.field, a.n);
    if (a.derivative != "grad" && a.derivative != "hess") {
      throw ConfigError("derivative must be grad or hess");
    }
    const bool hess = a.derivative == "hess";
    report["field"] = to_json(field);
    report["derivative"] = a.derivative;
    double d = 0.0;
    for (double v : centre) d += v * v;
    if (field.is_radial() && d == 0.0) {
      const RadialScalar h = hess ? hessian_magnitude(field.with_domain({0.0, field.domain().r_max}))
                                  : gradient_magnitude(field.with_domain({0.0, field.domain().r_max}));
      curve = decreasing_rearrangement(sample_radial(h, a.n, centre, 0.0, a.radius));
    } else {
      const PointScalar f = hess ? hessian_magnitude_at(field) : gradient_magnitude_at(field);
      curve = decreasing_rearrangement(sample_grid(f, a.n, centre, a.radius, a.samples, g.seed));
    }
    have_curve = true;
    result = lorentz_norm(curve, a.p, q);
  }
  report["result"] = to_json(result);
  write_json(g, "lorentz", report);
  if (have_curve) {
    std::ostringstream csv;
    curve.write_csv(csv);
    write_text(report_path(g, "lorentz", ".csv"), csv.str());
  }
  out << "lorentz p=" << format(a.p) << " q=" << format(q) << " value=" << format(result.value)
      << " (" << to_string(result.verdict) << ")\n";
  return kOk;
}

// --- morrey / decay -------------------------------------------------------

struct ScanArgs {
  std::string family;
  int n = 0;
  double p = 0.0;
  std::string q = "inf";
  std::string center;
  double r0 = 0.1;
  double theta = 0.5;
  int count = 8;
  std::string norm = "lorentz";
  bool paired = false;
  std::size_t samples = 1 << 14;
  // corpus mode of decay
  std::string corpus;
  int degree = 4;
  std::string thetas = "0.05,0.1,0.2";
  std::size_t centers = 5;
};

int cmd_morrey(const ScanArgs& a, const Globals& g, std::ostream& out) {
  const FieldSpec field = field_from_spec(a.family, a.n);
  DecayScanConfig cfg;
  cfg.center = centre_arg(a.center, a.n);
  cfg.r0 = a.r0;
  cfg.theta = a.theta;
  cfg.count = a.count;
  cfg.norm = DecayScanConfig::Norm::Morrey;
  cfg.p = a.p;
  const double p = a.p > 0.0 ? a.p : a.n;
  if (!(p >= 1.0)) throw ConfigError("Morrey index must be at least 1");
  const ScanReport rep = lorentz_ball_decay(field, cfg);
  const MorreyResult top = morrey_subnorm(field, cfg.center, a.r0, p, g.tol > 0.0 ? g.tol : 1e-10);
  Json j{{"command", "morrey"}, {"field", to_json(field)}, {"p", number(p)}, {"scan", to_json(rep)}};
  j["decade_increments"] = Json::array();
  for (double v : top.decade_increments) j["decade_increments"].push_back(number(v));
  j["verdict_at_r0"] = to_string(top.verdict);
  write_json(g, "morrey", j);
  std::ostringstream csv;
  write_csv(csv, rep);
  write_text(report_path(g, "morrey", ".csv"), csv.str());
  out << "morrey " << a.family << " p=" << format(p);
  if (rep.fit) out << " slope=" << format(rep.fit->slope);
  out << " (" << to_string(top.verdict) << " at r0)\n";
  return kOk;
}

int cmd_decay(const ScanArgs& a, const Globals& g, std::ostream& out) {
  if (!a.corpus.empty()) {
    if (a.corpus != "harmonic" && a.corpus != "biharmonic") {
      throw ConfigError("corpus must be harmonic or biharmonic");
    }
    const bool bih = a.corpus == "biharmonic";
    const auto corpus =
        comparison_corpus(bih ? CorpusKind::Biharmonic : CorpusKind::Harmonic, a.n, a.degree);
    const std::vector<double> thetas = parse_list(a.thetas);
    const auto centers = sample_centers(a.n, a.centers, 0.2, g.seed);
    const DecayConstantReport rep =
        harmonic_decay_constant(corpus, thetas, centers, bih, a.samples, g.seed);
    write_json(g, "decay", Json{{"command", "decay"},
                                {"corpus", a.corpus},
                                {"n", a.n},
                                {"degree", a.degree},
                                {"fields", corpus.size()},
                                {"samples", a.samples},
                                {"report", to_json(rep)}});
    out << "decay " << a.corpus << " n=" << a.n << " max_ratio=" << format(rep.max_ratio)
        << " refined=" << format(rep.refined_max_ratio) << (rep.stable ? " stable" : " unstable")
        << "\n";
    return kOk;
  }
  const FieldSpec field = field_from_spec(a.family, a.n);
  DecayScanConfig cfg;
  cfg.center = centre_arg(a.center, a.n);
  cfg.r0 = a.r0;
  cfg.theta = a.theta;
  cfg.count = a.count;
  cfg.norm = decay_norm_from_string(a.norm);
  cfg.p = a.p;
  cfg.q = parse_number(a.q);
  cfg.paired = a.paired;
  cfg.samples = a.samples;
  cfg.seed = g.seed;
  const ScanReport rep = lorentz_ball_decay(field, cfg);
  write_json(g, "decay", Json{{"command", "decay"}, {"field", to_json(field)}, {"scan", to_json(rep)}});
  std::ostringstream csv;
  write_csv(csv, rep);
  write_text(report_path(g, "decay", ".csv"), csv.str());
  out << "decay " << a.family << " " << rep.quantity;
  if (rep.fit) {
    out << " slope=" << format(rep.fit->slope) << (rep.fit->clean ? "" : " NoCleanExponent");
  }
  out << " alpha0=" << format(rep.scalars.at("alpha0")) << "\n";
  return kOk;
}

// --- membership -----------------------------------------------------------

struct MembershipArgs {
  std::string family;
  int n = 0;
  int k = 1;
  std::string p_grid;
};

int cmd_membership(const MembershipArgs& a, const Globals& g, std::ostream& out) {
  const FieldSpec field = field_from_spec(a.family, a.n);
  const std::vector<double> grid = parse_list(a.p_grid);
  if (grid.empty()) throw ConfigError("membership needs --p-grid");
  Json rows = Json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "p,verdict\n";
  out << "membership " << a.family << " n=" << a.n << " k=" << a.k << ":";
  for (double p : grid) {
    const MembershipVerdict v = sobolev_membership(field, a.k, p, g.tol > 0.0 ? g.tol : 1e-12);
    rows.push_back(to_json(v));
    csv << p << ',' << to_string(v.verdict) << '\n';
    out << " p=" << format(p) << " " << to_string(v.verdict);
  }
  out << "\n";
  write_json(g, "membership",
             Json{{"command", "membership"}, {"field", to_json(field)}, {"k", a.k}, {"rows", rows}});
  write_text(report_path(g, "membership", ".csv"), csv.str());
  return kOk;
}

// --- suite ----------------------------------------------------------------

std::string param_string(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += param_string(v[i]);
    }
    return s;
  }
  return v.dump();
}

struct Job {
  std::string command;
  std::vector<std::string> args;
};

int cmd_suite(const std::string& config_path, const Globals& g, std::ostream& out) {
  std::ifstream in(config_path);
  if (!in) throw ConfigError("cannot read " + config_path);
  Json config;
  try {
    config = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed suite config: ") + e.what());
  }
  if (!config.is_object()) throw ConfigError("suite config must be a JSON object");
  std::string dir = g.out;
  if (!g.out_given && config.contains("output_dir")) dir = config["output_dir"].get<std::string>();
  std::uint64_t seed = g.seed;
  if (config.contains("seed")) seed = config["seed"].get<std::uint64_t>();
  double tol = g.tol;
  if (config.contains("tolerances") && config["tolerances"].contains("tol")) {
    tol = number_from_json(config["tolerances"]["tol"]);
  }
  const Json jobs_json = config.value("jobs", Json::array());
  if (!jobs_json.is_array()) throw ConfigError("jobs must be an array");

  std::vector<Job> jobs;
  for (std::size_t i = 0; i < jobs_json.size(); ++i) {
    const Json& j = jobs_json[i];
    if (!j.is_object() || !j.contains("command") || !j["command"].is_string()) {
      throw ConfigError("job " + std::to_string(i) + " lacks a command");
    }
    const std::string cmd = j["command"].get<std::string>();
    if (cmd == "suite" || std::find(kCommands.begin(), kCommands.end(), cmd) == kCommands.end()) {
      throw ConfigError("job " + std::to_string(i) + ": unknown command '" + cmd + "'");
    }
    Job job{cmd, {cmd}};
    const Json params = j.value("parameters", Json::object());
    if (!params.is_object()) throw ConfigError("job parameters must be an object");
    for (const auto& [key, value] : params.items()) {
      if (value.is_boolean()) {
        if (value.get<bool>()) job.args.push_back("--" + key);
        continue;
      }
      job.args.push_back("--" + key);
      job.args.push_back(param_string(value));
    }
    const std::string name = "job_" + std::to_string(i) + "_" + cmd;
    job.args.insert(job.args.end(), {"--out", dir, "--name", name, "--seed", std::to_string(seed)});
    if (tol > 0.0 && !params.contains("tol")) {
      job.args.push_back("--tol");
      job.args.push_back(Json(tol).dump());
    }
    jobs.push_back(std::move(job));
  }

  struct Outcome {
    int code = 0;
    std::string log;
    double seconds = 0.0;
  };
  const auto run_job = [](const Job& job) {
    Outcome o;
    std::ostringstream log;
    const auto t0 = std::chrono::steady_clock::now();
    o.code = run(job.args, log, log);
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.log = log.str();
    return o;
  };
  std::vector<Outcome> outcomes(jobs.size());
  if (g.parallel) {
    std::vector<std::future<Outcome>> futures;
    for (const auto& job : jobs) futures.push_back(std::async(std::launch::async, run_job, job));
    for (std::size_t i = 0; i < jobs.size(); ++i) outcomes[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < jobs.size(); ++i) outcomes[i] = run_job(jobs[i]);
  }

  Json listing = Json::array();
  Json timing = Json::array();
  std::size_t failed = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const int code = outcomes[i].code;
    const std::string status = code == kOk ? "ok" : code == kFailure ? "failed" : "config_error";
    failed += code != kOk;
    const std::string name = "job_" + std::to_string(i) + "_" + jobs[i].command;
    listing.push_back(Json{{"index", i},
                           {"command", jobs[i].command},
                           {"status", status},
                           {"exit_code", code},
                           {"report", name + ".json"},
                           {"output", outcomes[i].log}});
    timing.push_back(Json{{"index", i}, {"wall_time_s", outcomes[i].seconds}});
    out << outcomes[i].log;
  }
  write_text((std::filesystem::path(dir) / "summary.json").string(),
             Json{{"jobs", listing},
                  {"count", jobs.size()},
                  {"failed", failed},
                  {"seed", seed},
                  {"timing", "timing.json"}}
                     .dump(2) +
                 "\n");
  write_text((std::filesystem::path(dir) / "timing.json").string(),
             Json{{"jobs", timing}}.dump(2) + "\n");
  out << "suite: " << jobs.size() << " jobs, " << failed << " failed\n";
  return failed == 0 ? kOk : kFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical regularity laboratory for critical elliptic systems", "reglab"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--out", g.out, "Report directory");
  app.add_option("--tol", g.tol, "Tolerance override");
  app.add_option("--seed", g.seed, "Seed for sampled pipelines");
  app.add_flag("--parallel", g.parallel, "Run suite jobs concurrently");
  app.add_option("--name", g.name, "Report base name")->group("");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Pointwise and weak residuals of a catalog field");
  verify->add_option("--family", va.family, "loglog4 | sinlog2nd | sinlog4th")->required();
  verify->add_option("--n", va.n, "Dimension")->required();
  verify->add_option("--radii", va.radii, "lo:hi:count, log-spaced");
  verify->add_option("--weak-tol", va.weak_tol, "Relative tolerance of the weak forms");
  verify->add_flag("!--no-weak", va.weak, "Skip the weak-form checks");

  LorentzArgs la;
  auto* lorentz = app.add_subcommand("lorentz", "Lorentz norm of a function on a ball");
  lorentz->add_option("--function", la.function, "powerlaw:s=S[,c=C] for c|x|^-s");
  lorentz->add_option("--field", la.field, "Catalog field whose derivative is measured");
  lorentz->add_option("--derivative", la.derivative, "grad | hess");
  lorentz->add_option("--n", la.n, "Dimension")->required();
  lorentz->add_option("--p", la.p, "Lorentz index p")->required();
  lorentz->add_option("--q", la.q, "Lorentz index q (inf for weak-L^p)");
  lorentz->add_option("--radius", la.radius, "Ball radius");
  lorentz->add_option("--center", la.center, "Ball centre, comma separated");
  lorentz->add_option("--method", la.method, "empirical | exact");
  lorentz->add_option("--samples", la.samples, "Sample points off the origin");

  ScanArgs ma;
  auto* morrey = app.add_subcommand("morrey", "Morrey subnorm scan on shrinking balls");
  morrey->add_option("--family", ma.family, "Field")->required();
  morrey->add_option("--n", ma.n, "Dimension")->required();
  morrey->add_option("--p", ma.p, "Index (default n)");
  morrey->add_option("--center", ma.center, "Centre, comma separated");
  morrey->add_option("--r0", ma.r0, "Largest radius");
  morrey->add_option("--theta", ma.theta, "Radius ratio");
  morrey->add_option("--count", ma.count, "Number of radii");

  ScanArgs da;
  auto* decay = app.add_subcommand("decay", "Ball-decay scan or (bi)harmonic decay constant");
  decay->add_option("--family", da.family, "Field");
  decay->add_option("--n", da.n, "Dimension")->required();
  decay->add_option("--norm", da.norm, "lorentz | morrey | oscillation");
  decay->add_option("--p", da.p, "Index (default n)");
  decay->add_option("--q", da.q, "Second Lorentz index");
  decay->add_option("--center", da.center, "Centre, comma separated");
  decay->add_option("--r0", da.r0, "Largest radius");
  decay->add_option("--theta", da.theta, "Radius ratio");
  decay->add_option("--count", da.count, "Number of radii");
  decay->add_flag("--paired", da.paired, "Add the Hessian L^{n/2,inf} norm");
  decay->add_option("--samples", da.samples, "Sample points per ball");
  decay->add_option("--corpus", da.corpus, "harmonic | biharmonic decay constant");
  decay->add_option("--degree", da.degree, "Corpus degree");
  decay->add_option("--thetas", da.thetas, "Corpus ball ratios");
  decay->add_option("--centers", da.centers, "Number of corpus centres");

  MembershipArgs mb;
  auto* membership = app.add_subcommand("membership", "Sobolev membership table");
  membership->add_option("--family", mb.family, "Field")->required();
  membership->add_option("--n", mb.n, "Dimension")->required();
  membership->add_option("--k", mb.k, "Sobolev order 1 or 2");
  membership->add_option("--p-grid", mb.p_grid, "Indices, comma separated")->required();

  std::string config_path;
  auto* suite = app.add_subcommand("suite", "Run a JSON job list");
  suite->add_option("--config", config_path, "Suite configuration")->required();

  for (auto* sub : {verify, lorentz, morrey, decay, membership, suite}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }
  g.out_given = app.get_option("--out")->count() > 0;

  try {
    if (*verify) return cmd_verify(va, g, out);
    if (*lorentz) return cmd_lorentz(la, g, out);
    if (*morrey) return cmd_morrey(ma, g, out);
    if (*decay) {
      if (da.corpus.empty() && da.family.empty()) throw ConfigError("decay needs --family or --corpus");
      return cmd_decay(da, g, out);
    }
    if (*membership) return cmd_membership(mb, g, out);
    if (*suite) return cmd_suite(config_path, g, out);
  } catch (const Error& e) {
    const bool config = dynamic_cast<const ConfigError*>(&e) ||
                        dynamic_cast<const FamilyMismatch*>(&e) ||
                        dynamic_cast<const DomainError*>(&e) ||
                        dynamic_cast<const UnsupportedDimension*>(&e) ||
                        dynamic_cast<const IndexError*>(&e) || dynamic_cast<const SupportError*>(&e);
    err << (config ? "configuration error: " : "error: ") << e.what() << "\n";
    return config ? kConfigError : kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kConfigError;
}

}  // namespace reglab::cli
