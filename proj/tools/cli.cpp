#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "parking/continuum.hpp"
#include "parking/densities.hpp"
#include "parking/errors.hpp"
#include "parking/gap_recursion.hpp"
#include "parking/simulator.hpp"

namespace parking::cli {

namespace {

using json = nlohmann::ordered_json;

// Tolerance used whenever a command needs m as a reference value.
constexpr double reference_m_tol = 1e-10;

struct run_context {
  std::ostream& out;
  std::ostream& err;
  bool record_time = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

struct manifest {
  std::string command;
  json parameters = json::object();
  std::optional<double> eps_used;
  json certificates = json::array();
  json extra = json::object();
};

json report_json(const truncation_report& r) {
  return json{{"n_stop", r.n_stop}, {"p", r.p}, {"bound", r.bound}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open " + path.string() + " for writing");
  file << text;
  if (!file) throw std::runtime_error("failed writing " + path.string());
}

void emit(run_context& ctx, const std::string& out_path, const csv_table& table,
          const manifest& m) {
  if (out_path.empty()) {
    ctx.out << table.text();
    return;
  }
  const std::filesystem::path path(out_path);
  write_file(path, table.text());

  json doc;
  doc["schema"] = "parking.manifest/1";
  doc["command"] = m.command;
  doc["parameters"] = m.parameters;
  doc["tool_version"] = tool_version;
  if (ctx.record_time) {
    doc["wall_time"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - ctx.start).count();
  } else {
    doc["wall_time"] = nullptr;
  }
  doc["eps_used"] = m.eps_used ? json(*m.eps_used) : json(nullptr);
  doc["dataset"] = path.filename().string();
  doc["rows"] = table.rows();
  for (const auto& [key, value] : m.extra.items()) doc[key] = value;
  doc["certificates"] = m.certificates;
  write_file(path.string() + ".manifest.json", doc.dump(2) + "\n");
}

std::vector<std::int64_t> parse_k_set(const std::string& spec) {
  static const std::regex range(R"(^\s*2\^(\d+)\s*\.\.\s*2\^(\d+)\s*$)");
  static const std::regex power(R"(^\s*2\^(\d+)\s*$)");
  static const std::regex plain(R"(^\s*(\d+)\s*$)");
  auto exponent = [&](const std::string& digits) {
    const int e = std::stoi(digits);
    if (e > 40) throw usage_error("k-set exponent too large: " + digits);
    return e;
  };

  std::vector<std::int64_t> ks;
  std::smatch match;
  if (std::regex_match(spec, match, range)) {
    const int lo = exponent(match[1].str());
    const int hi = exponent(match[2].str());
    if (lo > hi) throw usage_error("k-set range is empty: " + spec);
    for (int e = lo; e <= hi; ++e) ks.push_back(std::int64_t{1} << e);
    return ks;
  }
  std::size_t begin = 0;
  while (begin <= spec.size()) {
    const auto end = std::min(spec.find(',', begin), spec.size());
    const std::string item = spec.substr(begin, end - begin);
    if (std::regex_match(item, match, power)) {
      ks.push_back(std::int64_t{1} << exponent(match[1].str()));
    } else if (std::regex_match(item, match, plain) && match[1].str().size() <= 15) {
      ks.push_back(std::stoll(match[1].str()));
    } else {
      throw usage_error("invalid k-set entry '" + item + "' (use 2^a..2^b or a comma list)");
    }
    begin = end + 1;
  }
  if (ks.empty()) throw usage_error("k-set is empty");
  return ks;
}

double parse_step(const std::string& text) {
  static const std::regex fraction(R"(^\s*(\d+)\s*/\s*(\d+)\s*$)");
  std::smatch match;
  if (std::regex_match(text, match, fraction)) {
    const double num = std::stod(match[1].str());
    const double den = std::stod(match[2].str());
    if (den == 0.0) throw usage_error("step has zero denominator");
    return num / den;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw usage_error("invalid step '" + text + "'");
  }
  if (used != text.size()) throw usage_error("invalid step '" + text + "'");
  return value;
}

double reference_m() {
  quadrature_config cfg;
  cfg.abs_tol = reference_m_tol;
  cfg.rel_tol = reference_m_tol;
  return renyi_constant(cfg).m;
}

// --- density ---------------------------------------------------------------

struct density_opts {
  std::int64_t k = 0;
  std::int64_t r = 0;
  bool all = false;
  double eps = 1e-13;
  std::int64_t table_limit = default_table_limit;
  std::string out;
};

int cmd_density(run_context& ctx, const density_opts& o, bool has_r) {
  if (has_r == o.all) throw usage_error("density: give exactly one of --r or --all");
  csv_table table("parking.density/1", {"k", "r", "t", "D", "kD", "cumulative"});
  manifest m{"density"};
  m.parameters["k"] = o.k;
  if (o.all) {
    m.parameters["all"] = true;
  } else {
    m.parameters["r"] = o.r;
  }
  m.parameters["eps"] = o.eps;
  m.parameters["table_limit"] = o.table_limit;
  m.eps_used = o.eps;

  const double kd = static_cast<double>(o.k);
  if (o.all) {
    const auto tab = make_density_table(o.k, o.eps, o.table_limit);
    for (std::size_t i = 0; i < tab.d.size(); ++i) {
      const auto r = o.k + static_cast<std::int64_t>(i);
      table.add_row({format_number(o.k), format_number(r),
                     format_number(static_cast<double>(r - o.k) / kd), format_number(tab.d[i]),
                     format_number(tab.scaled[i]), format_number(tab.cumulative[i])});
      auto cert = report_json(tab.reports[i]);
      cert["r"] = r;
      m.certificates.push_back(std::move(cert));
    }
    m.extra["filling"] = tab.filling;
  } else {
    const auto res = density_certified(gap_params::checked(o.k, o.r), o.eps);
    table.add_row({format_number(o.k), format_number(o.r),
                   format_number(static_cast<double>(o.r - o.k) / kd), format_number(res.value),
                   format_number(kd * res.value), ""});
    auto cert = report_json(res.report);
    cert["r"] = o.r;
    m.certificates.push_back(std::move(cert));
  }
  emit(ctx, o.out, table, m);
  return exit_ok;
}

// --- sweep -----------------------------------------------------------------

struct sweep_opts {
  std::string k_set;
  double eps = 1e-13;
  std::string out;
};

int cmd_sweep(run_context& ctx, const sweep_opts& o) {
  const auto ks = parse_k_set(o.k_set);
  const double m_ref = reference_m();
  const auto points = sweep(ks, o.eps, m_ref);

  csv_table table("parking.sweep/1", {"k", "kDkk", "kDk2k", "Dk", "Dk_minus_m", "error"});
  manifest m{"sweep"};
  m.parameters["k_set"] = o.k_set;
  m.parameters["eps"] = o.eps;
  m.eps_used = o.eps;
  m.extra["m"] = m_ref;

  bool any_ok = false;
  for (const auto& pt : points) {
    if (pt.ok()) {
      any_ok = true;
      table.add_row({format_number(pt.k), format_number(pt.kDkk), format_number(pt.kDk2k),
                     format_number(pt.filling), format_number(pt.gap_to_m), ""});
      auto cert = report_json(pt.filling_report);
      cert["k"] = pt.k;
      m.certificates.push_back(std::move(cert));
    } else {
      ctx.err << "sweep: k=" << pt.k << " failed: " << pt.error << "\n";
      table.add_row({format_number(pt.k), "", "", "", "", pt.error});
    }
  }
  emit(ctx, o.out, table, m);
  return any_ok ? exit_ok : exit_convergence;
}

// --- profile ---------------------------------------------------------------

struct profile_opts {
  std::int64_t k = 0;
  std::int64_t points = 256;
  double eps = 1e-13;
  std::int64_t table_limit = default_table_limit;
  std::string out;
};

int cmd_profile(run_context& ctx, const profile_opts& o) {
  if (o.points < 2) throw usage_error("profile: --points must be >= 2");
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(o.points));
  for (std::int64_t i = 0; i < o.points; ++i) {
    grid.push_back(static_cast<double>(i) / static_cast<double>(o.points - 1));
  }
  const auto tab = make_density_table(o.k, o.eps, o.table_limit);
  const auto samples = profile(tab, grid);

  csv_table table("parking.profile/1", {"t", "D", "F", "Fprime"});
  for (const auto& s : samples) {
    table.add_row(
        {format_number(s.t), format_number(s.d), format_number(s.F), format_number(s.Fprime)});
  }
  manifest m{"profile"};
  m.parameters["k"] = o.k;
  m.parameters["points"] = o.points;
  m.parameters["eps"] = o.eps;
  m.parameters["table_limit"] = o.table_limit;
  m.eps_used = o.eps;
  double worst_bound = 0.0;
  std::int64_t longest = 0;
  for (const auto& r : tab.reports) {
    worst_bound = std::max(worst_bound, r.bound);
    longest = std::max(longest, r.n_stop);
  }
  m.certificates.push_back(
      json{{"trajectories", tab.reports.size()}, {"max_bound", worst_bound}, {"max_n_stop", longest}});
  emit(ctx, o.out, table, m);
  return exit_ok;
}

// --- renyi-m ---------------------------------------------------------------

int cmd_renyi_m(run_context& ctx, double tol) {
  quadrature_config cfg;
  cfg.abs_tol = tol;
  cfg.rel_tol = tol;
  const auto res = renyi_constant(cfg);
  ctx.out << "m = " << format_number(res.m) << "\n"
          << "error = " << format_number(res.error) << "\n";
  return exit_ok;
}

// --- coverage --------------------------------------------------------------

struct coverage_opts {
  double x_max = 20.0;
  std::string h = "1/256";
  std::string out;
};

int cmd_coverage(run_context& ctx, const coverage_opts& o) {
  const double h = parse_step(o.h);
  const auto grid = solve_coverage(o.x_max, h);
  const double m_ref = reference_m();

  csv_table table("parking.coverage/1",
                  {"x", "M", "M_minus_asymptote", "bracket_lo", "bracket_hi"});
  const double last = grid.x(grid.size() - 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.x(i);
    std::string lo;
    std::string hi;
    if (x == std::floor(x) && x + 1.0 <= last) {
      const auto b = dr_bracket(grid, x);
      lo = format_number(b.lo);
      hi = format_number(b.hi);
    }
    table.add_row({format_number(x), format_number(grid.values[i]),
                   format_number(grid.values[i] - (m_ref * x + m_ref - 1.0)), lo, hi});
  }
  manifest m{"coverage"};
  m.parameters["xmax"] = o.x_max;
  m.parameters["h"] = o.h;
  m.extra["m"] = m_ref;
  if (o.x_max >= 10.0) m.extra["asymptote_deviation"] = asymptote_check(grid, m_ref);
  emit(ctx, o.out, table, m);
  return exit_ok;
}

// --- simulate --------------------------------------------------------------

struct simulate_opts {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t trials = 100000;
  std::uint64_t seed = 42;
  std::string out;
};

int cmd_simulate(run_context& ctx, const simulate_opts& o) {
  const auto est = estimate_gap_expectation(o.n, o.k, o.trials, o.seed);
  csv_table table("parking.simulate/1", {"r", "mean", "stderr", "exact", "z"});
  for (std::size_t i = 0; i < est.mean.size(); ++i) {
    const auto r = o.k + static_cast<std::int64_t>(i);
    const double exact = exact_gap_expectation(o.n, {o.k, r});
    const double diff = est.mean[i] - exact;
    double z = 0.0;
    if (est.std_error[i] > 0.0) {
      z = diff / est.std_error[i];
    } else if (std::abs(diff) > 1e-12 * std::max(1.0, std::abs(exact))) {
      z = std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    table.add_row({format_number(r), format_number(est.mean[i]), format_number(est.std_error[i]),
                   format_number(exact), format_number(z)});
  }
  manifest m{"simulate"};
  m.parameters["n"] = o.n;
  m.parameters["k"] = o.k;
  m.parameters["trials"] = o.trials;
  m.parameters["seed"] = o.seed;
  emit(ctx, o.out, table, m);
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact gap densities for the discrete symmetric parking process"};
  app.set_version_flag("--version", tool_version);
  app.require_subcommand(1);
  bool record_time = false;
  app.add_flag("--record-time", record_time, "Store wall time in manifests (breaks byte-identity)");

  density_opts dens;
  auto* density_cmd = app.add_subcommand("density", "Limiting gap densities D(k, r)");
  density_cmd->add_option("--k", dens.k, "Exclusion half-width k >= 1")->required();
  auto* r_opt = density_cmd->add_option("--r", dens.r, "Gap size in [k, 2k]");
  density_cmd->add_flag("--all", dens.all, "Every r = k..2k");
  density_cmd->add_option("--eps", dens.eps, "Absolute tolerance")->capture_default_str();
  density_cmd->add_option("--table-limit", dens.table_limit, "Largest k for --all")
      ->capture_default_str();
  density_cmd->add_option("--out", dens.out, "CSV output path (stdout if omitted)");

  sweep_opts sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "Endpoint densities and D(k) over many k");
  sweep_cmd->add_option("--k-set", sw.k_set, "2^a..2^b or comma list")->required();
  sweep_cmd->add_option("--eps", sw.eps, "Absolute tolerance")->capture_default_str();
  sweep_cmd->add_option("--out", sw.out, "CSV output path (stdout if omitted)");

  profile_opts prof;
  auto* profile_cmd = app.add_subcommand("profile", "Distribution samples F(t), F'(t)");
  profile_cmd->add_option("--k", prof.k, "Exclusion half-width k >= 1")->required();
  profile_cmd->add_option("--points", prof.points, "Grid points on [0, 1]")->capture_default_str();
  profile_cmd->add_option("--eps", prof.eps, "Absolute tolerance")->capture_default_str();
  profile_cmd->add_option("--table-limit", prof.table_limit, "Largest k allowed")
      ->capture_default_str();
  profile_cmd->add_option("--out", prof.out, "CSV output path (stdout if omitted)");

  double tol = 1e-10;
  auto* renyi_cmd = app.add_subcommand("renyi-m", "Renyi's parking constant by quadrature");
  renyi_cmd->add_option("--tol", tol, "Absolute tolerance")->capture_default_str();

  coverage_opts cov;
  auto* coverage_cmd = app.add_subcommand("coverage", "Continuous expected coverage M(x)");
  coverage_cmd->set_help_flag("--help", "Print this help message and exit");
  coverage_cmd->add_option("--xmax", cov.x_max, "Grid end")->capture_default_str();
  coverage_cmd->add_option("--h", cov.h, "Grid step, e.g. 1/256")->capture_default_str();
  coverage_cmd->add_option("--out", cov.out, "CSV output path (stdout if omitted)");

  simulate_opts sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo gap counts vs exact values");
  simulate_cmd->add_option("--n", sim.n, "Lot parameter (n+k-1 slots)")->required();
  simulate_cmd->add_option("--k", sim.k, "Exclusion half-width k >= 1")->required();
  simulate_cmd->add_option("--trials", sim.trials, "Realizations")->capture_default_str();
  simulate_cmd->add_option("--seed", sim.seed, "Base seed")->capture_default_str();
  simulate_cmd->add_option("--out", sim.out, "CSV output path (stdout if omitted)");

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("parking");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_usage;
  }

  run_context ctx{out, err, record_time};
  try {
    if (density_cmd->parsed()) return cmd_density(ctx, dens, r_opt->count() > 0);
    if (sweep_cmd->parsed()) return cmd_sweep(ctx, sw);
    if (profile_cmd->parsed()) return cmd_profile(ctx, prof);
    if (renyi_cmd->parsed()) return cmd_renyi_m(ctx, tol);
    if (coverage_cmd->parsed()) return cmd_coverage(ctx, cov);
    if (simulate_cmd->parsed()) return cmd_simulate(ctx, sim);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const convergence_error& e) {
    err << "convergence failure: " << e.what() << "\n";
    return exit_convergence;
  } catch (const resource_error& e) {
    err << "resource limit: " << e.what() << "\n";
    return exit_resource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failure;
  }
  return exit_usage;
}

}  // namespace parking::cli
