// eigensense: moments, ratio densities, thresholds and Monte Carlo checks for
// the max/min eigenvalue ratio of a noise-only sample covariance matrix.
//
// Exit codes: 0 ok, 1 usage, 2 numerical failure, 3 unreachable request.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigensense/compare.hpp"
#include "eigensense/exact_moments.hpp"
#include "eigensense/fast_moments.hpp"
#include "eigensense/monte_carlo.hpp"
#include "eigensense/order_statistic_ratio.hpp"
#include "eigensense/tracy_widom.hpp"

using namespace eigensense;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = EIGENSENSE_VERSION;

struct RunConfig {
  std::string command;
  WishartSpec spec;
  std::string field = "complex";
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string grid;
  double target_pfa = 0.05;
  std::string out;
  std::string format = "json";
  std::string method = "improved";
  unsigned workers = 0;
};

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["N"] = c.spec.n_samples;
  j["M"] = c.spec.n_receivers;
  j["noise_variance"] = c.spec.noise_variance;
  j["field"] = to_string(c.spec.field);
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["grid"] = c.grid.empty() ? json(nullptr) : json(c.grid);
  j["pfa"] = c.target_pfa;
  j["format"] = c.format;
  if (c.command == "pdf") j["method"] = c.method;
  return j;
}

json header_json(const RunConfig& c) {
  json j;
  j["artifact"] = "eigensense";
  j["version"] = kVersion;
  j["config"] = config_json(c);
  j["seed"] = c.seed;
  j["generator"] = kGeneratorId;
  return j;
}

// '#' comment lines carrying the same header as the JSON outputs.
void write_csv_header(std::ostream& os, const RunConfig& c) {
  os << "# eigensense " << kVersion << "\n";
  os << "# config=" << config_json(c).dump() << "\n";
  os << "# seed=" << c.seed << " generator=" << kGeneratorId << "\n";
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot write '" + path + "'");
  f.imbue(std::locale::classic());
  f << std::setprecision(17);
  return f;
}

void emit(const RunConfig& c, const json& j) {
  if (c.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    auto f = open_out(c.out);
    f << j.dump(2) << "\n";
  }
}

unsigned workers(const RunConfig& c) { return c.workers ? c.workers : default_workers(); }

std::optional<GridSpec> grid_of(const RunConfig& c) {
  if (c.grid.empty()) return std::nullopt;
  return parse_grid_spec(c.grid);
}

json pair_json(const GaussianPair& p) {
  return {{"mean_max", p.mean_max}, {"var_max", p.sd_max * p.sd_max},
          {"mean_min", p.mean_min}, {"var_min", p.sd_min * p.sd_min}};
}

// ---- moments -------------------------------------------------------------

int cmd_moments(const RunConfig& c) {
  json j = header_json(c);
  const double s2 = c.spec.noise_variance;
  if (c.spec.field == Field::real) {
    const auto mc = simulate_ratios(c.spec, c.trials, c.seed, workers(c));
    const auto m = estimate_extreme_moments(mc.lambda_max, mc.lambda_min);
    j["source"] = "monte_carlo";
    for (const auto* e : {&m.largest, &m.smallest})
      j[std::string(to_string(e->set.which))] = {{"mean", e->set.mean},
                                                 {"mean_se", e->mean_se},
                                                 {"variance", e->set.variance},
                                                 {"variance_se", e->variance_se}};
    std::cout << "real field: moments estimated from " << c.trials << " trials\n";
    emit(c, j);
    return 0;
  }
  if (c.spec.n_receivers < 2) throw std::invalid_argument("moments need M >= 2");
  const bool exact_ok = c.spec.n_receivers <= ExactOptions{}.brute_force_cap;
  if (exact_ok) j["C0"] = c0(c.spec).get_str();
  json rows = json::array();
  double worst = 0.0;
  for (Extreme which : {Extreme::largest, Extreme::smallest}) {
    const auto fast = moment_fast(which, c.spec);
    json row;
    row["which"] = to_string(which);
    row["fast"] = {{"E1", fast.moments[1] * s2},
                   {"E2", fast.moments[2] * s2 * s2},
                   {"mean", fast.mean() * s2},
                   {"variance", fast.variance() * s2 * s2},
                   {"mass", fast.moments[0]},
                   {"abs_error", fast.abs_error},
                   {"condition", fast.condition},
                   {"condition_warning", fast.condition_warning}};
    if (exact_ok) {
      const auto ex = extreme_moments_exact(which, c.spec);
      const double mean = ex.mean.get_d(), var = ex.variance.get_d();
      row["exact"] = {{"E1", ex.moments.at(1).get_str()},
                      {"E2", ex.moments.at(2).get_str()},
                      {"mean", mean * s2},
                      {"variance", var * s2 * s2}};
      const double d1 = std::abs(fast.moments[1] - mean) / mean;
      const double d2 = std::abs(fast.moments[2] - ex.moments.at(2).get_d()) /
                        ex.moments.at(2).get_d();
      row["relative_delta"] = {{"E1", d1}, {"E2", d2}};
      worst = std::max({worst, d1, d2});
    }
    rows.push_back(row);
    std::cout << std::setprecision(10) << to_string(which) << ": mean " << fast.mean() * s2
              << ", variance " << fast.variance() * s2 * s2 << "\n";
  }
  j["moments"] = rows;
  if (exact_ok) {
    j["max_relative_delta"] = worst;
    std::cout << "exact vs fast max relative delta " << std::setprecision(3) << worst << "\n";
  } else {
    j["exact"] = "skipped: M above brute-force cap";
  }
  if (c.format == "csv") {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os << std::setprecision(17);
    write_csv_header(os, c);
    os << "which,source,mean,variance\n";
    for (const auto& r : rows) {
      os << r["which"].get<std::string>() << ",fast," << r["fast"]["mean"].get<double>() << ","
         << r["fast"]["variance"].get<double>() << "\n";
      if (r.contains("exact"))
        os << r["which"].get<std::string>() << ",exact," << r["exact"]["mean"].get<double>()
           << "," << r["exact"]["variance"].get<double>() << "\n";
    }
    if (c.out.empty())
      std::cout << os.str();
    else
      open_out(c.out) << os.str();
    return 0;
  }
  emit(c, j);
  return 0;
}

// ---- pdf -----------------------------------------------------------------

GaussianPair model_pair(const RunConfig& c, std::string* source) {
  if (c.spec.field == Field::complex) return pair_for(c.spec, nullptr, source);
  const auto mc = simulate_ratios(c.spec, c.trials, c.seed, workers(c));
  return pair_for(c.spec, &mc, source);
}

RatioCurve model_curve(const RunConfig& c, const std::string& method, std::string* source) {
  if (method == "tw") return tw_ratio_curve(c.spec, embedded_tw2_table(), grid_of(c));
  const auto pair = model_pair(c, source);
  if (method == "independence") return build_independence_curve(pair, grid_of(c));
  return build_ratio_curve(pair, c.spec.n_receivers, grid_of(c));
}

int cmd_pdf(const RunConfig& c) {
  std::string source = "none";
  const auto curve = model_curve(c, c.method, &source);
  std::cout << to_string(curve.method) << " curve on [" << curve.z_min() << ", "
            << curve.z_max() << "], " << curve.grid.size() << " points, raw_mass "
            << std::setprecision(10) << curve.raw_mass << "\n";
  if (c.format == "json") {
    json j = header_json(c);
    j["method"] = to_string(curve.method);
    j["pair_source"] = source;
    j["raw_mass"] = curve.raw_mass;
    j["z"] = curve.grid;
    j["pdf"] = curve.pdf;
    j["cdf"] = curve.cdf;
    emit(c, j);
    return 0;
  }
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17);
  write_csv_header(os, c);
  os << "# method=" << to_string(curve.method) << " raw_mass=" << curve.raw_mass << "\n";
  os << "z,pdf,cdf\n";
  for (std::size_t k = 0; k < curve.grid.size(); ++k)
    os << curve.grid[k] << "," << curve.pdf[k] << "," << curve.cdf[k] << "\n";
  if (c.out.empty())
    std::cout << os.str();
  else
    open_out(c.out) << os.str();
  return 0;
}

// ---- threshold -----------------------------------------------------------

int cmd_threshold(const RunConfig& c) {
  if (!(c.target_pfa > 0.0 && c.target_pfa < 1.0))
    throw unreachable_error("target pfa must lie in (0, 1), got " + std::to_string(c.target_pfa));
  std::string source;
  const auto curve = model_curve(c, "improved", &source);
  const double gamma = threshold(curve, c.target_pfa);
  // Fresh draws: the stream is offset so a real-field pair estimate and this
  // check never share samples.
  const auto mc = simulate_ratios(c.spec, c.trials, c.seed + 1, workers(c));
  const Ecdf e(mc.samples);
  const double emp = 1.0 - e(gamma);
  const double se = std::sqrt(emp * (1.0 - emp) / static_cast<double>(c.trials));
  json j = header_json(c);
  j["gamma"] = gamma;
  j["model_pfa"] = pfa(curve, gamma);
  j["empirical_pfa"] = emp;
  j["empirical_pfa_se"] = se;
  j["mc_seed"] = c.seed + 1;
  j["raw_mass"] = curve.raw_mass;
  j["pair_source"] = source;
  std::cout << std::setprecision(6) << "gamma " << gamma << ", model pfa " << pfa(curve, gamma)
            << ", empirical pfa " << emp << " +- " << se << "\n";
  emit(c, j);
  return 0;
}

// ---- simulate ------------------------------------------------------------

int cmd_simulate(const RunConfig& c) {
  const auto mc = simulate_ratios(c.spec, c.trials, c.seed, workers(c));
  std::ostringstream os;
  write_samples_csv(os, mc, kVersion);
  if (c.out.empty())
    std::cout << os.str();
  else
    open_out(c.out) << os.str();
  if (!c.out.empty()) std::cout << mc.trial_count << " ratios written to " << c.out << "\n";
  return 0;
}

// ---- compare -------------------------------------------------------------

json comparison_json(const Comparison& cmp, const RatioSampleSet& mc) {
  return {{"field", to_string(mc.spec.field)},
          {"seed", mc.seed},
          {"trials", mc.trial_count},
          {"pair_source", cmp.pair_source},
          {"pair", pair_json(cmp.pair)},
          {"ks_improved", cmp.ks_improved},
          {"ks_independence", cmp.ks_independence},
          {"ks_tw", cmp.ks_tw},
          {"improved_best", cmp.ks_improved < cmp.ks_independence && cmp.ks_improved < cmp.ks_tw},
          {"raw_mass", {{"improved", cmp.improved.raw_mass},
                        {"independence", cmp.independence.raw_mass},
                        {"tracy_widom", cmp.tracy_widom.raw_mass}}},
          {"grid", {{"z_min", cmp.improved.z_min()},
                    {"z_max", cmp.improved.z_max()},
                    {"points", cmp.improved.grid.size()}}}};
}

int cmd_compare(const RunConfig& c) {
  if (c.out.empty()) throw std::invalid_argument("compare needs --out <file.csv>");
  const std::filesystem::path csv_path(c.out);
  std::filesystem::path json_path = csv_path;
  json_path.replace_extension(".json");

  json j = header_json(c);
  j["tw_variant"] = "lambda_1 ~ TW2 soft edge, lambda_M fixed at hard edge";
  j["csv"] = csv_path.filename().string();
  json fields;
  std::optional<Comparison> primary;
  for (Field f : {Field::complex, Field::real}) {
    WishartSpec s = c.spec;
    s.field = f;
    const auto mc = simulate_ratios(s, c.trials, c.seed, workers(c));
    auto cmp = compare_models(mc, grid_of(c));
    fields[std::string(to_string(f))] = comparison_json(cmp, mc);
    std::cout << to_string(f) << ": KS improved " << std::setprecision(4) << cmp.ks_improved
              << ", independence " << cmp.ks_independence << ", tw " << cmp.ks_tw << "\n";
    if (f == c.spec.field) primary = std::move(cmp);
  }
  j["primary_field"] = to_string(c.spec.field);
  j["ks_improved"] = fields[std::string(to_string(c.spec.field))]["ks_improved"];
  j["ks_independence"] = fields[std::string(to_string(c.spec.field))]["ks_independence"];
  j["ks_tw"] = fields[std::string(to_string(c.spec.field))]["ks_tw"];
  j["fields"] = fields;

  auto csv = open_out(csv_path.string());
  write_csv_header(csv, c);
  csv << "z,pdf_improved,pdf_independence,pdf_tw,hist_empirical\n";
  const auto& p = *primary;
  for (std::size_t k = 0; k < p.improved.grid.size(); ++k)
    csv << p.improved.grid[k] << "," << p.improved.pdf[k] << "," << p.independence.pdf[k] << ","
        << p.tracy_widom.pdf[k] << "," << p.histogram.density_at(p.improved.grid[k]) << "\n";
  auto js = open_out(json_path.string());
  js << j.dump(2) << "\n";
  std::cout << "wrote " << csv_path.string() << " and " << json_path.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::cout.imbue(std::locale::classic());
  CLI::App app{"Extreme-eigenvalue ratio densities for noise-only sample covariance matrices"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-N,--samples", cfg.spec.n_samples, "samples per receiver")
        ->capture_default_str();
    sub->add_option("-M,--receivers", cfg.spec.n_receivers, "number of receivers")
        ->capture_default_str();
    sub->add_option("--noise-variance", cfg.spec.noise_variance, "noise variance")
        ->capture_default_str();
    sub->add_option("--field", cfg.field, "complex or real")
        ->check(CLI::IsMember({"complex", "real"}))
        ->capture_default_str();
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
    sub->add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
    sub->add_option("--grid", cfg.grid, "ratio grid zmin:zmax:points");
    sub->add_option("--out", cfg.out, "output file (stdout if omitted)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--workers", cfg.workers, "threads (default: EIGENSENSE_THREADS or all)");
  };
  auto* moments = app.add_subcommand("moments", "extreme-eigenvalue moments, exact and fast");
  auto* pdf = app.add_subcommand("pdf", "tabulate a ratio density");
  auto* thr = app.add_subcommand("threshold", "threshold for a target false-alarm rate");
  auto* sim = app.add_subcommand("simulate", "draw Monte Carlo ratio samples");
  auto* cmp = app.add_subcommand("compare", "score all models against simulation");
  for (auto* s : {moments, pdf, thr, sim, cmp}) add_common(s);
  pdf->add_option("--method", cfg.method, "improved, independence or tw")
      ->check(CLI::IsMember({"improved", "independence", "tw"}))
      ->capture_default_str();
  thr->add_option("--pfa", cfg.target_pfa, "target false-alarm probability")
      ->capture_default_str();
  pdf->callback([&] { cfg.format = pdf->count("--format") ? cfg.format : "csv"; });
  sim->callback([&] { cfg.format = "csv"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.spec.field = field_from_string(cfg.field);
    cfg.spec.validate();
    if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (cfg.command == "moments") return cmd_moments(cfg);
    if (cfg.command == "pdf") return cmd_pdf(cfg);
    if (cfg.command == "threshold") return cmd_threshold(cfg);
    if (cfg.command == "simulate") return cmd_simulate(cfg);
    return cmd_compare(cfg);
  } catch (const unreachable_error& e) {
    std::cerr << "unreachable: " << e.what() << "\n";
    return 3;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
