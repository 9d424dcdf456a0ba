#ifndef RWENO_CLI_HPP_
#define RWENO_CLI_HPP_

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rweno/analysis.hpp"
#include "rweno/error.hpp"
#include "rweno/funcspace.hpp"
#include "rweno/ratnet.hpp"
#include "rweno/scheme.hpp"
#include "rweno/solver.hpp"
#include "rweno/train.hpp"

namespace rweno::cli {

using json = nlohmann::json;

/// Every recognised key with its default. Config files may only set keys that
/// appear here.
inline json default_config() {
  return json{
      {"seed", 0},
      {"jobs", 1},
      {"weno_eps", kDefaultWenoEps},
      {"dataset", {{"nx_values", {16, 32, 64, 128, 256, 512, 1024}}, {"pairs_per_grid", 16384}}},
      {"train",
       {{"data", ""},
        {"sweep", true},
        {"alpha_values", kSweepAlphas},
        {"beta_d_values", kSweepBetas},
        {"lr_values", kSweepLrs},
        {"alpha", 0.01},
        {"beta_d", 0.1},
        {"beta_w", 1e-6},
        {"peak_lr", 5e-4},
        {"total_steps", 20000},
        {"warmup_fraction", 0.05},
        {"batch_size", 1024},
        {"arch", {4, 4, 4}},
        {"c_eno", kDefaultCEno},
        {"log_every", 100}}},
      {"select", {{"manifest", ""}, {"criterion", "conv-sine-step"}}},
      {"solve", {{"problem", "advection-cosine"}, {"scheme", "weno3-js"}, {"nx", 256}, {"cfl", 0.4}, {"T", 5.0}}},
      {"converge",
       {{"target", "advection-sigmoid"},
        {"schemes", {"weno3-js", "weno3-z", "weno5-js"}},
        {"nx_values", {64, 128, 256, 512}}}},
      {"adr",
       {{"schemes", {"weno3-js", "weno3-z", "weno5-js", "quick", "ideal3"}}, {"nx", kDefaultAdrNx}, {"points", 64}}},
  };
}

namespace detail {
inline bool same_kind(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) {
    return !(a.is_number_integer() && b.is_number_float());
  }
  return a.type() == b.type();
}
}  // namespace detail

/// Overlays `over` onto `base`, rejecting unknown keys and type changes.
inline void merge_config(json& base, const json& over, const std::string& where = "") {
  if (!over.is_object()) {
    throw ConfigError("config" + (where.empty() ? std::string() : " section '" + where + "'") +
                      " must be a JSON object");
  }
  for (const auto& [key, value] : over.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!base.contains(key)) {
      throw ConfigError("unknown config key '" + path + "'");
    }
    json& slot = base[key];
    if (slot.is_object()) {
      merge_config(slot, value, path);
    } else if (!detail::same_kind(slot, value)) {
      throw ConfigError("config key '" + path + "' has the wrong type");
    } else {
      slot = value;
    }
  }
}

inline json load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

template <class T>
T get(const json& cfg, const char* section, const char* key) {
  try {
    return cfg.at(section).at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config key '") + section + "." + key + "' is invalid");
  }
}

inline DatasetConfig dataset_config(const json& cfg) {
  DatasetConfig d;
  d.nx_values = get<std::vector<int>>(cfg, "dataset", "nx_values");
  d.pairs_per_grid = get<int>(cfg, "dataset", "pairs_per_grid");
  d.seed = cfg.at("seed").get<std::uint64_t>();
  d.validate();
  return d;
}

/// Held-out data for the loss-based selection criteria: same layout, a seed
/// no training run uses.
inline DatasetConfig heldout_config(DatasetConfig d) {
  d.seed ^= 0x48454C444F55545FULL;
  return d;
}

inline TrainConfig train_config(const json& cfg) {
  TrainConfig t;
  t.seed = cfg.at("seed").get<std::uint64_t>();
  t.hyper.alpha = get<double>(cfg, "train", "alpha");
  t.hyper.beta_d = get<double>(cfg, "train", "beta_d");
  t.hyper.beta_w = get<double>(cfg, "train", "beta_w");
  t.peak_lr = get<double>(cfg, "train", "peak_lr");
  t.total_steps = get<int>(cfg, "train", "total_steps");
  const double frac = get<double>(cfg, "train", "warmup_fraction");
  if (!(frac >= 0.0 && frac < 1.0)) {
    throw ConfigError("train.warmup_fraction must lie in [0, 1)");
  }
  t.warmup_steps = static_cast<int>(frac * t.total_steps);
  t.batch_size = get<int>(cfg, "train", "batch_size");
  t.arch = get<std::vector<int>>(cfg, "train", "arch");
  t.c_eno = get<double>(cfg, "train", "c_eno");
  t.validate();
  return t;
}

inline std::vector<TrainConfig> train_configs(const json& cfg) {
  const TrainConfig base = train_config(cfg);
  if (!get<bool>(cfg, "train", "sweep")) {
    return {base};
  }
  const auto a = get<std::vector<double>>(cfg, "train", "alpha_values");
  const auto b = get<std::vector<double>>(cfg, "train", "beta_d_values");
  const auto l = get<std::vector<double>>(cfg, "train", "lr_values");
  auto out = sweep_grid(base, a, b, l);
  if (out.empty()) {
    throw ConfigError("train sweep is empty; every value list needs at least one entry");
  }
  for (const auto& c : out) c.validate();
  return out;
}

inline std::vector<Scheme> schemes_from(const std::vector<std::string>& names, double eps) {
  if (names.empty()) {
    throw ConfigError("at least one scheme is required");
  }
  std::vector<Scheme> out;
  for (const auto& n : names) out.push_back(make_scheme(n, eps));
  return out;
}

inline std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// `<out>/<command>.manifest`: a timestamp comment followed by the resolved
/// configuration.
inline void write_run_manifest(const std::filesystem::path& out, const std::string& command, const json& cfg) {
  std::ofstream os(out / (command + ".manifest"));
  if (!os) {
    throw ConfigError("cannot write run manifest in '" + out.string() + "'");
  }
  os << "# rweno " << command << " run at " << utc_timestamp() << '\n' << cfg.dump(2) << '\n';
}

inline std::vector<std::pair<std::string, std::string>> report_meta(const std::string& command, const json& cfg) {
  return {{"command", command}, {"seed", std::to_string(cfg.at("seed").get<std::uint64_t>())}};
}

// ---------------------------------------------------------------------------
// Commands

inline void cmd_gen_data(const json& cfg, const std::filesystem::path& out, std::ostream& log) {
  const DatasetConfig d = dataset_config(cfg);
  const auto data = build_dataset(d);
  write_dataset((out / "dataset.csv").string(), data);
  log << "wrote " << data.size() << " samples to " << (out / "dataset.csv").string() << '\n';
}

inline void cmd_train(const json& cfg, const std::filesystem::path& out, std::ostream& log) {
  const auto configs = train_configs(cfg);
  std::string data_path = get<std::string>(cfg, "train", "data");
  if (data_path.empty()) data_path = (out / "dataset.csv").string();
  if (!std::filesystem::exists(data_path)) {
    throw ConfigError("dataset '" + data_path + "' does not exist; run gen-data first");
  }
  const auto data = read_dataset(data_path);
  const auto heldout = build_dataset(heldout_config(dataset_config(cfg)));
  const int jobs = cfg.at("jobs").get<int>();
  log << "training " << configs.size() << " model(s) on " << data.size() << " samples with " << jobs
      << " job(s)\n";
  const auto models = train_sweep(data, heldout, configs, jobs);
  const auto dir = out / "models";
  std::filesystem::create_directories(dir);
  std::vector<ModelSummary> rows;
  for (const auto& m : models) {
    const std::string id = std::to_string(m.summary.id);
    write_weights((dir / ("model_" + id + ".json")).string(), m.params);
    std::ofstream lg(dir / ("train_log_" + id + ".csv"));
    write_train_log(lg, m.log);
    rows.push_back(m.summary);
    log << "model " << id << ": order_g " << m.summary.order_g << ", order_h " << m.summary.order_h
        << ", recon " << m.summary.recon_loss << ", dev " << m.summary.dev_loss << '\n';
  }
  std::ofstream mf(dir / "manifest.csv");
  write_manifest(mf, rows);
}

/// Returns the selected model id.
inline int cmd_select(const json& cfg, const std::filesystem::path& out, std::ostream& log) {
  std::string path = get<std::string>(cfg, "select", "manifest");
  if (path.empty()) path = (out / "models" / "manifest.csv").string();
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot open manifest '" + path + "'");
  }
  auto rows = read_manifest(is, path);
  if (rows.empty()) {
    throw ConfigError("manifest '" + path + "' lists no models");
  }
  const Criterion c = parse_criterion(get<std::string>(cfg, "select", "criterion"));
  ModelSummary chosen = rows[select_model(std::span<const ModelSummary>(rows), c)];
  chosen.criterion = std::string(criterion_name(c));
  const auto weights = std::filesystem::path(path).parent_path() / ("model_" + std::to_string(chosen.id) + ".json");
  std::ofstream sel(out / "selected.csv");
  write_manifest(sel, std::span<const ModelSummary>(&chosen, 1));
  log << "selected model " << chosen.id << " (" << chosen.criterion << "): " << weights.string() << '\n';
  return chosen.id;
}

inline SolveReport cmd_solve(const json& cfg, const std::filesystem::path& out, std::ostream& log) {
  Problem p = make_problem(get<std::string>(cfg, "solve", "problem"));
  p.cfl = get<double>(cfg, "solve", "cfl");
  p.T = get<double>(cfg, "solve", "T");
  if (!(p.cfl > 0.0 && p.cfl <= 1.0)) throw ConfigError("solve.cfl must lie in (0, 1]");
  if (!(p.T > 0.0)) throw ConfigError("solve.T must be positive");
  const Scheme s = make_scheme(get<std::string>(cfg, "solve", "scheme"), cfg.at("weno_eps").get<double>());
  const GridSpec g = make_grid(p, get<int>(cfg, "solve", "nx"));
  const SolveReport r = run(p, g, s);
  auto meta = report_meta("solve", cfg);
  meta.emplace_back("problem", p.name);
  meta.emplace_back("scheme", s.name());
  Report sol{meta, {"x", "u", "u_exact"}, {}};
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    sol.rows.push_back({format_real(r.x[i]), format_real(r.final_state[i]), format_real(r.final_exact[i])});
  }
  Report err{meta, {"t", "l1"}, {}};
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    err.rows.push_back({format_real(r.times[i]), format_real(r.l1_errors[i])});
  }
  emit_report((out / "solution.csv").string(), sol);
  emit_report((out / "errors.csv").string(), err);
  log << p.name << " with " << s.name() << " on " << g.nx << " cells: " << r.steps << " steps, final L1 "
      << format_real(r.final_l1()) << '\n';
  return r;
}

inline std::vector<ConvergenceRow> cmd_converge(const json& cfg, const std::filesystem::path& out,
                                                std::ostream& log) {
  const auto schemes =
      schemes_from(get<std::vector<std::string>>(cfg, "converge", "schemes"), cfg.at("weno_eps").get<double>());
  const auto grids = get<std::vector<int>>(cfg, "converge", "nx_values");
  const std::string target = get<std::string>(cfg, "converge", "target");
  std::vector<ConvergenceRow> rows;
  if (target == "sin-cubed") {
    rows = convergence_study(schemes, eval_function(EvalFunction::SinCubed), grids);
  } else if (target == "sine-step") {
    rows = convergence_study(schemes, eval_function(EvalFunction::SineStep), grids);
  } else {
    rows = convergence_study(schemes, make_problem(target), grids);
  }
  auto meta = report_meta("converge", cfg);
  meta.emplace_back("target", target);
  emit_report((out / "convergence.csv").string(), convergence_report(rows, meta));
  for (std::size_t i = 0; i < rows.size(); i += grids.size()) {
    log << rows[i].scheme << ": slope " << format_real(rows[i].slope) << '\n';
  }
  return rows;
}

inline void cmd_adr(const json& cfg, const std::filesystem::path& out, std::ostream& log) {
  const auto names = get<std::vector<std::string>>(cfg, "adr", "schemes");
  const auto schemes = schemes_from(names, cfg.at("weno_eps").get<double>());
  const int nx = get<int>(cfg, "adr", "nx");
  const int points = get<int>(cfg, "adr", "points");
  if (nx < 8 || nx % 2 != 0) throw ConfigError("adr.nx must be even and at least 8");
  if (points < 1 || points > nx / 2) throw ConfigError("adr.points must lie in [1, nx/2]");
  const auto modes = adr_modes(nx, points);
  std::vector<std::pair<std::string, std::vector<ADRPoint>>> curves;
  for (const auto& s : schemes) {
    curves.emplace_back(s.name(), adr(s, modes, nx));
  }
  emit_report((out / "adr.csv").string(), adr_report(curves, report_meta("adr", cfg)));
  log << "wrote " << modes.size() << " wavenumbers for " << schemes.size() << " scheme(s)\n";
}

// ---------------------------------------------------------------------------
// Entry point

/// Parses arguments and runs one subcommand. Returns the process exit code:
/// 0 on success, 1 on a runtime failure, 2 on a usage or config error.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Rational-network WENO reconstruction toolkit"};
  app.fallthrough();
  app.require_subcommand(1);
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<int> jobs;
  std::optional<double> weno_eps;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--seed", seed, "global seed");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads");
  app.add_option("--weno-eps", weno_eps, "epsilon of the classical WENO weights");

  json flags = json::object();
  auto set_flag = [&](const char* section, const char* key, auto& value) {
    if (value) flags[section][key] = *value;
  };

  auto* gen = app.add_subcommand("gen-data", "build the training dataset");
  std::optional<std::vector<int>> nx_values;
  std::optional<int> pairs;
  gen->add_option("--nx", nx_values, "grid sizes")->delimiter(',');
  gen->add_option("--pairs-per-grid", pairs, "samples per grid size");

  auto* train = app.add_subcommand("train", "train one model or the hyperparameter sweep");
  std::optional<std::string> data;
  std::optional<double> alpha, beta_d, beta_w, lr;
  std::optional<int> steps, batch;
  std::optional<std::vector<double>> alphas, betas, lrs;
  bool single = false;
  train->add_option("--data", data, "dataset CSV (default <out>/dataset.csv)");
  train->add_flag("--single", single, "train one model from --alpha/--beta-d/--lr instead of the sweep");
  train->add_option("--alpha", alpha, "smoothness exponent");
  train->add_option("--beta-d", beta_d, "deviation loss weight");
  train->add_option("--beta-w", beta_w, "l2 weight");
  train->add_option("--lr", lr, "peak learning rate");
  train->add_option("--steps", steps, "optimizer steps");
  train->add_option("--batch", batch, "batch size");
  train->add_option("--alphas", alphas, "sweep alpha values")->delimiter(',');
  train->add_option("--betas", betas, "sweep beta_d values")->delimiter(',');
  train->add_option("--lrs", lrs, "sweep peak learning rates")->delimiter(',');

  auto* sel = app.add_subcommand("select", "pick a model from a manifest");
  std::optional<std::string> manifest, criterion;
  sel->add_option("--manifest", manifest, "manifest CSV (default <out>/models/manifest.csv)");
  sel->add_option("--criterion", criterion,
                  "conv-sine-step, conv-sin-cubed, least-recon-loss or least-dev-loss");

  auto* solve = app.add_subcommand("solve", "run one 1D test problem");
  std::optional<std::string> problem, scheme;
  std::optional<int> nx;
  std::optional<double> cfl, t_end;
  solve->add_option("--problem", problem, "advection-cosine, advection-sigmoid, burgers-shock, ...");
  solve->add_option("--scheme", scheme, valid_scheme_list());
  solve->add_option("--nx", nx, "number of cells");
  solve->add_option("--cfl", cfl, "CFL number");
  solve->add_option("--T", t_end, "final time");

  auto* conv = app.add_subcommand("converge", "convergence study");
  std::optional<std::string> target;
  std::optional<std::vector<std::string>> conv_schemes;
  std::optional<std::vector<int>> conv_nx;
  conv->add_option("--target", target, "problem name, sin-cubed or sine-step");
  conv->add_option("--schemes", conv_schemes, "schemes")->delimiter(',');
  conv->add_option("--nx", conv_nx, "grid sizes")->delimiter(',');

  auto* adr_cmd = app.add_subcommand("adr", "approximate dispersion relation");
  std::optional<std::vector<std::string>> adr_schemes;
  std::optional<int> adr_nx, adr_points;
  adr_cmd->add_option("--schemes", adr_schemes, "schemes")->delimiter(',');
  adr_cmd->add_option("--nx", adr_nx, "number of cells");
  adr_cmd->add_option("--points", adr_points, "number of wavenumbers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (seed) flags["seed"] = *seed;
    if (jobs) flags["jobs"] = *jobs;
    if (weno_eps) flags["weno_eps"] = *weno_eps;
    set_flag("dataset", "nx_values", nx_values);
    set_flag("dataset", "pairs_per_grid", pairs);
    set_flag("train", "data", data);
    set_flag("train", "alpha", alpha);
    set_flag("train", "beta_d", beta_d);
    set_flag("train", "beta_w", beta_w);
    set_flag("train", "peak_lr", lr);
    set_flag("train", "total_steps", steps);
    set_flag("train", "batch_size", batch);
    set_flag("train", "alpha_values", alphas);
    set_flag("train", "beta_d_values", betas);
    set_flag("train", "lr_values", lrs);
    if (single) flags["train"]["sweep"] = false;
    set_flag("select", "manifest", manifest);
    set_flag("select", "criterion", criterion);
    set_flag("solve", "problem", problem);
    set_flag("solve", "scheme", scheme);
    set_flag("solve", "nx", nx);
    set_flag("solve", "cfl", cfl);
    set_flag("solve", "T", t_end);
    set_flag("converge", "target", target);
    set_flag("converge", "schemes", conv_schemes);
    set_flag("converge", "nx_values", conv_nx);
    set_flag("adr", "schemes", adr_schemes);
    set_flag("adr", "nx", adr_nx);
    set_flag("adr", "points", adr_points);

    json cfg = default_config();
    if (!config_path.empty()) merge_config(cfg, load_config_file(config_path));
    merge_config(cfg, flags);
    if (cfg.at("jobs").get<int>() < 1) throw ConfigError("jobs must be at least 1");
    if (!(cfg.at("weno_eps").get<double>() > 0.0)) throw ConfigError("weno_eps must be positive");

    const std::filesystem::path outp(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(outp, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());

    const std::string command = app.get_subcommands().front()->get_name();
    write_run_manifest(outp, command, cfg);
    if (command == "gen-data") {
      cmd_gen_data(cfg, outp, out);
    } else if (command == "train") {
      cmd_train(cfg, outp, out);
    } else if (command == "select") {
      cmd_select(cfg, outp, out);
    } else if (command == "solve") {
      cmd_solve(cfg, outp, out);
    } else if (command == "converge") {
      cmd_converge(cfg, outp, out);
    } else {
      cmd_adr(cfg, outp, out);
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace rweno::cli

#endif  // RWENO_CLI_HPP_
