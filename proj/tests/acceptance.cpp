// Acceptance suite: one PASS/FAIL line per criterion, artifacts under --out.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <numeric>

#include "CLI11.hpp"
#include "rweno/rweno.hpp"

using namespace rweno;
namespace fs = std::filesystem;

namespace {

// Tolerances and bands.
constexpr double kWeno3InterpLo = 1.8, kWeno3InterpHi = 3.2;
constexpr double kIdealInterpMin = 2.8;
constexpr double kWeno5InterpMin = 4.5;
constexpr double kNnOrderTarget = 3.0, kNnOrderBand = 0.5, kNnOrderGMin = 2.0;
constexpr double kCosineRatio = 0.2;
constexpr double kSigmoidSlope = 1.6, kSigmoidBand = 0.4, kSigmoidCoarseRatio = 0.6;
constexpr double kOvershoot = 1e-3;
constexpr double kTransonicRatio = 1.2;
constexpr double kGradRelTol = 1e-4, kGradAbsFloor = 1e-10;
constexpr double kExactTol = 1e-12;
constexpr double kConvexTol = 1e-12;
constexpr double kMassDrift = 1e-10;
constexpr double kAdrDissipation = 1e-8;
constexpr double kAdrBandLo = 2.0, kAdrBandHi = 3.0;
constexpr std::size_t kParamsLo = 90, kParamsHi = 125;
constexpr int kReferenceParams = 105;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

void report(int n, const std::string& title, const Outcome& o) {
  for (const auto& line : o.notes) std::cout << "    " << line << '\n';
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << title << '\n' << std::flush;
}

std::vector<Scheme> weno_family() {
  return {make_scheme("weno3-js"), make_scheme("weno3-z"), make_scheme("weno5-js")};
}

class Runs {
 public:
  const SolveReport& get(const std::string& problem, const Scheme& s, int nx) {
    const auto key = problem + "|" + s.name() + "|" + std::to_string(nx);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      const Problem p = make_problem(problem);
      it = cache_.emplace(key, run(p, make_grid(p, nx), s)).first;
    }
    return it->second;
  }

 private:
  std::map<std::string, SolveReport> cache_;
};

double mass(const std::vector<double>& u, double dx) {
  double s = 0.0;
  for (double v : u) s += v * dx;
  return s;
}

// Exact rationals for the quadratic-exactness oracle.
struct Frac {
  long long n = 0, d = 1;
  Frac(long long num = 0, long long den = 1) : n(num), d(den) { norm(); }
  void norm() {
    if (d < 0) n = -n, d = -d;
    const long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) n /= g, d /= g;
  }
  Frac operator+(Frac o) const { return {n * o.d + o.n * d, d * o.d}; }
  Frac operator-(Frac o) const { return {n * o.d - o.n * d, d * o.d}; }
  Frac operator*(Frac o) const { return {n * o.n, d * o.d}; }
  double value() const { return static_cast<double>(n) / static_cast<double>(d); }
};

// Cell average over [j-1/2, j+1/2] of a + b x + c x^2: a + b j + c (j^2 + 1/12).
Frac quad_avg(long long a, long long b, long long c, long long j) {
  return Frac(a) + Frac(b * j) + Frac(c) * (Frac(j * j) + Frac(1, 12));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::string out_dir = "acceptance_artifacts";
  int seeds = 6;
  std::uint64_t data_seed = 0;
  app.add_option("--out", out_dir, "artifact directory");
  app.add_option("--seeds", seeds, "training seeds for the NN model")->check(CLI::Range(1, 64));
  app.add_option("--data-seed", data_seed, "dataset seed");
  std::string model_path;
  app.add_option("--model", model_path, "evaluate this weight file instead of training");
  CLI11_PARSE(app, argc, argv);
  fs::create_directories(out_dir);
  const auto t_start = std::chrono::steady_clock::now();
  int failures = 0;
  auto done = [&](int n, const std::string& title, const Outcome& o) {
    report(n, title, o);
    failures += o.pass ? 0 : 1;
  };

  // ---- NN training: lr fixed at the best sweep value, all alpha x beta_d, several seeds.
  DatasetConfig dcfg;
  dcfg.seed = data_seed;
  const auto data = build_dataset(dcfg);
  DatasetConfig hcfg = dcfg;
  hcfg.seed = data_seed ^ 0x48454C444F55545FULL;
  const auto heldout = build_dataset(hcfg);
  const std::vector<double> lrs{5e-4};
  std::vector<TrainedModel> seed_winners;
  std::vector<ModelSummary> all_rows;
  if (!model_path.empty()) {
    TrainedModel m;
    m.params = read_weights(model_path);
    m.metrics = evaluate_orders(nn_scheme(std::make_shared<const NetParams>(m.params)));
    m.summary.order_g = m.metrics.order_g;
    m.summary.order_h = m.metrics.order_h;
    seed_winners.push_back(std::move(m));
    seeds = 0;
    std::cout << "  evaluating " << model_path << '\n';
  }
  for (int s = 0; s < seeds; ++s) {
    TrainConfig base;
    base.seed = static_cast<std::uint64_t>(s);
    base.warmup_steps = static_cast<int>(0.05 * base.total_steps);
    const auto cfgs = sweep_grid(base, kSweepAlphas, kSweepBetas, lrs);
    auto models = train_sweep(data, heldout, cfgs, 1);
    const auto pick = select_model(std::span<const TrainedModel>(models), Criterion::ConvSineStep);
    for (const auto& m : models) {
      ModelSummary row = m.summary;
      row.id = s * static_cast<int>(cfgs.size()) + m.summary.id;
      all_rows.push_back(row);
    }
    const auto& w = models[pick].summary;
    std::cout << "  seed " << s << ": selected alpha=" << w.alpha << " beta_d=" << w.beta_d << " order_g=" << fmt(w.order_g)
              << " order_h=" << fmt(w.order_h) << '\n'
              << std::flush;
    seed_winners.push_back(std::move(models[pick]));
  }
  if (!all_rows.empty()) {
    std::ofstream mf(fs::path(out_dir) / "sweep_manifest.csv");
    write_manifest(mf, all_rows);
  }
  const std::size_t best = select_model(std::span<const TrainedModel>(seed_winners), Criterion::ConvSineStep);
  const TrainedModel& nn = seed_winners[best];
  write_weights((fs::path(out_dir) / "selected_model.json").string(), nn.params);
  const auto net = std::make_shared<const NetParams>(nn.params);
  const Scheme nn_s = nn_scheme(net, "weno3-nn");
  Runs runs;

  // 1. Reconstruction orders.
  {
    Outcome o;
    const std::vector<int> grids{16, 32, 64, 128, 256, 512, 1024};
    const auto rows = convergence_study({make_scheme("weno3-js"), make_scheme("ideal3"), make_scheme("weno5-js")},
                                        eval_function(EvalFunction::SinCubed), grids);
    emit_report((fs::path(out_dir) / "interp_sin_cubed.csv").string(), convergence_report(rows));
    const double s3 = rows[0].slope, si = rows[grids.size()].slope, s5 = rows[2 * grids.size()].slope;
    o.check(s3 >= kWeno3InterpLo && s3 <= kWeno3InterpHi, "weno3-js slope " + fmt(s3) + " in [1.8, 3.2]");
    o.check(si >= kIdealInterpMin, "ideal3 slope " + fmt(si) + " >= 2.8");
    o.check(s5 >= kWeno5InterpMin, "weno5-js slope " + fmt(s5) + " >= 4.5");
    done(1, "reconstruction orders on sin^3", o);
  }

  // 2. Selected NN model order.
  {
    Outcome o;
    const auto& m = nn.summary;
    o.check(std::abs(m.order_h - kNnOrderTarget) <= kNnOrderBand,
            "best-of-" + std::to_string(seed_winners.size()) + " order on sine-step " + fmt(m.order_h) +
                " within 0.5 of 3");
    o.check(m.order_g > kNnOrderGMin, "order on sin^3 " + fmt(m.order_g) + " > 2");
    o.notes.push_back("     selected seed " + std::to_string(best) + ", alpha " + fmt(m.alpha) + ", beta_d " +
                      fmt(m.beta_d) + ", peak lr " + fmt(m.peak_lr));
    done(2, "ConvSineStep-selected NN convergence order", o);
  }

  // 3. Advection cosine.
  {
    Outcome o;
    std::map<std::string, double> err;
    std::vector<Scheme> schemes = weno_family();
    schemes.push_back(make_scheme("quick"));
    schemes.push_back(nn_s);
    for (const auto& s : schemes) err[s.name()] = runs.get("advection-cosine", s, 256).final_l1();
    for (const auto& [k, v] : err) o.notes.push_back("     L1 " + k + " = " + fmt(v));
    o.check(err["weno3-nn"] <= kCosineRatio * err["weno3-js"],
            "nn / weno3-js = " + fmt(err["weno3-nn"] / err["weno3-js"]) + " <= 0.2");
    const bool w5_best = std::all_of(err.begin(), err.end(), [&](auto& kv) { return kv.second >= err["weno5-js"]; });
    o.check(w5_best, "weno5-js has the lowest error");
    done(3, "advection cosine, T=5, nx=256", o);
  }

  // 4. Advection sigmoid convergence.
  {
    Outcome o;
    std::vector<Scheme> schemes = weno_family();
    schemes.push_back(nn_s);
    const std::vector<int> grids{64, 128, 256, 512};
    std::vector<ConvergenceRow> rows;
    for (const auto& s : schemes) {
      std::vector<std::pair<double, double>> pts;
      for (int nx : grids) {
        const auto& r = runs.get("advection-sigmoid", s, nx);
        rows.push_back({s.name(), nx, 1.0 / nx, r.final_l1(), 0.0});
        pts.emplace_back(1.0 / nx, r.final_l1());
      }
      const double slope = convergence_order(pts).slope;
      for (std::size_t i = rows.size() - grids.size(); i < rows.size(); ++i) rows[i].slope = slope;
      o.check(std::abs(slope - kSigmoidSlope) <= kSigmoidBand, s.name() + " slope " + fmt(slope) + " in 1.6 +- 0.4");
    }
    emit_report((fs::path(out_dir) / "sigmoid_convergence.csv").string(), convergence_report(rows));
    const double ratio = runs.get("advection-sigmoid", nn_s, 64).final_l1() /
                         runs.get("advection-sigmoid", make_scheme("weno3-js"), 64).final_l1();
    o.check(ratio <= kSigmoidCoarseRatio, "nx=64 nn / weno3-js = " + fmt(ratio) + " <= 0.6");
    done(4, "advection sigmoid convergence", o);
  }

  // 5. Burgers shock.
  {
    Outcome o;
    std::vector<Scheme> schemes = weno_family();
    schemes.push_back(nn_s);
    for (const auto& s : schemes) {
      const auto& r = runs.get("burgers-shock", s, 256);
      const auto [lo, hi] = std::minmax_element(r.final_state.begin(), r.final_state.end());
      o.check(*hi <= 1.0 + kOvershoot && *lo >= -kOvershoot,
              s.name() + " range [" + fmt(*lo) + ", " + fmt(*hi) + "], L1 " + fmt(r.final_l1()) + ", TV " +
                  fmt(total_variation(r.final_state)));
    }
    const double nn_e = runs.get("burgers-shock", nn_s, 256).final_l1();
    const double w3_e = runs.get("burgers-shock", make_scheme("weno3-js"), 256).final_l1();
    o.check(nn_e <= w3_e, "nn L1 " + fmt(nn_e) + " <= weno3-js L1 " + fmt(w3_e));
    done(5, "Burgers shock, T=5, nx=256", o);
  }

  // 6. Burgers transonic rarefaction.
  {
    Outcome o;
    const double nn_e = runs.get("burgers-transonic", nn_s, 256).final_l1();
    const double w5_e = runs.get("burgers-transonic", make_scheme("weno5-js"), 256).final_l1();
    o.check(nn_e <= kTransonicRatio * w5_e, "nn L1 " + fmt(nn_e) + " <= 1.2 x weno5-js L1 " + fmt(w5_e));
    done(6, "Burgers transonic rarefaction, T=5, nx=256", o);
  }

  // 7. Gradient oracle.
  {
    Outcome o;
    NetParams p = nn.params;
    std::vector<TrainSample> batch(data.begin(), data.begin() + 2048);
    const LossHyper h = nn.config.hyper;
    const auto g = flatten(loss_and_grad(batch, p, h).grad);
    const auto theta = flatten(p);
    Philox r = Philox::derive(data_seed, 0x6772);
    int bad = 0;
    double worst = 0.0;
    for (std::size_t k = 0; k < 100; ++k) {
      // Every coordinate once, then random picks.
      const std::size_t i = theta.size() <= 100 && k < theta.size() ? k : r.below(theta.size());
      const double step = 1e-6 * std::max(1.0, std::abs(theta[i]));
      auto loss_at = [&](double v) {
        auto t = theta;
        t[i] = v;
        NetParams q = p;
        unflatten(q, t);
        return loss_and_grad(batch, q, h, false).terms.total;
      };
      const double fd = (loss_at(theta[i] + step) - loss_at(theta[i] - step)) / (2 * step);
      const double scale = std::max(std::abs(fd), std::abs(g[i]));
      const double rel = std::abs(g[i] - fd) / std::max(scale, kGradAbsFloor / kGradRelTol);
      worst = std::max(worst, rel);
      if (rel > kGradRelTol) ++bad;
    }
    o.check(bad == 0, "100 coordinates of " + std::to_string(theta.size()) + ", worst relative mismatch " + fmt(worst));
    done(7, "analytic gradient vs central differences", o);
  }

  // 8. Exactness.
  {
    Outcome o;
    std::vector<Scheme> schemes;
    for (auto n : kClassicalSchemes) schemes.push_back(make_scheme(n));
    schemes.push_back(nn_s);
    Philox r = Philox::derive(data_seed, 0x6578);
    double worst_affine = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const double c0 = r.uniform(-5, 5), c1 = (k % 4 == 0) ? 0.0 : r.uniform(-3, 3);
      Stencil5 w{{c0 - 2 * c1, c0 - c1, c0, c0 + c1, c0 + 2 * c1}};
      for (const auto& s : schemes) {
        worst_affine = std::max(worst_affine, std::abs(s.minus(w) - (c0 + 0.5 * c1)) / std::max(1.0, std::abs(c0)));
        // The plus side reconstructs the left face of the centre cell.
        worst_affine = std::max(worst_affine, std::abs(s.plus(w) - (c0 - 0.5 * c1)) / std::max(1.0, std::abs(c0)));
      }
    }
    o.check(worst_affine <= kExactTol, "constant/affine data on all schemes, worst error " + fmt(worst_affine));
    double worst_quad = 0.0;
    for (int k = 0; k < 2000; ++k) {
      const long long a = static_cast<long long>(r.below(41)) - 20, b = static_cast<long long>(r.below(41)) - 20,
                      c = static_cast<long long>(r.below(41)) - 20;
      const Stencil3 st{quad_avg(a, b, c, -1).value(), quad_avg(a, b, c, 0).value(), quad_avg(a, b, c, 1).value()};
      const Frac face = Frac(a) + Frac(b, 2) + Frac(c, 4);
      worst_quad = std::max(worst_quad, std::abs(ideal3(st) - face.value()) / std::max(1.0, std::abs(face.value())));
    }
    o.check(worst_quad <= kExactTol, "quadratic cell averages on ideal3 vs exact rationals, worst " + fmt(worst_quad));
    done(8, "exactness suite", o);
  }

  // 9. Invariances.
  {
    Outcome o;
    Philox r = Philox::derive(data_seed, 0x696E);
    bool shift_exact = true;
    double convex = 0.0;
    bool idempotent = true;
    for (int k = 0; k < 20000; ++k) {
      // Dyadic data and shifts keep the differences exact.
      auto dy = [&] { return std::ldexp(static_cast<double>(r.below(1 << 20)) - (1 << 19), -16); };
      const Stencil3 s{dy(), dy(), dy()};
      const double shift = std::ldexp(static_cast<double>(r.below(1 << 10)), -4);
      const auto w = forward(*net, s);
      const auto ws = forward(*net, s.shifted(shift));
      shift_exact = shift_exact && w.w0 == ws.w0 && w.w1 == ws.w1;
      convex = std::max({convex, std::abs(w.w0 + w.w1 - 1.0), -std::min(w.w0, 0.0), -std::min(w.w1, 0.0)});
      const auto f1 = eno_filter(w, net->c_eno);
      const auto f2 = eno_filter(f1, net->c_eno);
      idempotent = idempotent && f1.w0 == f2.w0 && f1.w1 == f2.w1;
    }
    o.check(shift_exact, "nn weights unchanged under constant shifts (20000 dyadic stencils)");
    o.check(convex <= kConvexTol, "weights convex, worst deviation " + fmt(convex));
    o.check(idempotent, "ENO filter idempotent");
    double drift = 0.0;
    std::vector<Scheme> schemes;
    for (auto n : kClassicalSchemes) schemes.push_back(make_scheme(n));
    schemes.push_back(nn_s);
    for (const auto* prob : {"advection-cosine", "advection-sigmoid"}) {
      const Problem p = make_problem(prob);
      const GridSpec g = make_grid(p, 256);
      const double m0 = mass(initial_averages(p, g), g.dx());
      for (const auto& s : schemes) drift = std::max(drift, std::abs(mass(runs.get(prob, s, 256).final_state, g.dx()) - m0));
    }
    o.check(drift <= kMassDrift, "periodic mass drift over T=5 runs " + fmt(drift));
    done(9, "invariance suite", o);
  }

  // 10. ADR.
  {
    Outcome o;
    std::vector<Scheme> schemes;
    for (auto n : kClassicalSchemes) schemes.push_back(make_scheme(n));
    schemes.push_back(nn_s);
    const auto modes = adr_modes(kDefaultAdrNx, 64);
    std::vector<std::pair<std::string, std::vector<ADRPoint>>> curves;
    double worst = -1e300;
    for (const auto& s : schemes) {
      curves.emplace_back(s.name(), adr(s, modes, kDefaultAdrNx));
      for (const auto& pt : curves.back().second) worst = std::max(worst, pt.valid ? pt.dissipation : 1e300);
    }
    emit_report((fs::path(out_dir) / "adr.csv").string(), adr_report(curves));
    o.check(worst <= kAdrDissipation, "max dissipation over all schemes and wavenumbers " + fmt(worst));
    const auto& w3 = curves[0].second;
    const auto& nnc = curves.back().second;
    int in_band = 0, better = 0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      if (w3[i].kappa_dx < kAdrBandLo || w3[i].kappa_dx > kAdrBandHi) continue;
      ++in_band;
      if (std::abs(nnc[i].dissipation) < std::abs(w3[i].dissipation)) ++better;
    }
    o.check(in_band > 0 && better == in_band,
            "nn less dissipative than weno3-js at " + std::to_string(better) + "/" + std::to_string(in_band) +
                " wavenumbers in [2, 3]");
    done(10, "approximate dispersion relation", o);
  }

  // 11. Accounting.
  {
    Outcome o;
    const std::size_t n = count_params(nn.params);
    const auto fl = count_flops(nn.params);
    o.notes.push_back("     parameters: " + std::to_string(n) +
                      " (every trainable scalar: 4 feature rationals x 7, per hidden layer W + b + one shared rational"
                      " x 7, head W + b); reference figure " +
                      std::to_string(kReferenceParams) + ", not reproducible under any counting we found");
    o.notes.push_back("     FLOPs per face: " + std::to_string(fl.total()) +
                      " (add/sub/mul/div = 1, exp = 10; no match to the reference count expected)");
    o.check(n >= kParamsLo && n <= kParamsHi, "parameter count " + std::to_string(n) + " in [90, 125]");
    done(11, "parameter and FLOP accounting", o);
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  std::cout << "acceptance: " << (11 - failures) << "/11 criteria passed in " << fmt(secs) << " s\n";
  return 0;
}
