#ifndef RWENO_TRAIN_HPP_
#define RWENO_TRAIN_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <mutex>
#include <thread>
#include <tuple>
#include <vector>

#include "rweno/error.hpp"
#include "rweno/funcspace.hpp"
#include "rweno/ratnet.hpp"
#include "rweno/rng.hpp"
#include "rweno/scheme.hpp"

namespace rweno {

struct LossHyper {
  double alpha = 0.01;
  double beta_d = 0.1;
  double beta_w = 1e-6;
  double eps_gamma = 1e-15;

  void validate() const {
    if (!(alpha >= 0.0 && beta_d >= 0.0 && beta_w >= 0.0)) {
      throw ConfigError("loss hyperparameters alpha, beta_d, beta_w must be non-negative");
    }
    if (!(eps_gamma > 0.0)) {
      throw ConfigError("eps_gamma must be positive");
    }
  }
};

/// Local smoothness weight in [0, 1]: |second difference| over the sum of
/// first differences.
inline double gamma(const Stencil3& s, double eps_gamma = 1e-15) {
  return std::abs(s.m1 - 2.0 * s.c + s.p1) / (std::abs(s.c - s.m1) + std::abs(s.c - s.p1) + eps_gamma);
}

struct LossTerms {
  double total = 0.0;
  double recon = 0.0;
  double dev = 0.0;
  double l2 = 0.0;
};

struct LossResult {
  LossTerms terms;
  NetParams grad;
  std::optional<std::size_t> bad_sample;  // index of the first non-finite contribution
};

namespace detail {

// Activations of one forward pass, kept for the backward sweep.
struct ForwardTape {
  FeatureVec delta{};
  FeatureVec alpha{};
  FeatureVec a0{};
  double norm = 0.0;
  bool zero_features = false;
  std::vector<std::array<double, kMaxWidth>> pre;   // per hidden layer
  std::vector<std::array<double, kMaxWidth>> post;  // post[0] = a0
  std::array<double, 2> logit{};
  Weights2 w;
};

inline void forward_tape(const NetParams& p, const Stencil3& s, ForwardTape& t) {
  t.delta = delta_features(s);
  double sq = 0.0;
  for (int j = 0; j < kFeatureCount; ++j) {
    t.alpha[j] = p.feat[j](t.delta[j]);
    sq += t.alpha[j] * t.alpha[j];
  }
  t.norm = std::sqrt(sq);
  t.zero_features = !(t.norm >= kFeatureNormFloor);
  t.post.resize(p.layers.size() + 1);
  t.pre.resize(p.layers.size());
  auto& a0 = t.post[0];
  for (int j = 0; j < kFeatureCount; ++j) {
    t.a0[j] = t.zero_features ? 0.0 : t.alpha[j] / t.norm;
    a0[static_cast<std::size_t>(j)] = t.a0[j];
  }
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const auto& lin = p.layers[l].lin;
    const auto& in = t.post[l];
    for (int r = 0; r < lin.out; ++r) {
      double acc = lin.b[static_cast<std::size_t>(r)];
      for (int c = 0; c < lin.in; ++c) {
        acc += lin.w(r, c) * in[static_cast<std::size_t>(c)];
      }
      t.pre[l][static_cast<std::size_t>(r)] = acc;
      t.post[l + 1][static_cast<std::size_t>(r)] = p.layers[l].act(acc);
    }
  }
  const auto& last = t.post.back();
  for (int r = 0; r < 2; ++r) {
    double acc = p.head.b[static_cast<std::size_t>(r)];
    for (int c = 0; c < p.head.in; ++c) {
      acc += p.head.w(r, c) * last[static_cast<std::size_t>(c)];
    }
    t.logit[static_cast<std::size_t>(r)] = acc;
  }
  t.w = softmax2(t.logit[0], t.logit[1]);
}

// Accumulates dL/dtheta into g given dL/domega.
inline void backward_tape(const NetParams& p, const ForwardTape& t, double g0, double g1, NetParams& g) {
  // softmax
  const double dot = t.w.w0 * g0 + t.w.w1 * g1;
  const std::array<double, 2> dlogit{t.w.w0 * (g0 - dot), t.w.w1 * (g1 - dot)};

  std::array<double, kMaxWidth> da{}, dz{};
  const auto& last = t.post.back();
  for (int r = 0; r < 2; ++r) {
    const double d = dlogit[static_cast<std::size_t>(r)];
    g.head.b[static_cast<std::size_t>(r)] += d;
    for (int c = 0; c < p.head.in; ++c) {
      g.head.w(r, c) += d * last[static_cast<std::size_t>(c)];
      da[static_cast<std::size_t>(c)] += d * p.head.w(r, c);
    }
  }

  for (std::size_t l = p.layers.size(); l-- > 0;) {
    const auto& layer = p.layers[l];
    const auto& lin = layer.lin;
    auto& glayer = g.layers[l];
    for (int r = 0; r < lin.out; ++r) {
      const double z = t.pre[l][static_cast<std::size_t>(r)];
      const double upstream = da[static_cast<std::size_t>(r)];
      dz[static_cast<std::size_t>(r)] = upstream * layer.act.eval_with_slope(z).second;
      layer.act.accumulate_grad(z, upstream, glayer.act);
    }
    std::array<double, kMaxWidth> prev{};
    const auto& in = t.post[l];
    for (int r = 0; r < lin.out; ++r) {
      const double d = dz[static_cast<std::size_t>(r)];
      glayer.lin.b[static_cast<std::size_t>(r)] += d;
      for (int c = 0; c < lin.in; ++c) {
        glayer.lin.w(r, c) += d * in[static_cast<std::size_t>(c)];
        prev[static_cast<std::size_t>(c)] += d * lin.w(r, c);
      }
    }
    da = prev;
  }

  if (t.zero_features) {
    return;
  }
  // a0 = alpha / |alpha|  =>  dalpha = (da0 - a0 (a0 . da0)) / |alpha|
  double proj = 0.0;
  for (int j = 0; j < kFeatureCount; ++j) {
    proj += t.a0[j] * da[static_cast<std::size_t>(j)];
  }
  for (int j = 0; j < kFeatureCount; ++j) {
    const double dalpha = (da[static_cast<std::size_t>(j)] - t.a0[j] * proj) / t.norm;
    p.feat[j].accumulate_grad(t.delta[j], dalpha, g.feat[j]);
  }
}

}  // namespace detail

/// Training loss (ENO layer inactive) and its gradient:
///   L = mean(gamma^alpha (u_nn - u)^2) + beta_d mean((1 - gamma^alpha) |w - d|^2)
///       + beta_w |theta|^2
/// The batch is given by indices into `samples`.
inline LossResult loss_and_grad(std::span<const TrainSample> samples, std::span<const std::size_t> batch,
                                const NetParams& params, const LossHyper& hyper, bool want_grad = true) {
  if (batch.empty()) {
    throw ConfigError("loss_and_grad: empty batch");
  }
  LossResult out{{}, NetParams::zeros(params.arch), std::nullopt};
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  const Weights2 d = kIdealWeights3<double>;
  detail::ForwardTape tape;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const TrainSample& smp = samples[batch[k]];
    detail::forward_tape(params, smp.ubar, tape);
    const double gpow = std::pow(gamma(smp.ubar, hyper.eps_gamma), hyper.alpha);
    const auto [u0, u1] = interpolants3(smp.ubar);
    const double resid = tape.w.w0 * u0 + tape.w.w1 * u1 - smp.target;
    const double e0 = tape.w.w0 - d.w0;
    const double e1 = tape.w.w1 - d.w1;
    const double lr = gpow * resid * resid;
    const double ld = (1.0 - gpow) * (e0 * e0 + e1 * e1);
    if (!std::isfinite(lr) || !std::isfinite(ld)) {
      out.bad_sample = batch[k];
      return out;
    }
    out.terms.recon += lr * inv_n;
    out.terms.dev += ld * inv_n;
    if (want_grad) {
      const double cr = 2.0 * gpow * resid * inv_n;
      const double cd = 2.0 * hyper.beta_d * (1.0 - gpow) * inv_n;
      detail::backward_tape(params, tape, cr * u0 + cd * e0, cr * u1 + cd * e1, out.grad);
    }
  }
  double sq = 0.0;
  for_each_param(params, [&](const double& x) { sq += x * x; });
  out.terms.l2 = hyper.beta_w * sq;
  out.terms.total = out.terms.recon + hyper.beta_d * out.terms.dev + out.terms.l2;
  if (want_grad) {
    std::vector<double> theta = flatten(params);
    std::vector<double> gflat = flatten(out.grad);
    for (std::size_t i = 0; i < theta.size(); ++i) {
      gflat[i] += 2.0 * hyper.beta_w * theta[i];
    }
    unflatten(out.grad, gflat);
  }
  if (!std::isfinite(out.terms.total)) {
    out.bad_sample = batch.front();
  }
  return out;
}

inline LossResult loss_and_grad(std::span<const TrainSample> samples, const NetParams& params,
                                const LossHyper& hyper, bool want_grad = true) {
  std::vector<std::size_t> all(samples.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return loss_and_grad(samples, all, params, hyper, want_grad);
}

struct TrainConfig {
  double peak_lr = 5e-4;
  int warmup_steps = 1000;
  int total_steps = 20000;
  int batch_size = 1024;
  std::uint64_t seed = 0;
  LossHyper hyper;
  std::vector<int> arch{4, 4, 4};
  double c_eno = kDefaultCEno;

  void validate() const {
    hyper.validate();
    if (!(peak_lr > 0.0)) throw ConfigError("peak_lr must be positive");
    if (total_steps < 0) throw ConfigError("total_steps must be non-negative");
    if (warmup_steps < 0 || (total_steps > 0 && warmup_steps >= total_steps)) {
      throw ConfigError("warmup_steps must lie in [0, total_steps)");
    }
    if (batch_size <= 0) throw ConfigError("batch_size must be positive");
  }
};

/// Linear warmup to peak_lr, then cosine decay to zero at total_steps.
inline double lr_schedule(int step, const TrainConfig& cfg) {
  if (step < cfg.warmup_steps) {
    return cfg.peak_lr * static_cast<double>(step) / cfg.warmup_steps;
  }
  const double span = static_cast<double>(cfg.total_steps - cfg.warmup_steps);
  const double frac = span > 0.0 ? (step - cfg.warmup_steps) / span : 1.0;
  return 0.5 * cfg.peak_lr * (1.0 + std::cos(std::numbers::pi * std::min(frac, 1.0)));
}

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  long step = 0;
  long skipped = 0;

  explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEps = 1e-8;

/// One Adam update in place. A non-finite gradient skips the step.
/// Returns false when skipped.
inline bool adam_step(std::span<double> params, std::span<const double> grads, AdamState& st, double lr) {
  if (st.m.size() != params.size() || grads.size() != params.size()) {
    throw ConfigError("adam_step: state/parameter size mismatch");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) {
      ++st.skipped;
      return false;
    }
  }
  ++st.step;
  const double c1 = 1.0 - std::pow(kAdamBeta1, static_cast<double>(st.step));
  const double c2 = 1.0 - std::pow(kAdamBeta2, static_cast<double>(st.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    st.m[i] = kAdamBeta1 * st.m[i] + (1.0 - kAdamBeta1) * grads[i];
    st.v[i] = kAdamBeta2 * st.v[i] + (1.0 - kAdamBeta2) * grads[i] * grads[i];
    const double mhat = st.m[i] / c1;
    const double vhat = st.v[i] / c2;
    params[i] -= lr * mhat / (std::sqrt(vhat) + kAdamEps);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Interpolation error and order estimation

/// RMSE of the minus-side reconstruction at the nx faces x_{a+(i+1)dx}.
/// Ghost cells hold exact averages of the analytic extension of f, so no
/// face is polluted by an artificial wrap.
inline double interpolation_error(const Scheme& scheme, const FunctionSpec& f, int nx) {
  if (nx < 4) {
    throw ConfigError("interpolation_error: nx must be at least 4");
  }
  const int halo = 3;
  const double dx = f.length() / nx;
  std::vector<double> avg(static_cast<std::size_t>(nx + 2 * halo));
  for (int i = -halo; i < nx + halo; ++i) {
    const double lo = f.a + i * dx;
    const double hi = (i + 1 == nx) ? f.b : f.a + (i + 1) * dx;
    avg[static_cast<std::size_t>(i + halo)] = f.mean(lo, hi);
  }
  double sq = 0.0;
  for (int i = 0; i < nx; ++i) {
    const std::size_t c = static_cast<std::size_t>(i + halo);
    const Stencil5 w{{avg[c - 2], avg[c - 1], avg[c], avg[c + 1], avg[c + 2]}};
    const double x = (i + 1 == nx) ? f.b : f.a + (i + 1) * dx;
    const double e = scheme.minus(w) - f.value(x);
    sq += e * e;
  }
  return std::sqrt(sq / nx);
}

struct OrderFit {
  double slope = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::size_t> excluded;  // indices of non-positive errors
};

/// Least-squares slope of log(error) against log(dx). Non-positive errors
/// are excluded and reported.
inline OrderFit convergence_order(std::span<const std::pair<double, double>> dx_error) {
  if (dx_error.size() < 3) {
    throw ConfigError("convergence_order needs at least 3 points");
  }
  OrderFit fit;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < dx_error.size(); ++i) {
    const auto [dx, err] = dx_error[i];
    if (!(err > 0.0) || !(dx > 0.0)) {
      fit.excluded.push_back(i);
      continue;
    }
    lx.push_back(std::log(dx));
    ly.push_back(std::log(err));
  }
  if (lx.size() < 2) {
    return fit;
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  fit.slope = sxy / sxx;
  return fit;
}

inline const std::vector<int>& default_eval_grids() {
  static const std::vector<int> grids{16, 32, 64, 128, 256, 512, 1024};
  return grids;
}

struct GridError {
  int nx = 0;
  double err_g = 0.0;
  double err_h = 0.0;
};

/// Interpolation errors on g and h for every grid plus the fitted orders.
struct OrderMetrics {
  std::vector<GridError> grids;
  double order_g = std::numeric_limits<double>::quiet_NaN();
  double order_h = std::numeric_limits<double>::quiet_NaN();
};

inline OrderMetrics evaluate_orders(const Scheme& scheme, const std::vector<int>& grids = default_eval_grids()) {
  const FunctionSpec g = eval_function(EvalFunction::SinCubed);
  const FunctionSpec h = eval_function(EvalFunction::SineStep);
  OrderMetrics m;
  std::vector<std::pair<double, double>> pg, ph;
  for (int nx : grids) {
    const GridError e{nx, interpolation_error(scheme, g, nx), interpolation_error(scheme, h, nx)};
    m.grids.push_back(e);
    pg.emplace_back(g.length() / nx, e.err_g);
    ph.emplace_back(h.length() / nx, e.err_h);
  }
  m.order_g = convergence_order(pg).slope;
  m.order_h = convergence_order(ph).slope;
  return m;
}

// ---------------------------------------------------------------------------
// Training and selection

enum class Criterion { ConvSineStep, ConvSinCubed, LeastReconLoss, LeastDevLoss };

inline std::string_view criterion_name(Criterion c) {
  switch (c) {
    case Criterion::ConvSineStep: return "conv-sine-step";
    case Criterion::ConvSinCubed: return "conv-sin-cubed";
    case Criterion::LeastReconLoss: return "least-recon-loss";
    case Criterion::LeastDevLoss: return "least-dev-loss";
  }
  return "?";
}

inline Criterion parse_criterion(std::string_view s) {
  for (Criterion c : {Criterion::ConvSineStep, Criterion::ConvSinCubed, Criterion::LeastReconLoss,
                      Criterion::LeastDevLoss}) {
    if (criterion_name(c) == s) {
      return c;
    }
  }
  throw ConfigError("unknown selection criterion '" + std::string(s) +
                    "'; valid: conv-sine-step, conv-sin-cubed, least-recon-loss, least-dev-loss");
}

/// The per-model numbers selection works on; one manifest row.
struct ModelSummary {
  int id = 0;
  double alpha = 0.0;
  double beta_d = 0.0;
  double peak_lr = 0.0;
  double order_g = std::numeric_limits<double>::quiet_NaN();
  double order_h = std::numeric_limits<double>::quiet_NaN();
  double recon_loss = std::numeric_limits<double>::quiet_NaN();
  double dev_loss = std::numeric_limits<double>::quiet_NaN();
  std::string criterion;  // set on the selected row
};

struct TrainLogRow {
  int step = 0;
  double lr = 0.0;
  LossTerms loss;
};

struct TrainedModel {
  NetParams params;
  TrainConfig config;
  OrderMetrics metrics;
  ModelSummary summary;
  std::vector<TrainLogRow> log;
  long skipped_steps = 0;
};

/// Fisher-Yates with a Philox stream, portable across standard libraries.
inline void shuffle_indices(std::vector<std::size_t>& idx, Philox& rng) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::swap(idx[i - 1], idx[rng.below(i)]);
  }
}

inline constexpr double kDivergenceLoss = 1e6;

struct TrainOptions {
  int log_every = 100;
  std::function<void(const TrainLogRow&)> on_log;  // optional progress sink
};

/// Adam over seeded mini-batches. Batches are drawn from a fresh permutation
/// each epoch; an incomplete trailing batch is dropped.
inline TrainedModel train_model(std::span<const TrainSample> data, const TrainConfig& cfg,
                                const TrainOptions& opts = {}) {
  cfg.validate();
  if (data.empty()) {
    throw ConfigError("train_model: empty dataset");
  }
  Philox init_rng = Philox::derive(cfg.seed, 0x1417);
  TrainedModel model;
  model.config = cfg;
  model.params = init_params(cfg.arch, init_rng);
  model.params.c_eno = cfg.c_eno;

  const std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(cfg.batch_size), data.size());
  const std::size_t per_epoch = data.size() / batch;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  AdamState adam(count_params(model.params));
  std::vector<double> theta = flatten(model.params);

  for (int step = 0; step < cfg.total_steps; ++step) {
    const std::size_t pos = static_cast<std::size_t>(step) % per_epoch;
    if (pos == 0) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      Philox shuf = Philox::derive(cfg.seed, 0x5E1F, static_cast<std::uint64_t>(step) / per_epoch);
      shuffle_indices(order, shuf);
    }
    const std::span<const std::size_t> idx(order.data() + pos * batch, batch);
    LossResult res = loss_and_grad(data, idx, model.params, cfg.hyper);
    if (res.bad_sample) {
      ++adam.skipped;
      continue;
    }
    if (res.terms.total > kDivergenceLoss) {
      std::ostringstream os;
      os << "training diverged at step " << step << " (loss " << res.terms.total << ")";
      throw RuntimeFailure(os.str());
    }
    const double lr = lr_schedule(step, cfg);
    if (step % opts.log_every == 0 || step + 1 == cfg.total_steps) {
      TrainLogRow row{step, lr, res.terms};
      model.log.push_back(row);
      if (opts.on_log) {
        opts.on_log(row);
      }
    }
    const std::vector<double> g = flatten(res.grad);
    if (adam_step(theta, g, adam, lr)) {
      unflatten(model.params, theta);
    }
  }
  model.skipped_steps = adam.skipped;
  model.metrics = evaluate_orders(nn_scheme(std::make_shared<const NetParams>(model.params)));
  model.summary.alpha = cfg.hyper.alpha;
  model.summary.beta_d = cfg.hyper.beta_d;
  model.summary.peak_lr = cfg.peak_lr;
  model.summary.order_g = model.metrics.order_g;
  model.summary.order_h = model.metrics.order_h;
  return model;
}

/// Fills the held-out reconstruction and deviation losses (ENO inactive).
inline void score_heldout(TrainedModel& model, std::span<const TrainSample> heldout) {
  const LossResult r = loss_and_grad(heldout, model.params, model.config.hyper, false);
  model.summary.recon_loss = r.terms.recon;
  model.summary.dev_loss = r.terms.dev;
}

namespace detail {
inline double criterion_key(const ModelSummary& m, Criterion c) {
  double k = 0.0;
  switch (c) {
    case Criterion::ConvSineStep: k = std::abs(m.order_h - 3.0); break;
    case Criterion::ConvSinCubed: k = std::abs(m.order_g - 3.0); break;
    case Criterion::LeastReconLoss: k = m.recon_loss; break;
    case Criterion::LeastDevLoss: k = m.dev_loss; break;
  }
  return std::isnan(k) ? std::numeric_limits<double>::infinity() : k;
}
inline double nan_last(double x) { return std::isnan(x) ? std::numeric_limits<double>::infinity() : x; }
}  // namespace detail

/// Index of the model preferred by `c`. Ties fall to the lower
/// reconstruction loss, then the lower model id.
inline std::size_t select_model(std::span<const ModelSummary> models, Criterion c) {
  if (models.empty()) {
    throw ConfigError("select_model: no models to choose from");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < models.size(); ++i) {
    const auto& a = models[i];
    const auto& b = models[best];
    const auto ka = std::make_tuple(detail::criterion_key(a, c), detail::nan_last(a.recon_loss), a.id);
    const auto kb = std::make_tuple(detail::criterion_key(b, c), detail::nan_last(b.recon_loss), b.id);
    if (ka < kb) {
      best = i;
    }
  }
  return best;
}

inline std::size_t select_model(std::span<const TrainedModel> models, Criterion c) {
  std::vector<ModelSummary> s;
  for (const auto& m : models) {
    s.push_back(m.summary);
  }
  return select_model(std::span<const ModelSummary>(s), c);
}

/// Cartesian product alpha x beta_d x peak_lr on top of `base`, alpha
/// outermost.
inline std::vector<TrainConfig> sweep_grid(const TrainConfig& base, std::span<const double> alphas,
                                           std::span<const double> betas, std::span<const double> lrs) {
  std::vector<TrainConfig> out;
  for (double alpha : alphas) {
    for (double beta_d : betas) {
      for (double lr : lrs) {
        TrainConfig c = base;
        c.hyper.alpha = alpha;
        c.hyper.beta_d = beta_d;
        c.peak_lr = lr;
        out.push_back(c);
      }
    }
  }
  return out;
}

inline constexpr std::array<double, 4> kSweepAlphas{0.01, 0.03, 0.1, 0.3};
inline constexpr std::array<double, 3> kSweepBetas{0.03, 0.1, 0.3};
inline constexpr std::array<double, 3> kSweepLrs{5e-4, 1e-4, 1e-5};

/// The 36-point default sweep.
inline std::vector<TrainConfig> default_sweep(const TrainConfig& base) {
  return sweep_grid(base, kSweepAlphas, kSweepBetas, kSweepLrs);
}

/// Trains every configuration on up to `jobs` worker threads. Results are
/// returned in input order with ids 0..n-1 regardless of scheduling.
inline std::vector<TrainedModel> train_sweep(std::span<const TrainSample> data, std::span<const TrainSample> heldout,
                                             std::span<const TrainConfig> configs, int jobs = 1) {
  std::vector<std::optional<TrainedModel>> slots(configs.size());
  std::vector<std::string> errors(configs.size());
  std::size_t next = 0;
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::lock_guard lock(mu);
        if (next >= configs.size()) return;
        i = next++;
      }
      try {
        TrainedModel m = train_model(data, configs[i]);
        score_heldout(m, heldout);
        m.summary.id = static_cast<int>(i);
        slots[i] = std::move(m);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(configs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  std::vector<TrainedModel> out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (!slots[i]) {
      throw RuntimeFailure("sweep configuration " + std::to_string(i) + " failed: " + errors[i]);
    }
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Training log and model manifest

inline constexpr std::string_view kTrainLogHeader = "step,lr,loss,loss_r,loss_d,loss_l2";
inline constexpr std::string_view kManifestHeader =
    "model_id,alpha,beta_d,peak_lr,order_g,order_h,recon_loss,dev_loss,criterion";

inline void write_train_log(std::ostream& os, const std::vector<TrainLogRow>& rows) {
  os << kTrainLogHeader << '\n';
  for (const auto& r : rows) {
    os << r.step << ',' << format_real(r.lr) << ',' << format_real(r.loss.total) << ','
       << format_real(r.loss.recon) << ',' << format_real(r.loss.dev) << ',' << format_real(r.loss.l2) << '\n';
  }
}

inline void write_manifest(std::ostream& os, std::span<const ModelSummary> rows) {
  os << kManifestHeader << '\n';
  for (const auto& r : rows) {
    os << r.id << ',' << format_real(r.alpha) << ',' << format_real(r.beta_d) << ',' << format_real(r.peak_lr)
       << ',' << format_real(r.order_g) << ',' << format_real(r.order_h) << ',' << format_real(r.recon_loss)
       << ',' << format_real(r.dev_loss) << ',' << r.criterion << '\n';
  }
}

inline std::vector<ModelSummary> read_manifest(std::istream& is, const std::string& label = "manifest") {
  std::string line;
  if (!std::getline(is, line) || line != kManifestHeader) {
    throw ConfigError(label + ": missing or unexpected header");
  }
  std::vector<ModelSummary> out;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() == 8) cells.emplace_back();
    if (cells.size() != 9) {
      throw ConfigError(label + ": row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                        " fields, expected 9");
    }
    try {
      ModelSummary m;
      m.id = std::stoi(cells[0]);
      m.alpha = std::stod(cells[1]);
      m.beta_d = std::stod(cells[2]);
      m.peak_lr = std::stod(cells[3]);
      m.order_g = std::stod(cells[4]);
      m.order_h = std::stod(cells[5]);
      m.recon_loss = std::stod(cells[6]);
      m.dev_loss = std::stod(cells[7]);
      m.criterion = cells[8];
      out.push_back(m);
    } catch (const std::exception&) {
      throw ConfigError(label + ": malformed number in row " + std::to_string(row));
    }
  }
  return out;
}

}  // namespace rweno

#endif  // RWENO_TRAIN_HPP_
