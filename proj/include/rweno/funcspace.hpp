#ifndef RWENO_FUNCSPACE_HPP_
#define RWENO_FUNCSPACE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rweno/error.hpp"
#include "rweno/reconstruct.hpp"
#include "rweno/rng.hpp"

namespace rweno {

// Analytical function families with closed-form antiderivatives: the five
// training families plus the two model-selection functions.
enum class Family { Polynomial, Step, SawJump, Sine, Tanh, SineCubed, SineStep };

inline constexpr std::array<Family, 5> kTrainingFamilies{
    Family::Polynomial, Family::Step, Family::SawJump, Family::Sine, Family::Tanh};

inline std::string_view family_name(Family f) {
  switch (f) {
    case Family::Polynomial: return "polynomial";
    case Family::Step: return "step";
    case Family::SawJump: return "saw-jump";
    case Family::Sine: return "sine";
    case Family::Tanh: return "tanh";
    case Family::SineCubed: return "sin-cubed";
    case Family::SineStep: return "sine-step";
  }
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (Family f : {Family::Polynomial, Family::Step, Family::SawJump, Family::Sine, Family::Tanh,
                   Family::SineCubed, Family::SineStep}) {
    if (family_name(f) == name) {
      return f;
    }
  }
  throw ConfigError("unknown function family '" + std::string(name) + "'");
}

/// One instance of an analytical family.
///
/// Parameter layout by family:
///   Polynomial  c0..c3 (ascending degree)
///   Step        u_l, u_r (jump at 0.5)
///   SawJump     sign (+1 or -1), delta (jump at 0.5)
///   Sine, Tanh  wavenumber / steepness k
///   SineCubed, SineStep  none
struct FunctionSpec {
  Family family = Family::Polynomial;
  std::array<double, 4> params{};
  double a = -1.0;
  double b = 1.0;

  double length() const { return b - a; }

  // Pointwise value. At a jump the left limit is returned.
  double value(double x) const {
    switch (family) {
      case Family::Polynomial:
        return ((params[3] * x + params[2]) * x + params[1]) * x + params[0];
      case Family::Step:
        return x <= 0.5 ? params[0] : params[1];
      case Family::SawJump:
        return params[0] * x + (x > 0.5 ? params[1] : 0.0);
      case Family::Sine:
        return std::sin(params[0] * std::numbers::pi * x);
      case Family::Tanh:
        return std::tanh(params[0] * x);
      case Family::SineCubed: {
        const double s = std::sin(std::numbers::pi * x);
        return s * s * s;
      }
      case Family::SineStep:
        return std::sin(2.0 * std::numbers::pi * x) + (x > 0.5 ? 1.0 : 0.0);
    }
    return 0.0;
  }

  // Mean over [lo, hi]. Trigonometric families use the product form of the
  // antiderivative difference, which avoids cancellation on fine cells.
  double mean(double lo, double hi) const {
    const double h = hi - lo;
    const double mid = 0.5 * (lo + hi);
    switch (family) {
      case Family::Polynomial: {
        auto prim = [&](double x) {
          return (((params[3] / 4.0 * x + params[2] / 3.0) * x + params[1] / 2.0) * x + params[0]) * x;
        };
        return (prim(hi) - prim(lo)) / h;
      }
      case Family::Step:
        return piecewise_mean(lo, hi, params[0], params[1]);
      case Family::SawJump:
        return params[0] * mid + params[1] * overlap(lo, hi, 0.5, INFINITY) / h;
      case Family::Sine:
        return sin_mean(params[0] * std::numbers::pi, mid, h);
      case Family::Tanh: {
        const double k = params[0];
        return (log_cosh(k * hi) - log_cosh(k * lo)) / (k * h);
      }
      case Family::SineCubed:
        // sin^3(t) = (3 sin t - sin 3t) / 4
        return 0.75 * sin_mean(std::numbers::pi, mid, h) - 0.25 * sin_mean(3.0 * std::numbers::pi, mid, h);
      case Family::SineStep:
        return sin_mean(2.0 * std::numbers::pi, mid, h) + overlap(lo, hi, 0.5, INFINITY) / h;
    }
    return 0.0;
  }

  // Exact integral over [lo, hi].
  double integral(double lo, double hi) const { return mean(lo, hi) * (hi - lo); }

  static double sin_mean(double k, double mid, double h) {
    // (cos(k lo) - cos(k hi)) / (k h) = sin(k mid) * sin(k h/2) / (k h/2)
    const double half = 0.5 * k * h;
    return std::sin(k * mid) * std::sin(half) / half;
  }

  static double log_cosh(double y) {
    const double ay = std::abs(y);
    return ay + std::log1p(std::exp(-2.0 * ay)) - std::numbers::ln2;
  }

  static double overlap(double lo, double hi, double from, double to) {
    return std::max(0.0, std::min(hi, to) - std::max(lo, from));
  }

  static double piecewise_mean(double lo, double hi, double left, double right) {
    const double h = hi - lo;
    return (left * overlap(lo, hi, -INFINITY, 0.5) + right * overlap(lo, hi, 0.5, INFINITY)) / h;
  }
};

namespace detail {
inline void check_inside(const FunctionSpec& f, double lo, double hi) {
  // Cell edges computed as a + i*dx may overshoot b by an ulp or two.
  const double slack = 1e-12 * f.length();
  if (!(lo >= f.a - slack && hi <= f.b + slack)) {
    std::ostringstream os;
    os << "interval [" << lo << ", " << hi << "] outside domain [" << f.a << ", " << f.b << "] of "
       << family_name(f.family);
    throw ConfigError(os.str());
  }
}
}  // namespace detail

inline double cell_average(const FunctionSpec& f, double lo, double hi) {
  if (!(lo < hi)) {
    throw ConfigError("cell_average requires lo < hi");
  }
  detail::check_inside(f, lo, hi);
  return f.mean(lo, hi);
}

inline double interface_value(const FunctionSpec& f, double x) {
  detail::check_inside(f, x, x);
  return f.value(x);
}

inline FunctionSpec make_function(Family family, std::array<double, 4> params = {}) {
  FunctionSpec f{family, params, 0.0, 1.0};
  if (family == Family::Polynomial || family == Family::Tanh || family == Family::SineCubed) {
    f.a = -1.0;
  }
  return f;
}

/// Draws a random instance of a training family.
inline FunctionSpec sample_function(Family family, Philox& rng) {
  switch (family) {
    case Family::Polynomial: {
      std::array<double, 4> c{};
      for (double& ck : c) {
        ck = rng.uniform(-1.0, 1.0);
      }
      return make_function(family, c);
    }
    case Family::Step: {
      const double ul = rng.uniform(-1.0, 1.0);
      const double ur = rng.uniform(-1.0, 1.0);
      return make_function(family, {ul, ur});
    }
    case Family::SawJump: {
      const double sign = rng.bernoulli(0.5) ? -1.0 : 1.0;
      const double delta = rng.uniform(0.5, 1.0);
      return make_function(family, {sign, delta});
    }
    case Family::Sine:
      return make_function(family, {rng.uniform(2.0, 20.0)});
    case Family::Tanh:
      return make_function(family, {rng.uniform(5.0, 30.0)});
    default:
      throw ConfigError("family '" + std::string(family_name(family)) + "' is not a training family");
  }
}

enum class EvalFunction { SinCubed, SineStep };

/// Model-selection functions: g(x) = sin^3(pi x) on [-1,1] and the shifted
/// sine step h on [0,1].
inline FunctionSpec eval_function(EvalFunction which) {
  return which == EvalFunction::SinCubed ? make_function(Family::SineCubed)
                                         : make_function(Family::SineStep);
}

/// Exact cell averages on a uniform nx-cell partition of the domain.
inline std::vector<double> discretize(const FunctionSpec& f, int nx) {
  std::vector<double> avg(static_cast<std::size_t>(nx));
  const double dx = f.length() / nx;
  for (int i = 0; i < nx; ++i) {
    const double lo = f.a + i * dx;
    const double hi = (i + 1 == nx) ? f.b : f.a + (i + 1) * dx;
    avg[static_cast<std::size_t>(i)] = f.mean(lo, hi);
  }
  return avg;
}

/// Exact face values at x_{i+1/2}, i = 0..nx-1 (the last face is the right
/// domain end).
inline std::vector<double> face_values(const FunctionSpec& f, int nx) {
  std::vector<double> v(static_cast<std::size_t>(nx));
  const double dx = f.length() / nx;
  for (int i = 0; i < nx; ++i) {
    v[static_cast<std::size_t>(i)] = f.value(i + 1 == nx ? f.b : f.a + (i + 1) * dx);
  }
  return v;
}

/// Minus-side stencil of face i+1/2 with periodic wrap.
inline Stencil3 periodic_stencil(const std::vector<double>& avg, int i) {
  const int n = static_cast<int>(avg.size());
  auto at = [&](int j) { return avg[static_cast<std::size_t>((j % n + n) % n)]; };
  return {at(i - 1), at(i), at(i + 1)};
}

struct TrainSample {
  Stencil3 ubar;
  double target = 0.0;
  int nx = 0;
};

struct DatasetConfig {
  std::vector<int> nx_values{16, 32, 64, 128, 256, 512, 1024};
  int pairs_per_grid = 16384;
  std::uint64_t seed = 0;

  void validate() const {
    if (nx_values.empty()) {
      throw ConfigError("nx_values must not be empty");
    }
    if (pairs_per_grid <= 0) {
      throw ConfigError("pairs_per_grid must be positive, got " + std::to_string(pairs_per_grid));
    }
    for (int nx : nx_values) {
      if (nx < 3) {
        throw ConfigError("nx value " + std::to_string(nx) + " is too small (need >= 3)");
      }
      if (pairs_per_grid % nx != 0) {
        throw ConfigError("pairs_per_grid " + std::to_string(pairs_per_grid) +
                          " is not divisible by nx value " + std::to_string(nx));
      }
    }
  }
};

/// Appends the nx training pairs of one discretized function instance.
/// Targets are clipped into the range of the stencil.
inline void append_samples(const FunctionSpec& f, int nx, std::vector<TrainSample>& out) {
  const auto avg = discretize(f, nx);
  const auto faces = face_values(f, nx);
  for (int i = 0; i < nx; ++i) {
    const Stencil3 s = periodic_stencil(avg, i);
    const double lo = std::min({s.m1, s.c, s.p1});
    const double hi = std::max({s.m1, s.c, s.p1});
    out.push_back({s, std::clamp(faces[static_cast<std::size_t>(i)], lo, hi), nx});
  }
}

/// Deterministic training set: for every grid size, pairs_per_grid / nx
/// random function instances, each discretized on nx cells. Instance j of
/// grid g draws from its own Philox stream derived from (seed, g, j), and its
/// family is chosen uniformly among the training families.
inline std::vector<TrainSample> build_dataset(const DatasetConfig& cfg) {
  cfg.validate();
  std::vector<TrainSample> out;
  out.reserve(cfg.nx_values.size() * static_cast<std::size_t>(cfg.pairs_per_grid));
  for (std::size_t g = 0; g < cfg.nx_values.size(); ++g) {
    const int nx = cfg.nx_values[g];
    const int instances = cfg.pairs_per_grid / nx;
    for (int j = 0; j < instances; ++j) {
      Philox rng = Philox::derive(cfg.seed, static_cast<std::uint64_t>(nx), static_cast<std::uint64_t>(j));
      const Family fam = kTrainingFamilies[rng.below(kTrainingFamilies.size())];
      append_samples(sample_function(fam, rng), nx, out);
    }
  }
  return out;
}

inline constexpr std::string_view kDatasetHeader = "ubar_m1,ubar_0,ubar_p1,target,nx";

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_dataset(std::ostream& os, const std::vector<TrainSample>& samples) {
  os << kDatasetHeader << '\n';
  for (const auto& s : samples) {
    os << format_real(s.ubar.m1) << ',' << format_real(s.ubar.c) << ',' << format_real(s.ubar.p1) << ','
       << format_real(s.target) << ',' << s.nx << '\n';
  }
}

inline void write_dataset(const std::string& path, const std::vector<TrainSample>& samples) {
  std::ofstream os(path);
  if (!os) {
    throw ConfigError("cannot write dataset file '" + path + "'");
  }
  write_dataset(os, samples);
}

inline std::vector<TrainSample> read_dataset(std::istream& is, const std::string& label = "dataset") {
  std::string line;
  if (!std::getline(is, line) || line != kDatasetHeader) {
    throw ConfigError(label + ": missing or unexpected header (expected '" + std::string(kDatasetHeader) + "')");
  }
  std::vector<TrainSample> out;
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty()) {
      continue;
    }
    std::array<double, 4> v{};
    int nx = 0;
    char* p = line.data();
    char* end = nullptr;
    bool ok = true;
    for (double& x : v) {
      x = std::strtod(p, &end);
      ok = ok && end != p && *end == ',';
      p = end + 1;
    }
    if (ok) {
      nx = static_cast<int>(std::strtol(p, &end, 10));
      ok = end != p && *end == '\0' && nx > 0;
    }
    if (!ok) {
      throw ConfigError(label + ": malformed row " + std::to_string(row));
    }
    out.push_back({{v[0], v[1], v[2]}, v[3], nx});
  }
  return out;
}

inline std::vector<TrainSample> read_dataset(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot open dataset file '" + path + "'");
  }
  return read_dataset(is, path);
}

}  // namespace rweno

#endif  // RWENO_FUNCSPACE_HPP_
