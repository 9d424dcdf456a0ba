#ifndef RWENO_SOLVER_HPP_
#define RWENO_SOLVER_HPP_

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rweno/error.hpp"
#include "rweno/scheme.hpp"

namespace rweno {

enum class Equation { Advection, Burgers };
enum class InitKind { Cosine, Sigmoid, Riemann, Constant };
enum class Boundary { Periodic, Dirichlet };

struct GridSpec {
  int nx = 256;
  double a = 0.0;
  double b = 1.0;
  Boundary bc = Boundary::Periodic;
  double left = 0.0;   // Dirichlet values
  double right = 0.0;

  double dx() const { return (b - a) / nx; }
  double center(int i) const { return a + (i + 0.5) * dx(); }
  double edge(int j) const { return j == nx ? b : a + j * dx(); }
};

/// Sigmoid bump parameters for the advection test.
inline constexpr double kSigmoidK = 100.0;
inline constexpr double kSigmoidX1 = 0.05;
inline constexpr double kSigmoidX2 = 0.2;

struct Problem {
  Equation eq = Equation::Advection;
  InitKind init = InitKind::Cosine;
  double ul = 1.0;  // Riemann left state, or the constant value
  double ur = 0.0;  // Riemann right state
  double T = 5.0;
  double cfl = 0.4;
  std::string name = "advection-cosine";
};

inline constexpr std::array<std::string_view, 5> kProblemNames{
    "advection-cosine", "advection-sigmoid", "burgers-shock", "burgers-rarefaction", "burgers-transonic"};

inline Problem make_problem(std::string_view name) {
  Problem p;
  p.name = std::string(name);
  if (name == "advection-cosine") {
    p.init = InitKind::Cosine;
  } else if (name == "advection-sigmoid") {
    p.init = InitKind::Sigmoid;
  } else if (name == "burgers-shock" || name == "burgers-rarefaction" || name == "burgers-transonic") {
    p.eq = Equation::Burgers;
    p.init = InitKind::Riemann;
    if (name == "burgers-shock") {
      p.ul = 1.0, p.ur = 0.0;
    } else if (name == "burgers-rarefaction") {
      p.ul = 0.0, p.ur = 1.0;
    } else {
      p.ul = -1.0, p.ur = 1.0;
    }
  } else {
    std::string valid;
    for (auto n : kProblemNames) valid += std::string(valid.empty() ? "" : ", ") + std::string(n);
    throw ConfigError("unknown problem '" + std::string(name) + "'; valid problems: " + valid);
  }
  return p;
}

inline Problem constant_problem(Equation eq, double value) {
  Problem p;
  p.eq = eq;
  p.init = InitKind::Constant;
  p.ul = p.ur = value;
  p.name = "constant";
  return p;
}

/// Grid matching the problem: [0,1] periodic for advection, [-6,6] with
/// Dirichlet states for Burgers.
inline GridSpec make_grid(const Problem& p, int nx) {
  if (nx < 8) {
    throw ConfigError("nx must be at least 8, got " + std::to_string(nx));
  }
  if (p.eq == Equation::Advection) {
    return {nx, 0.0, 1.0, Boundary::Periodic, 0.0, 0.0};
  }
  return {nx, -6.0, 6.0, Boundary::Dirichlet, p.ul, p.ur};
}

namespace detail {

inline double softplus(double y) { return std::max(y, 0.0) + std::log1p(std::exp(-std::abs(y))); }

// Antiderivative of the (non-periodic) initial profile.
inline double init_primitive(const Problem& p, double x) {
  switch (p.init) {
    case InitKind::Cosine:
      return std::sin(2.0 * std::numbers::pi * x) / (2.0 * std::numbers::pi);
    case InitKind::Sigmoid:
      return softplus(kSigmoidK * (x - kSigmoidX1)) / kSigmoidK + x -
             softplus(kSigmoidK * (x - kSigmoidX2)) / kSigmoidK;
    case InitKind::Riemann:
      return p.ul * std::min(x, 0.0) + p.ur * std::max(x, 0.0);
    case InitKind::Constant:
      return p.ul * x;
  }
  return 0.0;
}

inline double init_value(const Problem& p, double x) {
  switch (p.init) {
    case InitKind::Cosine:
      return std::cos(2.0 * std::numbers::pi * x);
    case InitKind::Sigmoid:
      return 1.0 / (1.0 + std::exp(-kSigmoidK * (x - kSigmoidX1))) +
             1.0 / (1.0 + std::exp(kSigmoidK * (x - kSigmoidX2)));
    case InitKind::Riemann:
      return x < 0.0 ? p.ul : p.ur;
    case InitKind::Constant:
      return p.ul;
  }
  return 0.0;
}

// Antiderivative of the exact Burgers Riemann solution at time t (>= 0):
// left state up to xa, fan x/t on [xa, xb], right state beyond xb.
inline double riemann_primitive(double ul, double ur, double x, double t) {
  double xa, xb;
  if (ul > ur) {
    xa = xb = 0.5 * (ul + ur) * t;
  } else {
    xa = ul * t;
    xb = ur * t;
  }
  double g = ul * std::min(x, xa) + ur * std::max(x - xb, 0.0);
  if (xb > xa) {
    const double c = std::clamp(x, xa, xb);
    g += (c * c - xa * xa) / (2.0 * t);
  }
  return g;
}

}  // namespace detail

/// Exact pointwise solution: translation for advection (period 1), shock or
/// rarefaction fan for Burgers.
inline double exact_solution(const Problem& p, double x, double t) {
  if (p.init == InitKind::Constant) {
    return p.ul;
  }
  if (p.eq == Equation::Advection) {
    double y = x - t;
    y -= std::floor(y);
    return detail::init_value(p, y);
  }
  if (p.ul > p.ur) {
    return x < 0.5 * (p.ul + p.ur) * t ? p.ul : p.ur;
  }
  if (x < p.ul * t) return p.ul;
  if (x > p.ur * t) return p.ur;
  return t > 0.0 ? x / t : (x < 0.0 ? p.ul : p.ur);
}

/// Exact cell averages on `grid` at time t.
inline std::vector<double> exact_averages(const Problem& p, const GridSpec& grid, double t) {
  std::vector<double> out(static_cast<std::size_t>(grid.nx));
  const double dx = grid.dx();
  if (p.eq == Equation::Advection && p.init != InitKind::Constant) {
    const double shift = std::fmod(t, 1.0);
    if (p.init == InitKind::Cosine) {
      const double k = 2.0 * std::numbers::pi;
      const double half = 0.5 * k * dx;
      const double damp = std::sin(half) / half;
      for (int i = 0; i < grid.nx; ++i) {
        out[static_cast<std::size_t>(i)] = std::cos(k * (grid.center(i) - shift)) * damp;
      }
      return out;
    }
    // Primitive of the period-1 extension of u0 on [0,1).
    const double period_mass = detail::init_primitive(p, 1.0) - detail::init_primitive(p, 0.0);
    auto prim = [&](double x) {
      const double fl = std::floor(x);
      return fl * period_mass + detail::init_primitive(p, x - fl) - detail::init_primitive(p, 0.0);
    };
    for (int i = 0; i < grid.nx; ++i) {
      const double lo = grid.edge(i) - shift;
      const double hi = grid.edge(i + 1) - shift;
      out[static_cast<std::size_t>(i)] = (prim(hi) - prim(lo)) / (hi - lo);
    }
    return out;
  }
  for (int i = 0; i < grid.nx; ++i) {
    const double lo = grid.edge(i);
    const double hi = grid.edge(i + 1);
    double v;
    if (p.init == InitKind::Constant) {
      v = p.ul;
    } else if (t == 0.0) {
      v = (detail::init_primitive(p, hi) - detail::init_primitive(p, lo)) / (hi - lo);
    } else {
      v = (detail::riemann_primitive(p.ul, p.ur, hi, t) - detail::riemann_primitive(p.ul, p.ur, lo, t)) / (hi - lo);
    }
    out[static_cast<std::size_t>(i)] = v;
  }
  return out;
}

inline std::vector<double> initial_averages(const Problem& p, const GridSpec& grid) {
  return exact_averages(p, grid, 0.0);
}

/// dx * sum |state - exact|.
inline double l1_error(std::span<const double> state, std::span<const double> exact, double dx) {
  if (state.size() != exact.size()) {
    throw ConfigError("l1_error: length mismatch");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < state.size(); ++i) {
    s += std::abs(state[i] - exact[i]);
  }
  return dx * s;
}

inline double total_variation(std::span<const double> u) {
  double tv = 0.0;
  for (std::size_t i = 1; i < u.size(); ++i) {
    tv += std::abs(u[i] - u[i - 1]);
  }
  return tv;
}

inline constexpr int kGhost = 3;

/// State padded with kGhost ghost cells per side.
inline std::vector<double> with_ghosts(std::span<const double> u, const GridSpec& grid) {
  const int n = grid.nx;
  std::vector<double> ext(static_cast<std::size_t>(n + 2 * kGhost));
  for (int k = -kGhost; k < n + kGhost; ++k) {
    double v;
    if (k >= 0 && k < n) {
      v = u[static_cast<std::size_t>(k)];
    } else if (grid.bc == Boundary::Periodic) {
      v = u[static_cast<std::size_t>((k % n + n) % n)];
    } else {
      v = k < 0 ? grid.left : grid.right;
    }
    ext[static_cast<std::size_t>(k + kGhost)] = v;
  }
  return ext;
}

struct FaceStates {
  std::vector<double> minus;  // nx+1 faces, face j at grid.edge(j)
  std::vector<double> plus;
};

namespace detail {
inline Stencil5 window(const std::vector<double>& ext, int center) {
  const std::size_t c = static_cast<std::size_t>(center + kGhost);
  return {{ext[c - 2], ext[c - 1], ext[c], ext[c + 1], ext[c + 2]}};
}

inline void check_halo(const GridSpec& grid, const Scheme& scheme) {
  if (grid.nx < 2 * scheme.halo()) {
    throw ConfigError("nx = " + std::to_string(grid.nx) + " is too small for the " +
                      std::to_string(scheme.halo()) + "-cell halo of scheme " + scheme.name());
  }
}
}  // namespace detail

/// Minus/plus reconstructions at every face. Face j sits between cells j-1
/// and j; the minus side uses the window centered on cell j-1, the plus side
/// the mirrored window centered on cell j.
inline FaceStates face_states(std::span<const double> u, const GridSpec& grid, const Scheme& scheme,
                              bool want_plus = true) {
  detail::check_halo(grid, scheme);
  const auto ext = with_ghosts(u, grid);
  FaceStates f;
  f.minus.resize(static_cast<std::size_t>(grid.nx + 1));
  if (want_plus) f.plus.resize(static_cast<std::size_t>(grid.nx + 1));
  for (int j = 0; j <= grid.nx; ++j) {
    f.minus[static_cast<std::size_t>(j)] = scheme.minus(detail::window(ext, j - 1));
    if (want_plus) f.plus[static_cast<std::size_t>(j)] = scheme.plus(detail::window(ext, j));
  }
  return f;
}

/// Upwind flux for unit-speed advection, local Lax-Friedrichs for Burgers.
inline double numerical_flux(double um, double up, Equation eq) {
  if (eq == Equation::Advection) {
    return um;
  }
  const double a = std::max(std::abs(um), std::abs(up));
  return 0.25 * (um * um + up * up) - 0.5 * a * (up - um);
}

/// Semi-discrete right-hand side -(F_{i+1/2} - F_{i-1/2}) / dx.
inline std::vector<double> rhs(std::span<const double> u, const GridSpec& grid, const Scheme& scheme, Equation eq) {
  const FaceStates f = face_states(u, grid, scheme, eq == Equation::Burgers);
  std::vector<double> flux(static_cast<std::size_t>(grid.nx + 1));
  for (std::size_t j = 0; j < flux.size(); ++j) {
    flux[j] = numerical_flux(f.minus[j], eq == Equation::Burgers ? f.plus[j] : 0.0, eq);
  }
  const double inv_dx = 1.0 / grid.dx();
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = -(flux[i + 1] - flux[i]) * inv_dx;
  }
  return out;
}

using Operator = std::function<std::vector<double>(std::span<const double>)>;

/// Shu-Osher three-stage SSP Runge-Kutta step.
inline std::vector<double> ssp_rk3_step(std::span<const double> u, double dt, const Operator& L) {
  const std::size_t n = u.size();
  std::vector<double> u1(n), u2(n), out(n);
  const auto k0 = L(u);
  for (std::size_t i = 0; i < n; ++i) u1[i] = u[i] + dt * k0[i];
  const auto k1 = L(u1);
  for (std::size_t i = 0; i < n; ++i) u2[i] = 0.75 * u[i] + 0.25 * (u1[i] + dt * k1[i]);
  const auto k2 = L(u2);
  for (std::size_t i = 0; i < n; ++i) out[i] = u[i] / 3.0 + 2.0 / 3.0 * (u2[i] + dt * k2[i]);
  return out;
}

struct SolveReport {
  std::string scheme_name;
  std::string problem_name;
  int nx = 0;
  double cfl = 0.0;
  double T = 0.0;
  std::vector<double> times;      // t = 0 and after every step
  std::vector<double> l1_errors;  // same length as times
  std::vector<double> x;          // cell centers
  std::vector<double> final_state;
  std::vector<double> final_exact;  // exact cell averages at T
  int steps = 0;
  double wall_seconds = 0.0;

  double final_l1() const { return l1_errors.back(); }
};

/// Integrates to p.T with dt = cfl dx / max wave speed; the last step is
/// shortened to land on T. The L1 error against exact cell averages is
/// recorded at every step.
inline SolveReport run(const Problem& p, const GridSpec& grid, const Scheme& scheme) {
  if (!(p.cfl > 0.0 && p.cfl <= 1.0)) {
    throw ConfigError("cfl must lie in (0, 1]");
  }
  if (!(p.T >= 0.0)) {
    throw ConfigError("final time must be non-negative");
  }
  detail::check_halo(grid, scheme);
  const auto t0 = std::chrono::steady_clock::now();
  SolveReport rep;
  rep.scheme_name = scheme.name();
  rep.problem_name = p.name;
  rep.nx = grid.nx;
  rep.cfl = p.cfl;
  rep.T = p.T;
  for (int i = 0; i < grid.nx; ++i) rep.x.push_back(grid.center(i));

  const double dx = grid.dx();
  std::vector<double> u = initial_averages(p, grid);
  const Operator L = [&](std::span<const double> v) { return rhs(v, grid, scheme, p.eq); };
  double t = 0.0;
  rep.times.push_back(0.0);
  rep.l1_errors.push_back(l1_error(u, exact_averages(p, grid, 0.0), dx));
  int step = 0;
  while (t < p.T) {
    double speed = 1.0;
    if (p.eq == Equation::Burgers) {
      speed = std::max(std::abs(grid.left), std::abs(grid.right));
      for (double v : u) speed = std::max(speed, std::abs(v));
    }
    double dt = speed > 0.0 ? p.cfl * dx / speed : p.T - t;
    bool last = false;
    if (t + dt >= p.T * (1.0 - 1e-14)) {
      dt = p.T - t;
      last = true;
    }
    u = ssp_rk3_step(u, dt, L);
    ++step;
    t = last ? p.T : t + dt;
    for (double v : u) {
      if (!std::isfinite(v)) {
        throw RuntimeFailure("non-finite state at step " + std::to_string(step) + " (t = " + std::to_string(t) +
                             ") with scheme " + scheme.name());
      }
    }
    rep.times.push_back(t);
    rep.l1_errors.push_back(l1_error(u, exact_averages(p, grid, t), dx));
  }
  rep.steps = step;
  rep.final_state = std::move(u);
  rep.final_exact = exact_averages(p, grid, p.T);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace rweno

#endif  // RWENO_SOLVER_HPP_
