#ifndef RWENO_ANALYSIS_HPP_
#define RWENO_ANALYSIS_HPP_

#include <complex>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rweno/error.hpp"
#include "rweno/funcspace.hpp"
#include "rweno/scheme.hpp"
#include "rweno/solver.hpp"
#include "rweno/train.hpp"

namespace rweno {

// ---------------------------------------------------------------------------
// Approximate dispersion relation

struct ADRPoint {
  double kappa_dx = 0.0;
  double dispersion = 0.0;   // Re(k' dx)
  double dissipation = 0.0;  // Im(k' dx), <= 0 for a non-amplifying scheme
  double leakage = 0.0;      // relative energy outside the initialized mode
  bool valid = true;
};

inline constexpr int kDefaultAdrNx = 256;
inline constexpr double kAdrDtFactor = 1e-3;

/// Reduced wavenumbers 2 pi m / nx for m = step, 2 step, ..., nx/2 with
/// `count` points.
inline std::vector<int> adr_modes(int nx = kDefaultAdrNx, int count = 64) {
  std::vector<int> modes;
  const int half = nx / 2;
  for (int k = 1; k <= count; ++k) {
    const int m = static_cast<int>(std::lround(static_cast<double>(k) * half / count));
    if (m >= 1 && (modes.empty() || m != modes.back())) modes.push_back(m);
  }
  return modes;
}

namespace detail {
inline std::complex<double> dft_coeff(const std::vector<double>& u, int m) {
  const int n = static_cast<int>(u.size());
  std::complex<double> acc{};
  for (int j = 0; j < n; ++j) {
    const double ph = -2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(m) * j) % n) / n;
    acc += u[static_cast<std::size_t>(j)] * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return acc;
}

// Relative L2 norm of u minus its projection onto modes +-m.
inline double mode_leakage(const std::vector<double>& u, int m, std::complex<double> coeff) {
  const int n = static_cast<int>(u.size());
  const double scale = (2 * m == n) ? 1.0 / n : 2.0 / n;
  double res = 0.0, tot = 0.0;
  for (int j = 0; j < n; ++j) {
    const double ph = 2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(m) * j) % n) / n;
    const double proj = scale * (coeff * std::complex<double>(std::cos(ph), std::sin(ph))).real();
    const double uj = u[static_cast<std::size_t>(j)];
    res += (uj - proj) * (uj - proj);
    tot += uj * uj;
  }
  return tot > 0.0 ? std::sqrt(res / tot) : 0.0;
}
}  // namespace detail

/// Modified wavenumber of `scheme` for unit-speed advection. Each mode is
/// initialized as the exact cell averages of sin(kappa x) on a periodic
/// nx-cell grid, advanced one SSP-RK3 step of dt = 1e-3 dx, and compared by
/// its DFT coefficient: k' dx = i (dx/dt) log(a_after / a_before).
inline std::vector<ADRPoint> adr(const Scheme& scheme, const std::vector<int>& modes, int nx = kDefaultAdrNx) {
  const GridSpec grid{nx, 0.0, 1.0, Boundary::Periodic, 0.0, 0.0};
  const double dx = grid.dx();
  const double dt = kAdrDtFactor * dx;
  const Operator L = [&](std::span<const double> v) { return rhs(v, grid, scheme, Equation::Advection); };
  std::vector<ADRPoint> out;
  for (int m : modes) {
    if (m < 1 || 2 * m > nx) {
      throw ConfigError("ADR mode " + std::to_string(m) + " not resolvable on " + std::to_string(nx) + " cells");
    }
    ADRPoint pt;
    const double kappa = 2.0 * std::numbers::pi * m;
    pt.kappa_dx = kappa * dx;
    const FunctionSpec wave = make_function(Family::Sine, {2.0 * m});
    std::vector<double> u(static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) u[static_cast<std::size_t>(i)] = wave.mean(grid.edge(i), grid.edge(i + 1));
    const auto before = detail::dft_coeff(u, m);
    const auto next = ssp_rk3_step(u, dt, L);
    const auto after = detail::dft_coeff(next, m);
    if (std::abs(before) < 1e-200 || std::abs(after) < 1e-200) {
      pt.valid = false;
    } else {
      const std::complex<double> kp = std::complex<double>(0.0, dx / dt) * std::log(after / before);
      pt.dispersion = kp.real();
      pt.dissipation = kp.imag();
      pt.leakage = detail::mode_leakage(next, m, after);
    }
    out.push_back(pt);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Convergence studies

struct ConvergenceRow {
  std::string scheme;
  int nx = 0;
  double dx = 0.0;
  double error = 0.0;
  double slope = 0.0;  // per-scheme fitted order, repeated on each row
};

namespace detail {
inline void fill_slopes(std::vector<ConvergenceRow>& rows, std::size_t first) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = first; i < rows.size(); ++i) pts.emplace_back(rows[i].dx, rows[i].error);
  const double slope = convergence_order(pts).slope;
  for (std::size_t i = first; i < rows.size(); ++i) rows[i].slope = slope;
}
}  // namespace detail

/// Final-time L1 error of every scheme on every grid.
inline std::vector<ConvergenceRow> convergence_study(const std::vector<Scheme>& schemes, const Problem& p,
                                                     const std::vector<int>& nx_list) {
  if (nx_list.size() < 3) throw ConfigError("convergence study needs at least 3 grids");
  std::vector<ConvergenceRow> rows;
  for (const auto& s : schemes) {
    const std::size_t first = rows.size();
    for (int nx : nx_list) {
      const GridSpec g = make_grid(p, nx);
      rows.push_back({s.name(), nx, g.dx(), run(p, g, s).final_l1(), 0.0});
    }
    detail::fill_slopes(rows, first);
  }
  return rows;
}

/// Interpolation-RMSE study on an analytical function.
inline std::vector<ConvergenceRow> convergence_study(const std::vector<Scheme>& schemes, const FunctionSpec& f,
                                                     const std::vector<int>& nx_list) {
  if (nx_list.size() < 3) throw ConfigError("convergence study needs at least 3 grids");
  std::vector<ConvergenceRow> rows;
  for (const auto& s : schemes) {
    const std::size_t first = rows.size();
    for (int nx : nx_list) {
      rows.push_back({s.name(), nx, f.length() / nx, interpolation_error(s, f, nx), 0.0});
    }
    detail::fill_slopes(rows, first);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// CSV reports

/// A CSV table preceded by one metadata comment line.
struct Report {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  bool operator==(const Report&) const = default;
};

inline constexpr std::string_view kReportTag = "rweno-report v1";

inline void emit_report(std::ostream& os, const Report& r) {
  os << "# " << kReportTag;
  for (const auto& [k, v] : r.meta) os << ", " << k << '=' << v;
  os << '\n';
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
  os << '\n';
  for (const auto& row : r.rows) {
    if (row.size() != r.columns.size()) throw ConfigError("report row width does not match the header");
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

inline void emit_report(const std::string& path, const Report& r) {
  if (r.rows.empty()) throw ConfigError("refusing to write an empty report to '" + path + "'");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write report '" + path + "'");
  emit_report(os, r);
  if (!os) throw RuntimeFailure("write failed for report '" + path + "'");
}

inline Report parse_report(std::istream& is) {
  Report r;
  std::string line;
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(s);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
  };
  if (!std::getline(is, line) || !line.starts_with("# " + std::string(kReportTag))) {
    throw ConfigError("report: missing metadata line");
  }
  const std::string rest = line.substr(2 + kReportTag.size());
  for (const auto& item : split(rest, ',')) {
    if (item.empty()) continue;
    const std::string kv = item.starts_with(" ") ? item.substr(1) : item;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("report: malformed metadata '" + kv + "'");
    r.meta.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!std::getline(is, line)) throw ConfigError("report: missing header");
  r.columns = split(line, ',');
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    r.rows.push_back(split(line, ','));
  }
  return r;
}

inline Report convergence_report(const std::vector<ConvergenceRow>& rows,
                                 std::vector<std::pair<std::string, std::string>> meta = {}) {
  Report r{std::move(meta), {"scheme", "nx", "dx", "error", "slope"}, {}};
  for (const auto& c : rows) {
    r.rows.push_back({c.scheme, std::to_string(c.nx), format_real(c.dx), format_real(c.error), format_real(c.slope)});
  }
  return r;
}

inline Report adr_report(const std::vector<std::pair<std::string, std::vector<ADRPoint>>>& curves,
                         std::vector<std::pair<std::string, std::string>> meta = {}) {
  Report r{std::move(meta), {"scheme", "kappa_dx", "dispersion", "dissipation", "leakage"}, {}};
  for (const auto& [name, pts] : curves) {
    for (const auto& p : pts) {
      if (!p.valid) {
        r.rows.push_back({name, format_real(p.kappa_dx), "nan", "nan", "nan"});
        continue;
      }
      r.rows.push_back({name, format_real(p.kappa_dx), format_real(p.dispersion), format_real(p.dissipation),
                        format_real(p.leakage)});
    }
  }
  return r;
}

}  // namespace rweno

#endif  // RWENO_ANALYSIS_HPP_
