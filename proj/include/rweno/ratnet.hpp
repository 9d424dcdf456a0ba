#ifndef RWENO_RATNET_HPP_
#define RWENO_RATNET_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rweno/error.hpp"
#include "rweno/funcspace.hpp"
#include "rweno/reconstruct.hpp"
#include "rweno/rng.hpp"

namespace rweno {

/// Absolute guard added to |q(x)| so that learned denominators can never
/// produce a pole.
inline constexpr double kDenominatorGuard = 1e-8;
inline constexpr double kDefaultCEno = 2e-4;
inline constexpr double kFeatureNormFloor = 1e-14;
inline constexpr double kBaselineDeltaEps = 1e-15;

/// (3,2) rational function p(x) / (|q(x)| + guard), coefficients in
/// ascending degree.
struct RationalCoeffs {
  std::array<double, 4> p{};
  std::array<double, 3> q{};

  static constexpr std::size_t kSize = 7;

  double numerator(double x) const { return ((p[3] * x + p[2]) * x + p[1]) * x + p[0]; }
  double denominator(double x) const { return (q[2] * x + q[1]) * x + q[0]; }

  double operator()(double x) const { return numerator(x) / (std::abs(denominator(x)) + kDenominatorGuard); }

  /// Value and derivative with respect to x.
  std::pair<double, double> eval_with_slope(double x) const {
    const double num = numerator(x);
    const double den = denominator(x);
    const double sgn = den < 0.0 ? -1.0 : 1.0;
    const double d = std::abs(den) + kDenominatorGuard;
    const double dnum = (3.0 * p[3] * x + 2.0 * p[2]) * x + p[1];
    const double dden = 2.0 * q[2] * x + q[1];
    return {num / d, dnum / d - num * sgn * dden / (d * d)};
  }

  /// Accumulates scale * dR/dtheta at x into grad (p then q).
  void accumulate_grad(double x, double scale, RationalCoeffs& grad) const {
    const double num = numerator(x);
    const double den = denominator(x);
    const double sgn = den < 0.0 ? -1.0 : 1.0;
    const double d = std::abs(den) + kDenominatorGuard;
    const double gp = scale / d;
    const double gq = -scale * num * sgn / (d * d);
    double xk = 1.0;
    for (std::size_t k = 0; k < 4; ++k) {
      grad.p[k] += gp * xk;
      if (k < 3) {
        grad.q[k] += gq * xk;
      }
      xk *= x;
    }
  }

  static RationalCoeffs identity() { return {{0.0, 1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}; }
};

/// Result of the least-squares (3,2) fit to ReLU used for initialization.
struct ReluFit {
  RationalCoeffs coeffs;
  double max_error = 0.0;
  int grid_points = 0;
  bool fallback = false;
};

namespace detail {

inline double relu_fit_max_error(const RationalCoeffs& r, int points) {
  double err = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = -3.0 + 6.0 * i / (points - 1);
    err = std::max(err, std::abs(r(x) - std::max(x, 0.0)));
  }
  return err;
}

// Least-squares fit on `points` uniform nodes in [-3, 3] with q0 fixed to 1:
// linearized Sanathanan-Koerner passes followed by Levenberg-Marquardt on the
// true residual. Returns false if the result is not usable.
inline bool fit_relu_on_grid(int points, RationalCoeffs& out) {
  using Eigen::MatrixXd;
  using Eigen::VectorXd;
  VectorXd xs(points), ys(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = -3.0 + 6.0 * i / (points - 1);
    ys[i] = std::max(xs[i], 0.0);
  }
  // theta = (p0, p1, p2, p3, q1, q2)
  auto unpack = [](const VectorXd& t) {
    return RationalCoeffs{{t[0], t[1], t[2], t[3]}, {1.0, t[4], t[5]}};
  };

  VectorXd theta = VectorXd::Zero(6);
  VectorXd wts = VectorXd::Ones(points);
  for (int pass = 0; pass < 20; ++pass) {
    MatrixXd A(points, 6);
    VectorXd rhs(points);
    for (int i = 0; i < points; ++i) {
      const double x = xs[i];
      const double w = wts[i];
      A.row(i) << w, w * x, w * x * x, w * x * x * x, -w * ys[i] * x, -w * ys[i] * x * x;
      rhs[i] = w * ys[i];
    }
    theta = A.colPivHouseholderQr().solve(rhs);
    const RationalCoeffs r = unpack(theta);
    for (int i = 0; i < points; ++i) {
      wts[i] = 1.0 / std::max(std::abs(r.denominator(xs[i])), 1e-6);
    }
  }

  auto residual = [&](const VectorXd& t) {
    const RationalCoeffs r = unpack(t);
    VectorXd res(points);
    for (int i = 0; i < points; ++i) {
      res[i] = r(xs[i]) - ys[i];
    }
    return res;
  };
  VectorXd res = residual(theta);
  double cost = res.squaredNorm();
  double lambda = 1e-3;
  bool converged = false;
  for (int iter = 0; iter < 200 && !converged; ++iter) {
    const RationalCoeffs r = unpack(theta);
    MatrixXd J(points, 6);
    for (int i = 0; i < points; ++i) {
      const double x = xs[i];
      const double den = r.denominator(x);
      const double sgn = den < 0.0 ? -1.0 : 1.0;
      const double d = std::abs(den) + kDenominatorGuard;
      const double num = r.numerator(x);
      const double gq = -num * sgn / (d * d);
      J.row(i) << 1.0 / d, x / d, x * x / d, x * x * x / d, gq * x, gq * x * x;
    }
    const MatrixXd JtJ = J.transpose() * J;
    const VectorXd g = J.transpose() * res;
    bool improved = false;
    for (int tries = 0; tries < 10 && !improved; ++tries) {
      MatrixXd H = JtJ;
      H.diagonal() += lambda * JtJ.diagonal().cwiseMax(1e-12);
      const VectorXd step = H.ldlt().solve(-g);
      const VectorXd cand = theta + step;
      const VectorXd cres = residual(cand);
      const double ccost = cres.squaredNorm();
      if (std::isfinite(ccost) && ccost < cost) {
        theta = cand;
        res = cres;
        const double rel = (cost - ccost) / cost;
        cost = ccost;
        lambda = std::max(lambda * 0.3, 1e-12);
        improved = true;
        converged = rel < 1e-14;
      } else {
        lambda *= 10.0;
      }
    }
    if (!improved) {
      break;
    }
  }
  out = unpack(theta);
  if (!theta.allFinite()) {
    return false;
  }
  // Reject fits whose denominator changes sign on the interval.
  for (int i = 0; i < points; ++i) {
    if (out.denominator(xs[i]) <= 0.0) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Least-squares (3,2) rational approximation of ReLU on 1001 uniform nodes
/// in [-3, 3]. Computed once and cached.
inline const ReluFit& fit_relu_rational() {
  static const ReluFit fit = [] {
    ReluFit f;
    for (int points : {1001, 201, 51}) {
      RationalCoeffs r;
      if (detail::fit_relu_on_grid(points, r)) {
        f.coeffs = r;
        f.grid_points = points;
        f.fallback = points != 1001;
        f.max_error = detail::relu_fit_max_error(r, 1001);
        return f;
      }
    }
    throw RuntimeFailure("ReLU rational fit failed on every grid");
  }();
  return fit;
}

/// Dense layer, W stored row-major (out x in).
struct DenseLayer {
  int in = 0;
  int out = 0;
  std::vector<double> W;
  std::vector<double> b;

  DenseLayer() = default;
  DenseLayer(int in_, int out_)
      : in(in_), out(out_), W(static_cast<std::size_t>(in_ * out_), 0.0), b(static_cast<std::size_t>(out_), 0.0) {}

  double& w(int r, int c) { return W[static_cast<std::size_t>(r * in + c)]; }
  double w(int r, int c) const { return W[static_cast<std::size_t>(r * in + c)]; }
};

struct HiddenLayer {
  DenseLayer lin;
  RationalCoeffs act;  // shared by all neurons of the layer
};

inline constexpr int kFeatureCount = 4;
inline constexpr int kMaxWidth = 64;

/// All learnable parameters of the rational WENO3 network.
///
/// `arch` lists the hidden widths. The first entry is the rational feature
/// layer and is always 4; each further entry adds a linear map followed by
/// a shared rational activation.
struct NetParams {
  std::vector<int> arch{4, 4, 4};
  std::array<RationalCoeffs, kFeatureCount> feat{};
  std::vector<HiddenLayer> layers;
  DenseLayer head;
  double c_eno = kDefaultCEno;

  /// Zero-initialized parameters of the given shape.
  static NetParams zeros(const std::vector<int>& arch) {
    if (arch.empty() || arch.front() != kFeatureCount) {
      throw ConfigError("arch must start with the feature width 4");
    }
    NetParams p;
    p.arch = arch;
    for (std::size_t l = 1; l < arch.size(); ++l) {
      if (arch[l] <= 0 || arch[l] > kMaxWidth) {
        throw ConfigError("arch widths must lie in [1, 64]");
      }
      p.layers.push_back({DenseLayer(arch[l - 1], arch[l]), RationalCoeffs{}});
    }
    p.head = DenseLayer(arch.back(), 2);
    return p;
  }

  int width() const { return arch.back(); }
};

/// Applies fn(double&) to every learnable scalar in a fixed order:
/// feature rationals, then per layer W, b, activation, then head W, b.
template <typename Params, typename Fn>
void for_each_param(Params& p, Fn&& fn) {
  auto rational = [&](auto& r) {
    for (auto& c : r.p) fn(c);
    for (auto& c : r.q) fn(c);
  };
  for (auto& r : p.feat) rational(r);
  for (auto& layer : p.layers) {
    for (auto& w : layer.lin.W) fn(w);
    for (auto& b : layer.lin.b) fn(b);
    rational(layer.act);
  }
  for (auto& w : p.head.W) fn(w);
  for (auto& b : p.head.b) fn(b);
}

inline std::size_t count_params(const NetParams& p) {
  std::size_t n = 0;
  for_each_param(p, [&](const double&) { ++n; });
  return n;
}

inline std::vector<double> flatten(const NetParams& p) {
  std::vector<double> v;
  v.reserve(count_params(p));
  for_each_param(p, [&](const double& x) { v.push_back(x); });
  return v;
}

inline void unflatten(NetParams& p, std::span<const double> v) {
  if (v.size() != count_params(p)) {
    throw ConfigError("parameter vector has wrong length");
  }
  std::size_t i = 0;
  for_each_param(p, [&](double& x) { x = v[i++]; });
}

/// Per-operation FLOP tally of one forward pass plus ENO filter and convex
/// combination. Convention: one FLOP per scalar add, subtract, multiply,
/// divide or sqrt; exp counts 10; abs, max and comparisons are free.
struct FlopCount {
  std::size_t features = 0;
  std::size_t rational_features = 0;
  std::size_t normalization = 0;
  std::size_t hidden = 0;
  std::size_t head = 0;
  std::size_t softmax = 0;
  std::size_t eno_and_combination = 0;

  std::size_t total() const {
    return features + rational_features + normalization + hidden + head + softmax + eno_and_combination;
  }
};

inline FlopCount count_flops(const NetParams& p) {
  constexpr std::size_t kRational = 6 + 4 + 1 + 1;  // Horner p, Horner q, guard add, divide
  FlopCount f;
  f.features = 1 + 1 + 1 + 3;
  f.rational_features = kFeatureCount * kRational;
  f.normalization = 4 + 3 + 1 + 4;
  for (const auto& layer : p.layers) {
    f.hidden += 2 * static_cast<std::size_t>(layer.lin.in * layer.lin.out) +
                static_cast<std::size_t>(layer.lin.out) * kRational;
  }
  f.head = 2 * static_cast<std::size_t>(p.head.in * p.head.out);
  f.softmax = 2 + 2 * 10 + 1 + 2;  // max shift, exp, sum, divide
  // interpolants (4), threshold renormalization (1 add, 2 div), combination (3)
  f.eno_and_combination = 4 + 3 + 3;
  return f;
}

using FeatureVec = std::array<double, kFeatureCount>;

/// Galilean-invariant difference features of a WENO3 stencil.
inline FeatureVec delta_features(const Stencil3& s) {
  return {std::abs(s.c - s.m1), std::abs(s.p1 - s.c), std::abs(s.p1 - s.m1), std::abs(s.p1 - 2.0 * s.c + s.m1)};
}

/// Rational features normalized to unit Euclidean norm; the zero vector when
/// the raw features vanish.
inline FeatureVec rational_features(const Stencil3& s, const std::array<RationalCoeffs, kFeatureCount>& feat) {
  const FeatureVec d = delta_features(s);
  FeatureVec a{};
  double sq = 0.0;
  for (int j = 0; j < kFeatureCount; ++j) {
    a[j] = feat[j](d[j]);
    sq += a[j] * a[j];
  }
  const double norm = std::sqrt(sq);
  if (!(norm >= kFeatureNormFloor)) {
    return {};
  }
  for (double& x : a) {
    x /= norm;
  }
  return a;
}

/// Difference features scaled by max(D1, D2, eps), as used by the Delta
/// featurization of the Swish-MLP baseline.
inline FeatureVec delta_baseline_features(const Stencil3& s) {
  FeatureVec d = delta_features(s);
  const double scale = std::max({d[0], d[1], kBaselineDeltaEps});
  for (double& x : d) {
    x /= scale;
  }
  return d;
}

inline double swish(double x) { return x / (1.0 + std::exp(-x)); }

namespace detail {
inline Weights2 softmax2(double z0, double z1) {
  const double m = std::max(z0, z1);
  const double e0 = std::exp(z0 - m);
  const double e1 = std::exp(z1 - m);
  const double s = e0 + e1;
  return {e0 / s, e1 / s};
}
}  // namespace detail

/// Network weights (pre-ENO) for one stencil.
inline Weights2 forward(const NetParams& params, const Stencil3& s) {
  const FeatureVec a0 = rational_features(s, params.feat);
  // Widths are tiny; fixed-capacity buffers avoid allocation in the solver loop.
  std::array<double, kMaxWidth> a{}, z{};
  int n = kFeatureCount;
  std::copy(a0.begin(), a0.end(), a.begin());
  for (const auto& layer : params.layers) {
    const auto& lin = layer.lin;
    for (int r = 0; r < lin.out; ++r) {
      double acc = lin.b[static_cast<std::size_t>(r)];
      for (int c = 0; c < lin.in; ++c) {
        acc += lin.w(r, c) * a[static_cast<std::size_t>(c)];
      }
      z[static_cast<std::size_t>(r)] = layer.act(acc);
    }
    n = lin.out;
    a = z;
  }
  const auto& head = params.head;
  std::array<double, 2> logit{};
  for (int r = 0; r < 2; ++r) {
    double acc = head.b[static_cast<std::size_t>(r)];
    for (int c = 0; c < n; ++c) {
      acc += head.w(r, c) * a[static_cast<std::size_t>(c)];
    }
    logit[static_cast<std::size_t>(r)] = acc;
  }
  return detail::softmax2(logit[0], logit[1]);
}

/// Hard-threshold ENO filter: entries below c_eno are zeroed and the rest
/// renormalized. Weights above the threshold pass through untouched.
inline Weights2 eno_filter(const Weights2& w, double c_eno = kDefaultCEno) {
  if (w.w0 >= c_eno && w.w1 >= c_eno) {
    return w;
  }
  const double w0 = w.w0 >= c_eno ? w.w0 : 0.0;
  const double w1 = w.w1 >= c_eno ? w.w1 : 0.0;
  const double s = w0 + w1;
  assert(s > 0.0 && "both weights below the ENO threshold");
  return {w0 / s, w1 / s};
}

inline double nn_reconstruct(const NetParams& params, const Stencil3& s, double c_eno) {
  return reconstruct_minus(s, eno_filter(forward(params, s), c_eno));
}

inline double nn_reconstruct(const NetParams& params, const Stencil3& s) {
  return nn_reconstruct(params, s, params.c_eno);
}

/// Fresh parameters: every rational set to the ReLU approximant, linear
/// weights ~ N(0, 1/fan_in), biases zero.
inline NetParams init_params(const std::vector<int>& arch, Philox& rng) {
  NetParams p = NetParams::zeros(arch);
  const RationalCoeffs relu = fit_relu_rational().coeffs;
  p.feat.fill(relu);
  auto lecun = [&](DenseLayer& lin) {
    const double sd = 1.0 / std::sqrt(static_cast<double>(lin.in));
    for (double& w : lin.W) {
      w = sd * rng.normal();
    }
  };
  for (auto& layer : p.layers) {
    layer.act = relu;
    lecun(layer.lin);
  }
  lecun(p.head);
  return p;
}

// ---------------------------------------------------------------------------
// Weight file I/O

inline constexpr int kWeightFormatVersion = 1;

namespace detail {

inline void write_array(std::ostream& os, std::span<const double> v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    os << (i ? ", " : "") << format_real(v[i]);
  }
  os << ']';
}

inline void write_rational(std::ostream& os, const RationalCoeffs& r) {
  os << "{\"p\": ";
  write_array(os, r.p);
  os << ", \"q\": ";
  write_array(os, r.q);
  os << '}';
}

inline void write_matrix(std::ostream& os, const DenseLayer& lin, const std::string& indent) {
  os << '[';
  for (int r = 0; r < lin.out; ++r) {
    os << (r ? ",\n" + indent : "");
    write_array(os, std::span<const double>(lin.W).subspan(static_cast<std::size_t>(r * lin.in),
                                                          static_cast<std::size_t>(lin.in)));
  }
  os << ']';
}

using nlohmann::json;

inline const json& require(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError("weight file: missing field '" + path + key + "'");
  }
  return j.at(key);
}

inline double real_at(const json& j, const std::string& path) {
  if (!j.is_number()) {
    throw ConfigError("weight file: field '" + path + "' is not a number");
  }
  const double v = j.get<double>();
  if (!std::isfinite(v)) {
    throw ConfigError("weight file: field '" + path + "' is not finite");
  }
  return v;
}

template <std::size_t N>
void read_fixed(const json& j, std::array<double, N>& out, const std::string& path) {
  if (!j.is_array() || j.size() != N) {
    throw ConfigError("weight file: field '" + path + "' must be an array of " + std::to_string(N) + " reals");
  }
  for (std::size_t i = 0; i < N; ++i) {
    out[i] = real_at(j[i], path + "[" + std::to_string(i) + "]");
  }
}

inline RationalCoeffs read_rational(const json& j, const std::string& path) {
  RationalCoeffs r;
  read_fixed(require(j, "p", path + "."), r.p, path + ".p");
  read_fixed(require(j, "q", path + "."), r.q, path + ".q");
  return r;
}

inline void read_dense(const json& j, DenseLayer& lin, const std::string& path) {
  const json& W = require(j, "W", path + ".");
  if (!W.is_array() || static_cast<int>(W.size()) != lin.out) {
    throw ConfigError("weight file: field '" + path + ".W' must have " + std::to_string(lin.out) + " rows");
  }
  for (int r = 0; r < lin.out; ++r) {
    const json& row = W[static_cast<std::size_t>(r)];
    const std::string rp = path + ".W[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != lin.in) {
      throw ConfigError("weight file: field '" + rp + "' must have " + std::to_string(lin.in) + " entries");
    }
    for (int c = 0; c < lin.in; ++c) {
      lin.w(r, c) = real_at(row[static_cast<std::size_t>(c)], rp + "[" + std::to_string(c) + "]");
    }
  }
  const json& b = require(j, "b", path + ".");
  if (!b.is_array() || static_cast<int>(b.size()) != lin.out) {
    throw ConfigError("weight file: field '" + path + ".b' must have " + std::to_string(lin.out) + " entries");
  }
  for (int r = 0; r < lin.out; ++r) {
    lin.b[static_cast<std::size_t>(r)] =
        real_at(b[static_cast<std::size_t>(r)], path + ".b[" + std::to_string(r) + "]");
  }
}

}  // namespace detail

inline void write_weights(std::ostream& os, const NetParams& p) {
  os << "{\n  \"format_version\": " << kWeightFormatVersion << ",\n  \"arch\": [";
  for (std::size_t i = 0; i < p.arch.size(); ++i) {
    os << (i ? ", " : "") << p.arch[i];
  }
  os << "],\n  \"c_eno\": " << format_real(p.c_eno) << ",\n  \"feat\": [\n";
  for (int j = 0; j < kFeatureCount; ++j) {
    os << "    ";
    detail::write_rational(os, p.feat[static_cast<std::size_t>(j)]);
    os << (j + 1 < kFeatureCount ? ",\n" : "\n");
  }
  os << "  ],\n  \"layers\": [\n";
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const auto& layer = p.layers[l];
    os << "    {\"W\": ";
    detail::write_matrix(os, layer.lin, "           ");
    os << ",\n     \"b\": ";
    detail::write_array(os, layer.lin.b);
    os << ",\n     \"act\": ";
    detail::write_rational(os, layer.act);
    os << '}' << (l + 1 < p.layers.size() ? ",\n" : "\n");
  }
  os << "  ],\n  \"head\": {\"W\": ";
  detail::write_matrix(os, p.head, "                 ");
  os << ",\n           \"b\": ";
  detail::write_array(os, p.head.b);
  os << "}\n}\n";
}

inline void write_weights(const std::string& path, const NetParams& p) {
  std::ofstream os(path);
  if (!os) {
    throw ConfigError("cannot write weight file '" + path + "'");
  }
  write_weights(os, p);
}

/// Parses and validates a weight file. Any error names the first invalid
/// field.
inline NetParams read_weights(std::istream& is) {
  using detail::json;
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("weight file: not valid JSON: ") + e.what());
  }
  const json& ver = detail::require(j, "format_version", "");
  if (!ver.is_number_integer() || ver.get<int>() != kWeightFormatVersion) {
    throw ConfigError("weight file: field 'format_version' must be " + std::to_string(kWeightFormatVersion));
  }
  const json& arch_j = detail::require(j, "arch", "");
  std::vector<int> arch;
  if (!arch_j.is_array() || arch_j.empty()) {
    throw ConfigError("weight file: field 'arch' must be a non-empty array");
  }
  for (std::size_t i = 0; i < arch_j.size(); ++i) {
    if (!arch_j[i].is_number_integer() || arch_j[i].get<int>() <= 0 || arch_j[i].get<int>() > 64) {
      throw ConfigError("weight file: field 'arch[" + std::to_string(i) + "]' must be an integer in [1, 64]");
    }
    arch.push_back(arch_j[i].get<int>());
  }
  if (arch.front() != kFeatureCount) {
    throw ConfigError("weight file: field 'arch[0]' must be 4");
  }
  NetParams p = NetParams::zeros(arch);
  p.c_eno = detail::real_at(detail::require(j, "c_eno", ""), "c_eno");
  if (!(p.c_eno > 0.0 && p.c_eno < 0.5)) {
    throw ConfigError("weight file: field 'c_eno' must lie in (0, 0.5)");
  }
  const json& feat = detail::require(j, "feat", "");
  if (!feat.is_array() || feat.size() != kFeatureCount) {
    throw ConfigError("weight file: field 'feat' must hold 4 rationals");
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    p.feat[i] = detail::read_rational(feat[i], "feat[" + std::to_string(i) + "]");
  }
  const json& layers = detail::require(j, "layers", "");
  if (!layers.is_array() || layers.size() != p.layers.size()) {
    throw ConfigError("weight file: field 'layers' must hold " + std::to_string(p.layers.size()) + " entries");
  }
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    const std::string path = "layers[" + std::to_string(l) + "]";
    detail::read_dense(layers[l], p.layers[l].lin, path);
    p.layers[l].act = detail::read_rational(detail::require(layers[l], "act", path + "."), path + ".act");
  }
  detail::read_dense(detail::require(j, "head", ""), p.head, "head");
  return p;
}

inline NetParams read_weights(const std::string& path) {
  std::ifstream is(path);
  if (!is) {
    throw ConfigError("cannot open weight file '" + path + "'");
  }
  return read_weights(is);
}

}  // namespace rweno

#endif  // RWENO_RATNET_HPP_
