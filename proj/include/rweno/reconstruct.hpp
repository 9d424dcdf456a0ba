#ifndef RWENO_RECONSTRUCT_HPP_
#define RWENO_RECONSTRUCT_HPP_

#include <array>
#include <cmath>
#include <concepts>
#include <utility>

namespace rweno {

/// Three consecutive cell averages (u[i-1], u[i], u[i+1]) feeding the
/// minus-side value at face i+1/2.
template <std::floating_point T>
struct BasicStencil3 {
  T m1{}, c{}, p1{};

  constexpr BasicStencil3 reversed() const { return {p1, c, m1}; }
  constexpr BasicStencil3 shifted(T s) const { return {m1 + s, c + s, p1 + s}; }
  constexpr bool operator==(const BasicStencil3&) const = default;
};

/// Five consecutive cell averages (u[i-2] .. u[i+2]).
template <std::floating_point T>
struct BasicStencil5 {
  std::array<T, 5> u{};

  constexpr BasicStencil5 reversed() const { return {{u[4], u[3], u[2], u[1], u[0]}}; }
  constexpr BasicStencil3<T> inner() const { return {u[1], u[2], u[3]}; }
  constexpr bool operator==(const BasicStencil5&) const = default;
};

/// Convex weights of the two WENO3 sub-stencils.
template <std::floating_point T>
struct BasicWeights2 {
  T w0{}, w1{};

  constexpr bool operator==(const BasicWeights2&) const = default;
};

using Stencil3 = BasicStencil3<double>;
using Stencil5 = BasicStencil5<double>;
using Weights2 = BasicWeights2<double>;

/// Ideal (linear) weights of the third-order upwind combination.
template <std::floating_point T = double>
inline constexpr BasicWeights2<T> kIdealWeights3{T(1) / T(3), T(2) / T(3)};

inline constexpr double kDefaultWenoEps = 1e-6;

/// Second-order sub-stencil interpolants u(0), u(1) at face i+1/2.
template <std::floating_point T>
constexpr std::pair<T, T> interpolants3(const BasicStencil3<T>& s) {
  return {(-s.m1 + T(3) * s.c) / T(2), (s.c + s.p1) / T(2)};
}

template <std::floating_point T>
constexpr std::pair<T, T> smoothness3(const BasicStencil3<T>& s) {
  const T d0 = s.c - s.m1;
  const T d1 = s.c - s.p1;
  return {d0 * d0, d1 * d1};
}

template <std::floating_point T>
BasicWeights2<T> weno3_js_weights(const BasicStencil3<T>& s, T eps = T(kDefaultWenoEps)) {
  const auto [b0, b1] = smoothness3(s);
  const T a0 = kIdealWeights3<T>.w0 / ((b0 + eps) * (b0 + eps));
  const T a1 = kIdealWeights3<T>.w1 / ((b1 + eps) * (b1 + eps));
  const T sum = a0 + a1;
  return {a0 / sum, a1 / sum};
}

/// WENO3-Z weights with the global indicator tau = |b0 - b1|.
template <std::floating_point T>
BasicWeights2<T> weno3_z_weights(const BasicStencil3<T>& s, T eps = T(kDefaultWenoEps)) {
  const auto [b0, b1] = smoothness3(s);
  const T tau = std::abs(b0 - b1);
  const T a0 = kIdealWeights3<T>.w0 * (T(1) + tau / (b0 + eps));
  const T a1 = kIdealWeights3<T>.w1 * (T(1) + tau / (b1 + eps));
  const T sum = a0 + a1;
  return {a0 / sum, a1 / sum};
}

template <std::floating_point T>
constexpr T reconstruct_minus(const BasicStencil3<T>& s, const BasicWeights2<T>& w) {
  const auto [u0, u1] = interpolants3(s);
  return w.w0 * u0 + w.w1 * u1;
}

/// Plus-side value at face i+1/2 from (u[i], u[i+1], u[i+2]), obtained by
/// mirroring: plus(a, b, c) == minus(c, b, a) for any minus-side rule.
template <std::floating_point T, typename MinusRule>
T reconstruct_plus(const BasicStencil3<T>& s, MinusRule&& minus) {
  return minus(s.reversed());
}

template <std::floating_point T>
T weno3_js(const BasicStencil3<T>& s, T eps = T(kDefaultWenoEps)) {
  return reconstruct_minus(s, weno3_js_weights(s, eps));
}

template <std::floating_point T>
T weno3_z(const BasicStencil3<T>& s, T eps = T(kDefaultWenoEps)) {
  return reconstruct_minus(s, weno3_z_weights(s, eps));
}

template <std::floating_point T>
constexpr T ideal3(const BasicStencil3<T>& s) {
  return reconstruct_minus(s, kIdealWeights3<T>);
}

/// QUICK in cell-average upwind form.
template <std::floating_point T>
constexpr T quick(const BasicStencil3<T>& s) {
  return (T(3) * s.p1 + T(6) * s.c - s.m1) / T(8);
}

/// Classical fifth-order WENO-JS minus-side face value at i+1/2.
template <std::floating_point T>
T weno5_js(const BasicStencil5<T>& s, T eps = T(kDefaultWenoEps)) {
  const auto& u = s.u;
  const T q0 = (T(2) * u[0] - T(7) * u[1] + T(11) * u[2]) / T(6);
  const T q1 = (-u[1] + T(5) * u[2] + T(2) * u[3]) / T(6);
  const T q2 = (T(2) * u[2] + T(5) * u[3] - u[4]) / T(6);

  const T c13_12 = T(13) / T(12);
  const T b0 = c13_12 * (u[0] - T(2) * u[1] + u[2]) * (u[0] - T(2) * u[1] + u[2]) +
               T(0.25) * (u[0] - T(4) * u[1] + T(3) * u[2]) * (u[0] - T(4) * u[1] + T(3) * u[2]);
  const T b1 = c13_12 * (u[1] - T(2) * u[2] + u[3]) * (u[1] - T(2) * u[2] + u[3]) +
               T(0.25) * (u[1] - u[3]) * (u[1] - u[3]);
  const T b2 = c13_12 * (u[2] - T(2) * u[3] + u[4]) * (u[2] - T(2) * u[3] + u[4]) +
               T(0.25) * (T(3) * u[2] - T(4) * u[3] + u[4]) * (T(3) * u[2] - T(4) * u[3] + u[4]);

  const T a0 = T(0.1) / ((b0 + eps) * (b0 + eps));
  const T a1 = T(0.6) / ((b1 + eps) * (b1 + eps));
  const T a2 = T(0.3) / ((b2 + eps) * (b2 + eps));
  return (a0 * q0 + a1 * q1 + a2 * q2) / (a0 + a1 + a2);
}

}  // namespace rweno

#endif  // RWENO_RECONSTRUCT_HPP_
