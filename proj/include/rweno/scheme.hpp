#ifndef RWENO_SCHEME_HPP_
#define RWENO_SCHEME_HPP_

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "rweno/error.hpp"
#include "rweno/ratnet.hpp"
#include "rweno/reconstruct.hpp"

namespace rweno {

enum class SchemeKind { Weno3JS, Weno3Z, Weno5JS, Quick, Ideal3, NN };

/// A face-reconstruction rule. All rules are minus-side; plus-side values
/// come from mirroring the window.
struct Scheme {
  SchemeKind kind = SchemeKind::Weno3JS;
  double eps = kDefaultWenoEps;
  std::shared_ptr<const NetParams> net;
  std::string label;

  /// Ghost cells needed on each side of the domain.
  int halo() const { return kind == SchemeKind::Weno5JS ? 3 : 2; }

  /// Minus-side value at face i+1/2 from the window u[i-2] .. u[i+2].
  double minus(const Stencil5& w) const {
    const Stencil3 s = w.inner();
    switch (kind) {
      case SchemeKind::Weno3JS: return weno3_js(s, eps);
      case SchemeKind::Weno3Z: return weno3_z(s, eps);
      case SchemeKind::Weno5JS: return weno5_js(w, eps);
      case SchemeKind::Quick: return quick(s);
      case SchemeKind::Ideal3: return ideal3(s);
      case SchemeKind::NN: return nn_reconstruct(*net, s);
    }
    return 0.0;
  }

  /// Plus-side value at face i+1/2 from the window u[i-1] .. u[i+3].
  double plus(const Stencil5& w) const { return minus(w.reversed()); }

  const std::string& name() const { return label; }
};

inline constexpr std::array<std::string_view, 5> kClassicalSchemes{"weno3-js", "weno3-z", "weno5-js", "quick",
                                                                    "ideal3"};

inline std::string valid_scheme_list() {
  std::string s;
  for (auto n : kClassicalSchemes) {
    s += std::string(n) + ", ";
  }
  return s + "nn:<weights-path>";
}

inline Scheme nn_scheme(std::shared_ptr<const NetParams> net, std::string label = "nn") {
  Scheme s;
  s.kind = SchemeKind::NN;
  s.net = std::move(net);
  s.label = std::move(label);
  return s;
}

/// Builds a scheme from its CLI name; `nn:<path>` loads a weight file.
inline Scheme make_scheme(std::string_view name, double eps = kDefaultWenoEps) {
  Scheme s;
  s.eps = eps;
  s.label = std::string(name);
  if (name == "weno3-js") {
    s.kind = SchemeKind::Weno3JS;
  } else if (name == "weno3-z") {
    s.kind = SchemeKind::Weno3Z;
  } else if (name == "weno5-js") {
    s.kind = SchemeKind::Weno5JS;
  } else if (name == "quick") {
    s.kind = SchemeKind::Quick;
  } else if (name == "ideal3") {
    s.kind = SchemeKind::Ideal3;
  } else if (name.starts_with("nn:")) {
    return nn_scheme(std::make_shared<const NetParams>(read_weights(std::string(name.substr(3)))), s.label);
  } else {
    throw ConfigError("unknown scheme '" + std::string(name) + "'; valid schemes: " + valid_scheme_list());
  }
  return s;
}

}  // namespace rweno

#endif  // RWENO_SCHEME_HPP_
