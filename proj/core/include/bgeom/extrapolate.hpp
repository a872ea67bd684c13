#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bgeom {

/// Value at s = 0 of the interpolating polynomial through (s_i, f_i)
/// (Neville's scheme).
inline double neville_at_zero(std::span<const double> s, std::span<const double> f) {
  if (s.size() != f.size() || s.empty()) throw std::invalid_argument("neville: size mismatch");
  std::vector<double> p(f.begin(), f.end());
  const std::size_t n = s.size();
  for (std::size_t m = 1; m < n; ++m)
    for (std::size_t i = 0; i + m < n; ++i)
      p[i] = (s[i + m] * p[i] - s[i] * p[i + 1]) / (s[i + m] - s[i]);
  return p[0];
}

/// Default nodes in s = 1 - delta for boundary limits of smooth
/// delta-dependent quantities.
inline const std::vector<double>& default_limit_nodes() {
  static const std::vector<double> nodes{0.04, 0.02, 0.01, 0.005, 0.0025};
  return nodes;
}

/// lim_{delta -> 1-} f(delta) by polynomial extrapolation in s = 1 - delta.
inline double extrapolate_to_boundary(const std::function<double(double)>& f,
                                      std::span<const double> s_nodes) {
  std::vector<double> values;
  values.reserve(s_nodes.size());
  for (double s : s_nodes) values.push_back(f(1.0 - s));
  return neville_at_zero(s_nodes, values);
}

}  // namespace bgeom
