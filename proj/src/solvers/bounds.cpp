#include "csrap/bounds.hpp"

#include <algorithm>
#include <stdexcept>

#include "csrap/solvers.hpp"

namespace csrap {

Rational harmonic(int n) {
  if (n < 1) throw std::invalid_argument("harmonic: n must be >= 1");
  Rational sum = 0;
  for (int i = 1; i <= n; ++i) sum += Rational(1, i);
  return sum;
}

double BoundParams::harmonic_value() const { return h_d_star.convert_to<double>(); }

double BoundParams::relocation_factor() const {
  if (!(r_min > 0.0)) throw std::logic_error("bound_params: instance has no usable candidate");
  return r_max / r_min * harmonic_value();
}

BoundParams bound_params(const Scenario& scenario) {
  BoundParams p;
  for (const auto& cam : scenario.cameras)
    p.d_star = std::max(p.d_star, static_cast<int>(cam.coverage.size()));
  p.h_d_star = p.d_star > 0 ? harmonic(p.d_star) : Rational(0);

  const auto table = CandidateTable::build(scenario);
  bool any = false;
  for (const auto& list : table.by_camera) {
    for (const auto& a : list) {
      if (!any) {
        p.r_max = p.r_min = a.robust_rate;
        any = true;
      }
      p.r_max = std::max(p.r_max, a.robust_rate);
      p.r_min = std::min(p.r_min, a.robust_rate);
    }
  }
  return p;
}

}  // namespace csrap
