#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "csrap/model.hpp"

namespace csrap {

using Rational = boost::multiprecision::cpp_rational;

/// H(n) = 1 + 1/2 + ... + 1/n, exactly. Throws std::invalid_argument for n < 1.
Rational harmonic(int n);

/// Quantities that enter the approximation guarantees of the greedy scheduler.
struct BoundParams {
  int d_star = 0;        // largest coverage set
  Rational h_d_star = 0; // H(d_star); 0 when d_star is 0
  double r_max = 0.0;    // best robust rate among usable candidates
  double r_min = 0.0;    // worst nonzero robust rate among usable candidates

  /// H(d*) as a double.
  double harmonic_value() const;
  /// (r_max / r_min) * H(d*). Throws std::logic_error when no candidate exists.
  double relocation_factor() const;
};

BoundParams bound_params(const Scenario& scenario);

}  // namespace csrap
