#pragma once

#include <cstddef>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "outerprod/outerprod.hpp"

namespace testutil {

using namespace outerprod;

inline Vector random_vector(SplitMix64& rng, std::size_t dim, double scale = 5.0) {
  Vector v;
  v.coords.resize(dim);
  for (double& x : v.coords) x = rng.uniform(-scale, scale);
  return v;
}

inline std::vector<NormKind> all_norm_kinds() {
  return {NormKind::euclidean(), NormKind::one(), NormKind::sup(), NormKind::p_norm(2.5),
          NormKind::p_norm(1.5)};
}

// An admissible pair with the nonzero eigenvalue inside [||a||, ||b||]:
// a = (1.5, 0), b on the circle of radius 2.5 with <a,b> = target.
inline std::pair<Vector, Vector> interior_eigenvalue_pair(double target = 1.8) {
  const double bx = target / 1.5;
  const double by = std::sqrt(2.5 * 2.5 - bx * bx);
  return {Vector{1.5, 0.0}, Vector{bx, by}};
}

}  // namespace testutil
