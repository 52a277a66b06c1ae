#pragma once

#include "serddr/polybasis.hpp"

namespace serddr {

/// Manufactured solution of (rot rot)^2 u + grad p = f, div u = 0 on the unit square:
/// u = rot_perp phi with phi = sin^2(pi x) sin^2(pi y), p = cos(pi x) cos(pi y).
struct ManufacturedSolution {
  ScalarFn phi;
  VectorFn u;
  ScalarFn rot_u;
  ScalarFn p;
  VectorFn grad_p;
  VectorFn f;
};

ManufacturedSolution quadrot_solution();

}  // namespace serddr
