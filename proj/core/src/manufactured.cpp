#include "serddr/manufactured.hpp"

#include <array>
#include <cmath>

namespace serddr {

namespace {

// Derivatives of order 0..5 of a(t) = sin^2(pi t).
std::array<double, 6> sin2_derivatives(double t) {
  const double pi = M_PI, s2 = std::sin(2 * pi * t), c2 = std::cos(2 * pi * t), s = std::sin(pi * t);
  return {s * s, pi * s2, 2 * pi * pi * c2, -4 * std::pow(pi, 3) * s2, -8 * std::pow(pi, 4) * c2,
          16 * std::pow(pi, 5) * s2};
}

}  // namespace

ManufacturedSolution quadrot_solution() {
  ManufacturedSolution m;
  m.phi = [](const Point& x) {
    const auto a = sin2_derivatives(x.x()), b = sin2_derivatives(x.y());
    return a[0] * b[0];
  };
  m.u = [](const Point& x) {
    const auto a = sin2_derivatives(x.x()), b = sin2_derivatives(x.y());
    return Eigen::Vector2d(a[0] * b[1], -a[1] * b[0]);
  };
  // rot u = -laplacian phi
  m.rot_u = [](const Point& x) {
    const auto a = sin2_derivatives(x.x()), b = sin2_derivatives(x.y());
    return -(a[2] * b[0] + a[0] * b[2]);
  };
  m.p = [](const Point& x) { return std::cos(M_PI * x.x()) * std::cos(M_PI * x.y()); };
  m.grad_p = [](const Point& x) {
    return Eigen::Vector2d(-M_PI * std::sin(M_PI * x.x()) * std::cos(M_PI * x.y()),
                           -M_PI * std::cos(M_PI * x.x()) * std::sin(M_PI * x.y()));
  };
  // f = rot_perp(bilaplacian phi) + grad p
  m.f = [gp = m.grad_p](const Point& x) -> Eigen::Vector2d {
    const auto a = sin2_derivatives(x.x()), b = sin2_derivatives(x.y());
    const double dy = a[4] * b[1] + 2 * a[2] * b[3] + a[0] * b[5];
    const double dx = a[5] * b[0] + 2 * a[3] * b[2] + a[1] * b[4];
    return Eigen::Vector2d(dy, -dx) + gp(x);
  };
  return m;
}

}  // namespace serddr
