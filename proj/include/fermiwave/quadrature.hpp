#pragma once

#include <functional>
#include <vector>

#include "fermiwave/types.hpp"

namespace fermiwave {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;
  // Interior points where the integrand is known to be singular or
  // discontinuous; intervals are pre-split there.
  std::vector<double> split_points{};
};

struct QuadratureResult {
  cplx value{0.0, 0.0};
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

/// Globally adaptive Gauss-Kronrod 7-15 on [a, b].
QuadratureResult integrate(const std::function<cplx(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Real-valued convenience wrapper.
double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const QuadratureOptions& opts = {});

/// Iterated 2D adaptive quadrature over [ax,bx] x [ay,by] (outer y, inner x).
QuadratureResult integrate_2d(const std::function<cplx(double, double)>& f, double ax, double bx,
                              double ay, double by, const QuadratureOptions& inner,
                              const QuadratureOptions& outer);

/// Moments of a quadratic Filon panel: given f at the endpoints and midpoint
/// of [t0, t0 + h], returns the exact integral of the interpolating quadratic
/// against e^{i w t}. Used to assemble time convolutions with oscillatory
/// kernels without resolving the kernel on the grid.
cplx filon_panel(cplx f0, cplx fm, cplx f1, double t0, double h, double w);

/// The three Legendre-basis moments for a panel of half-width hh at kernel
/// frequency theta = w*hh: M[m] = \int_{-1}^{1} u^m e^{i theta u} du.
void filon_moments(double theta, cplx m_out[3]);

}  // namespace fermiwave
