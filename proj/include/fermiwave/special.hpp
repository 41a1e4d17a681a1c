#pragma once

#include "fermiwave/types.hpp"

namespace fermiwave {

/// Exponential integral E1(z) for complex z with |arg z| < pi.
/// Power series for small |z|, modified-Lentz continued fraction otherwise.
cplx expint_e1(cplx z);

/// Screening-cloud kernel f(x) = -e^{ix} E1(ix) for x > 0.
cplx screening_kernel(double x);

/// Cosine and sine integrals for x > 0, computed independently of
/// expint_e1 (series / asymptotic expansion / direct quadrature), so the
/// two routes to f(x) can be cross-checked.
double cosine_integral(double x);
double sine_integral(double x);

/// f(x) assembled from Ci/Si: e^{ix}[Ci(x) + i(pi/2 - Si(x))].
cplx screening_kernel_cisi(double x);

}  // namespace fermiwave
