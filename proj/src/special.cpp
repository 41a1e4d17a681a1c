#include "fermiwave/special.hpp"

#include <cmath>

#include "fermiwave/quadrature.hpp"

namespace fermiwave {

namespace {
constexpr double euler_gamma = 0.5772156649015328606;
}

cplx expint_e1(cplx z) {
  if (z == cplx(0.0, 0.0)) throw validation_error("expint_e1: z = 0");
  if (std::abs(z) <= 4.0) {
    // E1(z) = -gamma - ln z - sum (-z)^k / (k k!)
    cplx sum{0.0, 0.0}, term{1.0, 0.0};
    for (int k = 1; k < 80; ++k) {
      term *= -z / static_cast<double>(k);
      const cplx add = term / static_cast<double>(k);
      sum += add;
      if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -euler_gamma - std::log(z) - sum;
  }
  // continued fraction e^{-z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + ...)))))
  // evaluated with the modified Lentz algorithm
  const double tiny = 1e-300;
  cplx b = z + 1.0;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i <= 300; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

cplx screening_kernel(double x) {
  if (!(x > 0.0)) throw validation_error("screening_kernel: x must be > 0");
  return -std::exp(cplx(0.0, x)) * expint_e1(cplx(0.0, x));
}

namespace {

// auxiliary asymptotic sums for Ci/Si, optimally truncated
void cisi_asymptotic(double x, double& fa, double& ga) {
  // divergent asymptotic series: truncate at the smallest term
  double term_f = 1.0, term_g = 1.0, sf = 1.0, sg = 1.0;
  double prev_f = 1.0, prev_g = 1.0;
  bool done_f = false, done_g = false;
  const double x2 = x * x;
  for (int k = 1; k < 60 && !(done_f && done_g); ++k) {
    term_f *= -(2.0 * k - 1.0) * (2.0 * k) / x2;
    term_g *= -(2.0 * k) * (2.0 * k + 1.0) / x2;
    if (!done_f) {
      if (std::abs(term_f) >= prev_f)
        done_f = true;
      else {
        sf += term_f;
        prev_f = std::abs(term_f);
      }
    }
    if (!done_g) {
      if (std::abs(term_g) >= prev_g)
        done_g = true;
      else {
        sg += term_g;
        prev_g = std::abs(term_g);
      }
    }
  }
  fa = sf / x;
  ga = sg / x2;
}

}  // namespace

double cosine_integral(double x) {
  if (!(x > 0.0)) throw validation_error("cosine_integral: x must be > 0");
  if (x <= 8.0) {
    double sum = 0.0, term = 1.0;
    for (int k = 1; k < 60; ++k) {
      term *= -x * x / ((2.0 * k - 1.0) * (2.0 * k));
      const double add = term / (2.0 * k);
      sum += add;
      if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return euler_gamma + std::log(x) + sum;
  }
  if (x >= 25.0) {
    double fa, ga;
    cisi_asymptotic(x, fa, ga);
    return fa * std::sin(x) - ga * std::cos(x);
  }
  // intermediate range: Ci(x) = Ci(8) + int_8^x cos(t)/t dt
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  const double tail =
      integrate_real([](double t) { return std::cos(t) / t; }, 8.0, x, opts);
  return cosine_integral(8.0) + tail;
}

double sine_integral(double x) {
  if (!(x > 0.0)) throw validation_error("sine_integral: x must be > 0");
  if (x <= 8.0) {
    double sum = x, term = x;
    for (int k = 1; k < 60; ++k) {
      term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
      const double add = term / (2.0 * k + 1.0);
      sum += add;
      if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
  }
  if (x >= 25.0) {
    double fa, ga;
    cisi_asymptotic(x, fa, ga);
    return 0.5 * M_PI - fa * std::cos(x) - ga * std::sin(x);
  }
  QuadratureOptions opts;
  opts.abs_tol = 1e-14;
  const double tail =
      integrate_real([](double t) { return std::sin(t) / t; }, 8.0, x, opts);
  return sine_integral(8.0) + tail;
}

cplx screening_kernel_cisi(double x) {
  const cplx bracket(cosine_integral(x), 0.5 * M_PI - sine_integral(x));
  return std::exp(cplx(0.0, x)) * bracket;
}

}  // namespace fermiwave
