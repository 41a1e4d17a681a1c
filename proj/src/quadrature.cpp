#include "fermiwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace fermiwave {
namespace {

// 15-point Kronrod nodes/weights on [-1,1] with the embedded 7-point Gauss rule.
constexpr double xgk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
constexpr double wgk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
constexpr double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                          0.417959183673469};

struct Panel {
  double a, b;
  cplx value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx k{0.0, 0.0}, g{0.0, 0.0};
  for (int i = 0; i < 15; ++i) {
    const cplx fv = f(c + h * xgk[i]);
    k += wgk[i] * fv;
    if (i % 2 == 1) g += wg[(i - 1) / 2 < 3 ? (i - 1) / 2 : 6 - (i - 1) / 2] * fv;
  }
  k *= h;
  g *= h;
  return Panel{a, b, k, std::abs(k - g)};
}

}  // namespace

QuadratureResult integrate(const std::function<cplx(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  QuadratureResult res;
  if (a == b) return res;
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::vector<double> edges{a, b};
  for (double s : opts.split_points)
    if (s > a && s < b) edges.push_back(s);
  std::sort(edges.begin(), edges.end());

  std::priority_queue<Panel> heap;
  cplx total{0.0, 0.0};
  double err_total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = gk15(f, edges[i], edges[i + 1]);
    res.evaluations += 15;
    total += p.value;
    err_total += p.error;
    heap.push(p);
  }

  int splits = 0;
  while (err_total > std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) &&
         splits < opts.max_subdivisions && !heap.empty()) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) continue;  // interval at machine resolution
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    res.evaluations += 30;
    total += left.value + right.value - worst.value;
    err_total += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }

  res.value = sign * total;
  res.error = err_total;
  res.converged = err_total <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total)) * 10.0;
  return res;
}

double integrate_real(const std::function<double(double)>& f, double a, double b,
                      const QuadratureOptions& opts) {
  auto g = [&f](double x) { return cplx(f(x), 0.0); };
  return integrate(g, a, b, opts).value.real();
}

QuadratureResult integrate_2d(const std::function<cplx(double, double)>& f, double ax, double bx,
                              double ay, double by, const QuadratureOptions& inner,
                              const QuadratureOptions& outer) {
  long evals = 0;
  auto outer_f = [&](double y) {
    auto inner_f = [&](double x) { return f(x, y); };
    QuadratureResult r = integrate(inner_f, ax, bx, inner);
    evals += r.evaluations;
    return r.value;
  };
  QuadratureResult r = integrate(outer_f, ay, by, outer);
  r.evaluations += evals;
  return r;
}

void filon_moments(double theta, cplx m_out[3]) {
  if (std::abs(theta) < 1e-3) {
    // series in theta; keeps full double accuracy through theta -> 0
    const double t2 = theta * theta;
    m_out[0] = cplx(2.0 * (1.0 - t2 / 6.0 + t2 * t2 / 120.0), 0.0);
    m_out[1] = cplx(0.0, 2.0 * theta * (1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0));
    m_out[2] = cplx(2.0 * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0), 0.0);
    return;
  }
  const double s = std::sin(theta), c = std::cos(theta);
  m_out[0] = cplx(2.0 * s / theta, 0.0);
  m_out[1] = cplx(0.0, 2.0 * (s / (theta * theta) - c / theta));
  m_out[2] = cplx(2.0 * ((theta * theta - 2.0) * s + 2.0 * theta * c) / (theta * theta * theta), 0.0);
}

cplx filon_panel(cplx f0, cplx fm, cplx f1, double t0, double h, double w) {
  // quadratic through f(t0), f(t0+h/2), f(t0+h) integrated against e^{iwt}
  const double hh = 0.5 * h;
  const double tm = t0 + hh;
  cplx m[3];
  filon_moments(w * hh, m);
  const cplx c0 = fm;
  const cplx c1 = 0.5 * (f1 - f0);
  const cplx c2 = 0.5 * (f1 - 2.0 * fm + f0);
  return hh * std::exp(cplx(0.0, w * tm)) * (c0 * m[0] + c1 * m[1] + c2 * m[2]);
}

}  // namespace fermiwave
