#include "fermiwave/lattice_green.hpp"

#include <Eigen/Dense>
#include <cstdio>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace {
fermiwave::cplx ipow(fermiwave::cplx base, long n) {
  fermiwave::cplx out{1.0, 0.0};
  for (long i = 0; i < n; ++i) out *= base;
  return out;
}
}  // namespace

namespace fermiwave {

double dispersion(const BathSpec& bath, double k) {
  if (bath.dimension != 1) throw validation_error("dispersion: 1D momentum for non-1D bath");
  return 2.0 * bath.hopping * (1.0 - std::cos(k));
}

double dispersion(const BathSpec& bath, double kx, double ky) {
  if (bath.dimension != 2) throw validation_error("dispersion: 2D momentum for non-2D bath");
  return 2.0 * bath.hopping * (2.0 - std::cos(kx) - std::cos(ky));
}

double dispersion(const BathSpec& bath, const std::vector<double>& k) {
  if (static_cast<int>(k.size()) != bath.dimension)
    throw validation_error("dispersion: momentum dimension mismatch");
  return bath.dimension == 1 ? dispersion(bath, k[0]) : dispersion(bath, k[0], k[1]);
}

RootPair palindromic_roots(cplx c, cplx dcdz, BoundarySide side) {
  const cplx s = std::sqrt(c * c - 4.0);
  cplx r1 = 0.5 * (-c + s);
  cplx r2 = 0.5 * (-c - s);
  // keep the product at exactly 1 where it matters
  if (std::abs(r1) > std::abs(r2))
    r2 = 1.0 / r1;
  else
    r1 = 1.0 / r2;

  const double a1 = std::abs(r1), a2 = std::abs(r2);
  const double tol = 1e-12;
  if (std::abs(a1 - 1.0) > tol || std::abs(a2 - 1.0) > tol) {
    return a1 < a2 ? RootPair{r1, r2} : RootPair{r2, r1};
  }
  // both roots on the unit circle: the branch-cut limit decides
  if (side == BoundarySide::none)
    throw numerical_error("palindromic_roots: z on the branch cut without side information");
  // y(z + i dz): d|y|^2 = -2 Im(conj(y) dy/dz) * dz, dy/dz = -y dcdz / (y - y_other)
  auto moves_inward = [&](cplx y, cplx other) {
    const cplx dydz = -y * dcdz / (y - other);
    const double d = -std::imag(std::conj(y) * dydz);
    return side == BoundarySide::above ? d < 0.0 : d > 0.0;
  };
  if (moves_inward(r1, r2)) return {r1, r2};
  if (moves_inward(r2, r1)) return {r2, r1};
  fprintf(stderr, "DBG degenerate: c=(%.17g,%.17g) dcdz=(%g,%g) side=%d\n", c.real(), c.imag(), dcdz.real(), dcdz.imag(), (int)side);
  throw numerical_error("palindromic_roots: degenerate roots on the unit circle");
}

namespace {

RootPair beta_roots_1d(const BathSpec& bath, ComplexEnergy z) {
  const double J = bath.hopping;
  return palindromic_roots(z.value / J - 2.0, cplx(1.0 / J, 0.0), z.side);
}

}  // namespace

cplx self_energy_1d(const BathSpec& bath, ComplexEnergy z, long r) {
  bath.validate();
  z.validate();
  if (bath.dimension != 1) throw validation_error("self_energy_1d: bath is not 1D");
  if (bath.coupling == 0.0) return {0.0, 0.0};
  const RootPair b = beta_roots_1d(bath, z);
  const cplx denom = b.in - b.out;
  if (std::abs(denom) < 1e-14)
    throw numerical_error("self_energy_1d: z at a band edge (divergent)");
  const double g = bath.coupling;
  return g * g * ipow(b.in, std::labs(r)) / (bath.hopping * denom);
}

cplx self_energy_1d_dz(const BathSpec& bath, ComplexEnergy z, long r) {
  if (bath.dimension != 1) throw validation_error("self_energy_1d_dz: bath is not 1D");
  if (bath.coupling == 0.0) return {0.0, 0.0};
  const double J = bath.hopping, g = bath.coupling;
  const RootPair b = beta_roots_1d(bath, z);
  const cplx D = b.in - b.out;
  if (std::abs(D) < 1e-14) throw numerical_error("self_energy_1d_dz: z at a band edge");
  const cplx bp = -b.in / (J * D);  // d beta_in / dz
  const double m = static_cast<double>(std::labs(r));
  const cplx bm = ipow(b.in, std::labs(r));
  // d/dz [ beta^m / D ],  dD/dz = bp (1 + beta^{-2})
  const cplx dD = bp * (1.0 + 1.0 / (b.in * b.in));
  return g * g * (m * bm / b.in * bp * D - bm * dD) / (J * D * D);
}

namespace {

// polynomial p(y; z, x) for the reduced 2D integral along direction (m0, n0)
void reduced_poly_coeffs(const BathSpec& bath, cplx z, cplx x, int m0, int n0,
                         std::vector<cplx>& a) {
  const int deg = 2 * m0;
  a.assign(deg + 1, cplx(0.0, 0.0));
  const cplx xm = ipow(x, m0), xn = ipow(x, n0);
  a[deg] += xn;
  a[m0 + n0] += 1.0 / xm;
  a[m0] += z / bath.hopping - 4.0;
  a[m0 - n0] += xm;
  a[0] += 1.0 / xn;
}

cplx poly_eval(const std::vector<cplx>& a, cplx y) {
  cplx v{0.0, 0.0};
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) v = v * y + a[i];
  return v;
}

cplx poly_deriv_eval(const std::vector<cplx>& a, cplx y) {
  cplx v{0.0, 0.0};
  for (int i = static_cast<int>(a.size()) - 1; i >= 1; --i)
    v = v * y + static_cast<double>(i) * a[i];
  return v;
}

std::vector<cplx> companion_roots(const std::vector<cplx>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -a[i] / a[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> roots(n);
  for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()(i);
  // one Newton polish per root; companion eigenvalues of high-degree
  // palindromic polynomials benefit from it near the unit circle
  for (auto& y : roots) {
    for (int it = 0; it < 3; ++it) {
      const cplx p = poly_eval(a, y), dp = poly_deriv_eval(a, y);
      if (std::abs(dp) == 0.0) break;
      const cplx step = p / dp;
      y -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(y))) break;
    }
  }
  return roots;
}

}  // namespace

cplx sigma_reduced_2d(const BathSpec& bath, ComplexEnergy z, double k, int m0, int n0) {
  const double J = bath.hopping, g = bath.coupling;
  const double g2J = g * g / J;

  if (m0 == 1 && n0 == 0) {
    const cplx c = z.value / J - 4.0 + 2.0 * std::cos(k);
    const RootPair y = palindromic_roots(c, cplx(1.0 / J, 0.0), z.side);
    return g2J / (y.in - y.out);
  }
  if (m0 == 1 && n0 == 1) {
    const double ck = std::cos(k);
    if (std::abs(ck) < 1e-12) return g * g / (z.value - 4.0 * J);
    // 2cos(k) y^2 + (z/J - 4) y + 2cos(k): rescale to palindromic form
    const cplx b = (z.value - 4.0 * J) / (2.0 * J * ck);
    const RootPair y = palindromic_roots(b, cplx(1.0 / (2.0 * J * ck), 0.0), z.side);
    return g2J / (2.0 * ck * (y.in - y.out));
  }

  const cplx x = std::exp(cplx(0.0, k));
  std::vector<cplx> a;
  reduced_poly_coeffs(bath, z.value, x, m0, n0, a);
  std::vector<cplx> roots = companion_roots(a);

  const double tol = 1e-12;
  std::vector<cplx> inside;
  for (const cplx& y : roots) {
    const double ay = std::abs(y);
    if (ay < 1.0 - tol) {
      inside.push_back(y);
    } else if (ay <= 1.0 + tol) {
      if (z.side == BoundarySide::none)
        throw numerical_error("sigma_reduced_2d: root on the unit circle without side info");
      // boundary limit: which way does the root move for z -> z + i*eps?
      const cplx dp = poly_deriv_eval(a, y);
      if (std::abs(dp) < 1e-10)
        throw numerical_error("sigma_reduced_2d: near-degenerate root on the unit circle");
      const cplx dydz = -(ipow(y, m0) / J) / dp;
      const double d = -std::imag(std::conj(y) * dydz);
      const bool inward = z.side == BoundarySide::above ? d < 0.0 : d > 0.0;
      if (inward) inside.push_back(y);
    }
  }
  if (static_cast<int>(inside.size()) != m0)
    throw numerical_error("sigma_reduced_2d: root classification failed (expected " +
                          std::to_string(m0) + " roots inside, got " +
                          std::to_string(inside.size()) + ")");

  cplx sum{0.0, 0.0};
  for (const cplx& y : inside) {
    const cplx dp = poly_deriv_eval(a, y);
    if (std::abs(dp) < 1e-12)
      throw numerical_error("sigma_reduced_2d: vanishing p'(y) at a residue");
    sum += ipow(y, m0 - 1) / dp;
  }
  return g2J * sum;
}

namespace {

// k values in [0, 2pi) where the reduced kernel's root pair touches the
// unit circle (1/sqrt singularities of the on-band integrand)
std::vector<double> reduced_singular_points(const BathSpec& bath, ComplexEnergy z, int m0,
                                            int n0) {
  std::vector<double> pts;
  if (std::abs(z.value.imag()) > 0.1 * bath.hopping) return pts;
  const double x = z.value.real();
  const double J = bath.hopping;
  auto push_acos = [&pts](double c) {
    if (c >= -1.0 && c <= 1.0) {
      const double ks = std::acos(c);
      pts.push_back(ks);
      if (ks > 1e-15 && ks < M_PI - 1e-15) pts.push_back(2.0 * M_PI - ks);
    }
  };
  if (m0 == 1 && n0 == 0) {
    const double u = x / J - 4.0;
    push_acos((2.0 - u) / 2.0);
    push_acos((-2.0 - u) / 2.0);
  } else if (m0 == 1 && n0 == 1) {
    push_acos((x - 4.0 * J) / (4.0 * J));
    push_acos(-(x - 4.0 * J) / (4.0 * J));
  } else {
    // generic direction: scan |y_j(k)| - 1 on a grid and refine minima
    const int ngrid = 1024;
    std::vector<double> dist(ngrid);
    auto min_dist = [&](double k) {
      std::vector<cplx> a;
      reduced_poly_coeffs(bath, z.value, std::exp(cplx(0.0, k)), m0, n0, a);
      double d = 1e9;
      for (const cplx& y : companion_roots(a)) d = std::min(d, std::abs(std::abs(y) - 1.0));
      return d;
    };
    for (int i = 0; i < ngrid; ++i) dist[i] = min_dist(2.0 * M_PI * i / ngrid);
    for (int i = 0; i < ngrid; ++i) {
      const double dm = dist[(i + ngrid - 1) % ngrid], d0 = dist[i], dp = dist[(i + 1) % ngrid];
      if (d0 <= dm && d0 <= dp && d0 < 0.05) {
        // golden-section refine the touch point
        double a = 2.0 * M_PI * (i - 1) / ngrid, b = 2.0 * M_PI * (i + 1) / ngrid;
        for (int it = 0; it < 60 && b - a > 1e-13; ++it) {
          const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
          if (min_dist(m1) < min_dist(m2))
            b = m2;
          else
            a = m1;
        }
        pts.push_back(std::fmod(0.5 * (a + b) + 2.0 * M_PI, 2.0 * M_PI));
      }
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

// integrate f over [0, 2pi) with sqrt substitutions at the listed interior
// singular points (and the interval ends), so integrable 1/sqrt
// singularities become regular
QuadratureResult integrate_sqrt_mapped(const std::function<cplx(double)>& f,
                                       std::vector<double> sing, const QuadratureOptions& opts) {
  std::vector<double> edges{0.0};
  for (double s : sing)
    if (s > 1e-12 && s < 2.0 * M_PI - 1e-12) edges.push_back(s);
  edges.push_back(2.0 * M_PI);
  std::sort(edges.begin(), edges.end());

  QuadratureResult total;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double a = edges[i], b = edges[i + 1];
    if (b - a < 1e-14) continue;
    const double mid = 0.5 * (a + b);
    auto left = [&](double u) { return f(a + u * u) * (2.0 * u); };
    auto right = [&](double u) { return f(b - u * u) * (2.0 * u); };
    QuadratureResult rl = integrate(left, 0.0, std::sqrt(mid - a), opts);
    QuadratureResult rr = integrate(right, 0.0, std::sqrt(b - mid), opts);
    total.value += rl.value + rr.value;
    total.error += rl.error + rr.error;
    total.evaluations += rl.evaluations + rr.evaluations;
    total.converged = total.converged && rl.converged && rr.converged;
  }
  return total;
}

}  // namespace

cplx self_energy_2d(const BathSpec& bath, ComplexEnergy z, LatticeVector r, Sigma2DMethod method,
                    QuadratureOptions opts) {
  bath.validate();
  z.validate();
  if (bath.dimension != 2) throw validation_error("self_energy_2d: bath is not 2D");
  if (bath.coupling == 0.0) return {0.0, 0.0};

  // lattice symmetries: Sigma(z, r) = Sigma(z, -r) = Sigma(z, (|y|,|x|))
  long m = std::labs(r.x), n = std::labs(r.y);
  if (m < n) std::swap(m, n);

  if (method == Sigma2DMethod::direct_quadrature) {
    if (z.on_axis() && z.value.real() > -1e-12 && z.value.real() < bath.band_top() + 1e-12)
      throw validation_error("self_energy_2d: direct quadrature invalid on the band; use reduced");
    const double g = bath.coupling;
    QuadratureOptions inner = opts, outer = opts;
    inner.abs_tol = std::min(opts.abs_tol, 1e-11);
    auto f = [&](double kx, double ky) {
      return g * g * std::exp(cplx(0.0, kx * m + ky * n)) /
             (z.value - dispersion(bath, kx, ky));
    };
    QuadratureResult res = integrate_2d(f, -M_PI, M_PI, -M_PI, M_PI, inner, outer);
    return res.value / (4.0 * M_PI * M_PI);
  }

  int m0 = 1, n0 = 0;
  long steps = 0;
  if (m != 0 || n != 0) {
    const long d = std::gcd(m, n);
    m0 = static_cast<int>(m / d);
    n0 = static_cast<int>(n / d);
    steps = d;
  }
  const double rp =
      static_cast<double>((static_cast<long>(m0) * m0 + static_cast<long>(n0) * n0) * steps);

  auto f = [&](double k) {
    return std::exp(cplx(0.0, k * rp)) * sigma_reduced_2d(bath, z, k, m0, n0);
  };
  QuadratureResult res;
  if (std::abs(z.value.imag()) <= 0.1 * bath.hopping) {
    res = integrate_sqrt_mapped(f, reduced_singular_points(bath, z, m0, n0), opts);
  } else {
    res = integrate(f, 0.0, 2.0 * M_PI, opts);
  }
  if (!res.converged)
    throw numerical_error("self_energy_2d: reduced integral did not converge");
  return res.value / (2.0 * M_PI);
}

cplx self_energy(const BathSpec& bath, ComplexEnergy z, LatticeVector r, Sigma2DMethod method,
                 QuadratureOptions opts) {
  if (bath.dimension == 1) return self_energy_1d(bath, z, r.x);
  return self_energy_2d(bath, z, r, method, opts);
}

cplx self_energy_e_dz(const BathSpec& bath, ComplexEnergy z, QuadratureOptions opts) {
  if (bath.dimension == 1) return self_energy_1d_dz(bath, z, 0);
  if (bath.coupling == 0.0) return {0.0, 0.0};
  const double J = bath.hopping, g = bath.coupling;
  if (z.value.imag() == 0.0 && z.value.real() > 0.0 && z.value.real() < bath.band_top())
    throw validation_error("self_energy_e_dz: derivative integrand not integrable on the band");
  // d/dz of (g^2/J) / (y_in - y_out)
  auto f = [&](double k) {
    const cplx c = z.value / J - 4.0 + 2.0 * std::cos(k);
    const RootPair y = palindromic_roots(c, cplx(1.0 / J, 0.0), z.side);
    const cplx D = y.in - y.out;
    return -g * g * c / (J * J * D * D * D);
  };
  QuadratureResult res;
  if (std::abs(z.value.imag()) <= 0.1 * bath.hopping) {
    // near-band z (pole refinement probes the edges): sqrt-map the near
    // singularities of the analytic continuation
    res = integrate_sqrt_mapped(f, reduced_singular_points(bath, z, 1, 0), opts);
  } else {
    res = integrate(f, 0.0, 2.0 * M_PI, opts);
  }
  if (!res.converged) throw numerical_error("self_energy_e_dz: integral did not converge");
  return res.value / (2.0 * M_PI);
}

double density_of_states(const BathSpec& bath, double energy, QuadratureOptions opts) {
  if (energy <= 0.0 || energy >= bath.band_top()) return 0.0;
  if (bath.dimension == 1) {
    const double kE = std::acos(1.0 - energy / (2.0 * bath.hopping));
    const double v = 2.0 * bath.hopping * std::sin(kE);
    if (v < 1e-300) throw numerical_error("density_of_states: band edge");
    return 1.0 / (M_PI * v);
  }
  BathSpec unit = bath;
  unit.coupling = 1.0;  // DOS is independent of g
  const cplx sig = self_energy_2d(unit, ComplexEnergy::above(energy), {0, 0},
                                  Sigma2DMethod::reduced_1d_integral, opts);
  return -sig.imag() / M_PI;
}

BandKinematics band_kinematics(const BathSpec& bath, double energy) {
  bath.validate();
  const double top = bath.band_top();
  const double edge_tol = 1e-12 * bath.hopping;
  if (energy <= edge_tol || energy >= top - edge_tol)
    throw numerical_error("band_kinematics: E at a band edge (Gamma diverges)");
  BandKinematics out;
  out.energy = energy;
  const double g = bath.coupling;
  if (bath.dimension == 1) {
    out.momentum = std::acos(1.0 - energy / (2.0 * bath.hopping));
    out.group_velocity = 2.0 * bath.hopping * std::sin(out.momentum);
    out.dos = 1.0 / (M_PI * out.group_velocity);
    out.decay_rate = g * g / (bath.hopping * std::sin(out.momentum));
    out.lamb_shift = 0.0;
    return out;
  }
  if (std::abs(energy - 4.0 * bath.hopping) < 1e-9 * bath.hopping)
    throw numerical_error("band_kinematics: 2D Van Hove point (Gamma diverges)");
  out.momentum = std::numeric_limits<double>::quiet_NaN();
  out.group_velocity = std::numeric_limits<double>::quiet_NaN();
  out.dos = density_of_states(bath, energy);
  if (g > 0.0) {
    const cplx sig = self_energy_2d(bath, ComplexEnergy::above(energy), {0, 0});
    out.decay_rate = -2.0 * sig.imag();
    out.lamb_shift = sig.real();
  }
  return out;
}

}  // namespace fermiwave
