#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fermiwave/lattice_green.hpp"
#include "fermiwave/quadrature.hpp"

using namespace fermiwave;

namespace {

// oracle: direct BZ quadrature of the defining integral, 1D
cplx sigma_1d_quadrature(const BathSpec& bath, cplx z, long r) {
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  opts.max_subdivisions = 20000;
  auto f = [&](double k) {
    return bath.coupling * bath.coupling * std::exp(cplx(0.0, k * r)) /
           (z - dispersion(bath, k));
  };
  return integrate(f, -M_PI, M_PI, opts).value / (2.0 * M_PI);
}

}  // namespace

TEST_CASE("dispersion band limits") {
  BathSpec b1{1, 1.0, 0.0};
  CHECK(dispersion(b1, 0.0) == doctest::Approx(0.0));
  CHECK(dispersion(b1, M_PI) == doctest::Approx(4.0));
  BathSpec b2{2, 1.0, 0.0};
  CHECK(dispersion(b2, M_PI / 2, M_PI / 2) == doctest::Approx(4.0));  // Van Hove energy
  CHECK(dispersion(b2, M_PI, M_PI) == doctest::Approx(8.0));
  CHECK_THROWS_AS((void)dispersion(b1, 0.0, 0.0), validation_error);
}

TEST_CASE("1D self-energy closed form") {
  SUBCASE("decoupled bath gives zero") {
    BathSpec b{1, 1.0, 0.0};
    CHECK(self_energy_1d(b, ComplexEnergy::at(cplx(1.0, 2.0)), 3) == cplx(0.0, 0.0));
  }
  SUBCASE("on-band value at k_Delta = pi/2") {
    BathSpec b{1, 1.0, 0.2};
    const cplx s = self_energy_1d(b, ComplexEnergy::above(2.0), 0);
    CHECK(std::abs(s - cplx(0.0, -0.02)) < 1e-14);
  }
  SUBCASE("below-band real value") {
    BathSpec b{1, 1.0, 1.0};
    const cplx s = self_energy_1d(b, ComplexEnergy::at(cplx(-2.0, 0.0)), 0);
    CHECK(s.real() == doctest::Approx(-1.0 / (2.0 * std::sqrt(3.0))).epsilon(1e-12));
    CHECK(std::abs(s.imag()) < 1e-14);
    // oracle: adaptive quadrature of the defining integral
    const cplx q = sigma_1d_quadrature(b, cplx(-2.0, 0.0), 0);
    CHECK(std::abs(s - q) < 1e-10);
  }
  SUBCASE("closed form vs quadrature off axis, r = 0..10") {
    BathSpec b{1, 1.0, 0.7};
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> re(-2.0, 6.0), im(0.05, 2.5);
    for (int trial = 0; trial < 25; ++trial) {
      const cplx z(re(rng), (trial % 2 ? 1.0 : -1.0) * im(rng));
      for (long r = 0; r <= 10; r += (trial % 3) + 1) {
        const cplx cf = self_energy_1d(b, ComplexEnergy::at(z), r);
        const cplx q = sigma_1d_quadrature(b, z, r);
        CHECK(std::abs(cf - q) < 1e-10);
      }
    }
  }
  SUBCASE("on-band modulus is r-independent: Gamma0/2") {
    BathSpec b{1, 1.0, 0.3};
    const double delta = 1.3;
    const double kd = std::acos(1.0 - delta / 2.0);
    const double gamma0 = b.coupling * b.coupling / (b.hopping * std::sin(kd));
    for (long r : {0L, 1L, 5L, 17L}) {
      const cplx s = self_energy_1d(b, ComplexEnergy::above(delta), r);
      CHECK(std::abs(s) == doctest::Approx(gamma0 / 2.0).epsilon(1e-12));
    }
  }
  SUBCASE("branch cut without side information throws") {
    BathSpec b{1, 1.0, 0.3};
    CHECK_THROWS_AS((void)self_energy_1d(b, ComplexEnergy::at(cplx(2.0, 0.0)), 0),
                    numerical_error);
  }
}

TEST_CASE("1D self-energy analytic derivative") {
  BathSpec b{1, 1.0, 0.5};
  for (cplx z : {cplx(1.0, 0.8), cplx(-1.5, 0.0), cplx(5.2, -0.3)}) {
    for (long r : {0L, 2L}) {
      const double h = 1e-6;
      const cplx num = (self_energy_1d(b, ComplexEnergy::at(z + h), r) -
                        self_energy_1d(b, ComplexEnergy::at(z - h), r)) /
                       (2.0 * h);
      const cplx an = self_energy_1d_dz(b, ComplexEnergy::at(z), r);
      CHECK(std::abs(num - an) < 1e-7 * (1.0 + std::abs(an)));
    }
  }
}

TEST_CASE("hermitian analyticity and r-symmetry") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> re(-2.0, 10.0), im(0.1, 2.0);
  SUBCASE("1D") {
    BathSpec b{1, 1.0, 0.4};
    for (int t = 0; t < 20; ++t) {
      const cplx z(re(rng), im(rng));
      const cplx a = self_energy_1d(b, ComplexEnergy::at(z), 3);
      const cplx c = self_energy_1d(b, ComplexEnergy::at(std::conj(z)), 3);
      CHECK(std::abs(c - std::conj(a)) < 1e-13);
      CHECK(std::abs(self_energy_1d(b, ComplexEnergy::at(z), -3) - a) < 1e-15);
    }
  }
  SUBCASE("2D, including (m,n) -> (n,m) and sign flips") {
    BathSpec b{2, 1.0, 0.4};
    for (int t = 0; t < 6; ++t) {
      const cplx z(re(rng), im(rng));
      const cplx a = self_energy_2d(b, ComplexEnergy::at(z), {2, 1});
      CHECK(std::abs(self_energy_2d(b, ComplexEnergy::at(std::conj(z)), {2, 1}) - std::conj(a)) <
            1e-9);
      CHECK(std::abs(self_energy_2d(b, ComplexEnergy::at(z), {1, 2}) - a) < 1e-9);
      CHECK(std::abs(self_energy_2d(b, ComplexEnergy::at(z), {-2, 1}) - a) < 1e-9);
    }
  }
}

TEST_CASE("2D reduced vs direct quadrature") {
  BathSpec b{2, 1.0, 1.0};
  QuadratureOptions opts;
  opts.abs_tol = 1e-10;

  SUBCASE("far off band, r = 0") {
    const cplx red = self_energy_2d(b, ComplexEnergy::at(cplx(10.0, 0.0)), {0, 0});
    const cplx dir = self_energy_2d(b, ComplexEnergy::at(cplx(10.0, 0.0)), {0, 0},
                                    Sigma2DMethod::direct_quadrature, opts);
    CHECK(std::abs(red - dir) / std::abs(dir) < 1e-8);
  }
  SUBCASE("asymptotics Sigma -> g^2/z") {
    const cplx s = self_energy_2d(b, ComplexEnergy::at(cplx(4e4, 0.0)), {0, 0});
    CHECK(std::abs(s - 1.0 / 4e4) / std::abs(s) < 1e-3);
  }
  SUBCASE("representative (m,n) grid off axis") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 0}, {1, 1}, {2, 1}, {3, 2}, {4, 0}}) {
      for (cplx z : {cplx(3.0, 1.2), cplx(-0.7, 0.4), cplx(9.1, -0.6)}) {
        const cplx red = self_energy_2d(b, ComplexEnergy::at(z), {m, n});
        const cplx dir =
            self_energy_2d(b, ComplexEnergy::at(z), {m, n}, Sigma2DMethod::direct_quadrature, opts);
        CHECK(std::abs(red - dir) <= 1e-6 * std::abs(dir) + 1e-12);
      }
    }
  }
  SUBCASE("on-band boundary values from reduced method, both sides conjugate") {
    const cplx above = self_energy_2d(b, ComplexEnergy::above(3.0), {1, 1});
    const cplx below = self_energy_2d(b, ComplexEnergy::below(3.0), {1, 1});
    CHECK(std::abs(above - std::conj(below)) < 1e-9);
    // retarded r=0 boundary value has negative imaginary part (DOS >= 0)
    CHECK(self_energy_2d(b, ComplexEnergy::above(3.0), {0, 0}).imag() < 0.0);
  }
}

TEST_CASE("2D derivative of Sigma_e") {
  BathSpec b{2, 1.0, 0.6};
  for (cplx z : {cplx(-1.0, 0.0), cplx(9.5, 0.0), cplx(4.0, 1.5)}) {
    const double h = 1e-5;
    const cplx num = (self_energy_2d(b, ComplexEnergy::at(z + h), {0, 0}) -
                      self_energy_2d(b, ComplexEnergy::at(z - h), {0, 0})) /
                     (2.0 * h);
    const cplx an = self_energy_e_dz(b, ComplexEnergy::at(z));
    CHECK(std::abs(num - an) < 1e-6 * (1.0 + std::abs(an)));
  }
}

TEST_CASE("boundary consistency: Richardson in epsilon vs closed boundary value") {
  BathSpec b{1, 1.0, 0.5};
  const double x = 1.7;
  const cplx limit = self_energy_1d(b, ComplexEnergy::above(x), 2);
  // Sigma(x + i eps) extrapolated to eps -> 0 (first-order Richardson)
  const cplx f1 = self_energy_1d(b, ComplexEnergy::at(cplx(x, 1e-4)), 2);
  const cplx f2 = self_energy_1d(b, ComplexEnergy::at(cplx(x, 5e-5)), 2);
  const cplx extrap = 2.0 * f2 - f1;
  CHECK(std::abs(extrap - limit) < 1e-6);
}

TEST_CASE("band kinematics") {
  SUBCASE("1D closed forms and Gamma = 2 pi g^2 rho") {
    BathSpec b{1, 1.0, 0.4};
    const BandKinematics kin = band_kinematics(b, 2.0);
    CHECK(kin.group_velocity == doctest::Approx(2.0));
    CHECK(kin.decay_rate == doctest::Approx(0.16));
    CHECK(kin.decay_rate ==
          doctest::Approx(2.0 * M_PI * b.coupling * b.coupling * kin.dos).epsilon(1e-12));
    // oracle: -2 Im of the quadrature Sigma
    const cplx q = sigma_1d_quadrature(b, cplx(2.0, 1e-9), 0);
    CHECK(kin.decay_rate == doctest::Approx(-2.0 * q.imag()).epsilon(1e-6));
    CHECK_THROWS_AS((void)band_kinematics(b, 0.0), numerical_error);
  }
  SUBCASE("DOS normalization, both dimensions") {
    QuadratureOptions opts;
    opts.abs_tol = 1e-9;
    opts.max_subdivisions = 8000;
    BathSpec b1{1, 1.0, 0.0};
    const double n1 =
        integrate_real([&](double e) { return density_of_states(b1, e); }, 1e-12, 4.0, opts);
    CHECK(n1 == doctest::Approx(1.0).epsilon(1e-6));
    BathSpec b2{2, 1.0, 0.0};
    QuadratureOptions o2;
    o2.abs_tol = 1e-7;
    o2.max_subdivisions = 2000;
    o2.split_points = {4.0};
    const double n2 =
        integrate_real([&](double e) { return density_of_states(b2, e); }, 1e-10, 8.0, o2);
    CHECK(n2 == doctest::Approx(1.0).epsilon(1e-5));
  }
  SUBCASE("2D log divergence near the Van Hove point") {
    BathSpec b{2, 1.0, 0.0};
    const double r1 = density_of_states(b, 4.0 - 1e-2);
    const double r2 = density_of_states(b, 4.0 - 1e-4);
    const double r3 = density_of_states(b, 4.0 - 1e-6);
    CHECK(r2 > r1);
    CHECK(r3 > r2);
    // log growth: equal increments per decade
    CHECK(std::abs((r3 - r2) - (r2 - r1)) < 0.25 * (r2 - r1));
    CHECK_THROWS_AS((void)band_kinematics(BathSpec{2, 1.0, 0.1}, 4.0), numerical_error);
  }
}
