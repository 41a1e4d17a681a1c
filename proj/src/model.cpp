#include "fermiwave/model.hpp"

#include <vector>

#include "fermiwave/lattice_green.hpp"

namespace fermiwave {

SingleParticleHamiltonian build_model(const ModelSpec& spec) {
  spec.validate();
  if (!spec.lattice.is_finite())
    throw validation_error("build_model: finite lattice required");

  SingleParticleHamiltonian h;
  h.n_impurities = spec.n_impurities();
  h.length = spec.lattice.length;
  h.dimension = spec.bath.dimension;
  h.periodic = spec.lattice.periodic;

  const long L = h.length;
  const long nsites = h.n_sites();
  const long ntot = h.size();
  const double J = spec.bath.hopping;
  const double g = spec.bath.coupling;
  const double bath_diag = (h.dimension == 1 ? 2.0 : 4.0) * J;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(ntot) * (h.dimension == 1 ? 4 : 6));

  for (int n = 0; n < h.n_impurities; ++n) trip.emplace_back(n, n, spec.delta);
  for (long s = 0; s < nsites; ++s) {
    const long i = h.n_impurities + s;
    trip.emplace_back(i, i, bath_diag);
  }

  auto add_link = [&](long a, long b, double v) {
    trip.emplace_back(a, b, v);
    trip.emplace_back(b, a, v);
  };

  if (h.dimension == 1) {
    for (long x = 0; x + 1 < L; ++x)
      add_link(h.site_index({x, 0}), h.site_index({x + 1, 0}), -J);
    if (h.periodic && L > 2) add_link(h.site_index({L - 1, 0}), h.site_index({0, 0}), -J);
  } else {
    for (long x = 0; x < L; ++x)
      for (long y = 0; y < L; ++y) {
        const long i = h.site_index({x, y});
        if (x + 1 < L)
          add_link(i, h.site_index({x + 1, y}), -J);
        else if (h.periodic && L > 2)
          add_link(i, h.site_index({0, y}), -J);
        if (y + 1 < L)
          add_link(i, h.site_index({x, y + 1}), -J);
        else if (h.periodic && L > 2)
          add_link(i, h.site_index({x, 0}), -J);
      }
  }

  for (int n = 0; n < h.n_impurities; ++n)
    add_link(n, h.site_index(spec.impurity_sites[n]), g);

  h.matrix.resize(ntot, ntot);
  h.matrix.setFromTriplets(trip.begin(), trip.end());
  return h;
}

Eigen::MatrixXcd momentum_transform(const ModelSpec& spec) {
  spec.validate();
  if (!spec.lattice.is_finite() || !spec.lattice.periodic)
    throw validation_error("momentum_transform: finite periodic lattice required");
  const long L = spec.lattice.length;
  const int d = spec.bath.dimension;
  const long nsites = d == 1 ? L : L * L;
  const int ni = spec.n_impurities();
  const long ntot = ni + nsites;

  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(ntot, ntot);
  for (int n = 0; n < ni; ++n) U(n, n) = 1.0;
  const double norm = 1.0 / std::sqrt(static_cast<double>(nsites));
  if (d == 1) {
    for (long m = 0; m < L; ++m) {
      const double k = momentum_of_index(m, L);
      for (long x = 0; x < L; ++x)
        U(ni + x, ni + m) = norm * std::exp(cplx(0.0, k * x));
    }
  } else {
    for (long mx = 0; mx < L; ++mx)
      for (long my = 0; my < L; ++my) {
        const double kx = momentum_of_index(mx, L), ky = momentum_of_index(my, L);
        const long col = ni + mx * L + my;
        for (long x = 0; x < L; ++x)
          for (long y = 0; y < L; ++y)
            U(ni + x * L + y, col) = norm * std::exp(cplx(0.0, kx * x + ky * y));
      }
  }
  return U;
}

}  // namespace fermiwave
