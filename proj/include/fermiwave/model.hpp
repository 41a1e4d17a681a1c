#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "fermiwave/types.hpp"

namespace fermiwave {

/// Single-particle Hamiltonian on a finite lattice plus impurity modes.
/// Basis ordering is shared by every module: impurities first (in
/// ModelSpec order), then bath sites in row-major order (x*L + y in 2D).
struct SingleParticleHamiltonian {
  Eigen::SparseMatrix<double> matrix;
  int n_impurities = 0;
  long length = 0;
  int dimension = 1;
  bool periodic = true;

  long n_sites() const { return dimension == 1 ? length : length * length; }
  long size() const { return n_impurities + n_sites(); }
  long site_index(LatticeVector r) const {
    return n_impurities + (dimension == 1 ? r.x : r.x * length + r.y);
  }

  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

/// Materialize Eq.-style couplings: Delta on impurity diagonal, 2^d J on
/// the bath diagonal, -J nearest-neighbour bath links, g impurity-site links.
SingleParticleHamiltonian build_model(const ModelSpec& spec);

/// Unitary from the site basis to the bath momentum basis (impurity block
/// untouched). Conjugating the bath block of build_model(g=0) gives
/// diag(omega_k). Requires periodic boundaries. Momentum ordering:
/// k_m = 2 pi m / L, m = 0..L-1 (row-major (m_x, m_y) pairs in 2D).
Eigen::MatrixXcd momentum_transform(const ModelSpec& spec);

/// Momentum of the m-th mode for a finite ring of length L.
inline double momentum_of_index(long m, long L) { return 2.0 * M_PI * m / static_cast<double>(L); }

}  // namespace fermiwave
