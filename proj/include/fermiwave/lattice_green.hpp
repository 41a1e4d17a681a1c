#pragma once

#include "fermiwave/quadrature.hpp"
#include "fermiwave/types.hpp"

namespace fermiwave {

/// Bath dispersion; k components in [-pi, pi].
double dispersion(const BathSpec& bath, double k);
double dispersion(const BathSpec& bath, double kx, double ky);
double dispersion(const BathSpec& bath, const std::vector<double>& k);

struct SelfEnergyValue {
  cplx sigma{0.0, 0.0};
};

enum class Sigma2DMethod { reduced_1d_integral, direct_quadrature };

/// In/out root pair of beta^2 + (z/J - 2W + 2 t cos k) beta + 1 style
/// palindromic quadratics; |in| <= 1 <= |out|, in*out = 1.
struct RootPair {
  cplx in, out;
};

/// Roots of beta^2 + c*beta + 1 = 0 classified against the unit circle.
/// dcdz is used to resolve the boundary limit when |roots| = 1 and the
/// energy carries side information; side == none on the cut throws.
RootPair palindromic_roots(cplx c, cplx dcdz, BoundarySide side);

/// 1D closed form, Sigma(z, r) = g^2 beta_in^{|r|} / (J [beta_in - beta_out]).
cplx self_energy_1d(const BathSpec& bath, ComplexEnergy z, long r);
/// Analytic z-derivative of the 1D closed form.
cplx self_energy_1d_dz(const BathSpec& bath, ComplexEnergy z, long r);

/// k_perp-integrated kernel sigma(z, k) for the lattice direction
/// (m0, n0), m0 >= n0 >= 0 coprime: residue sum over the roots of the
/// degree-2*m0 polynomial p(y; z, x=e^{ik}) inside the unit circle.
/// Closed forms are used for (1,0) and (1,1).
cplx sigma_reduced_2d(const BathSpec& bath, ComplexEnergy z, double k, int m0, int n0);

cplx self_energy_2d(const BathSpec& bath, ComplexEnergy z, LatticeVector r,
                    Sigma2DMethod method = Sigma2DMethod::reduced_1d_integral,
                    QuadratureOptions opts = {});

/// Dimension dispatch; r.y ignored for 1D baths.
cplx self_energy(const BathSpec& bath, ComplexEnergy z, LatticeVector r = {},
                 Sigma2DMethod method = Sigma2DMethod::reduced_1d_integral,
                 QuadratureOptions opts = {});

/// d Sigma_e / dz at r = 0 (analytic in 1D, differentiated reduced
/// integrand in 2D); needed for pole residues.
cplx self_energy_e_dz(const BathSpec& bath, ComplexEnergy z, QuadratureOptions opts = {});

/// Density of states per site (independent of g; zero outside the band).
double density_of_states(const BathSpec& bath, double energy, QuadratureOptions opts = {});

struct BandKinematics {
  double energy = 0.0;
  double momentum = 0.0;        // k_E, 1D only
  double group_velocity = 0.0;  // v_E, 1D only
  double decay_rate = 0.0;      // Gamma_E = -2 Im Sigma_e(E+)
  double lamb_shift = 0.0;      // Re Sigma_e(E+)
  double dos = 0.0;
};

/// Band quantities at energy E inside the band. Throws at band edges and
/// at the 2D Van Hove point E = 4J, where Gamma diverges.
BandKinematics band_kinematics(const BathSpec& bath, double energy);

}  // namespace fermiwave
