#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fermiwave {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};

/// Thrown when inputs violate a documented precondition.
struct validation_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot reach its target accuracy
/// or hits an ill-conditioned regime (band edges, Van Hove points, ...).
struct numerical_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Tight-binding bath: dimension d in {1,2}, hopping J > 0, impurity
/// coupling g >= 0. Single cosine band on [0, 2^{d+1} J].
struct BathSpec {
  int dimension = 1;
  double hopping = 1.0;   // J
  double coupling = 0.0;  // g

  double band_top() const { return (dimension == 1 ? 4.0 : 8.0) * hopping; }

  void validate() const {
    if (dimension != 1 && dimension != 2)
      throw validation_error("BathSpec: dimension must be 1 or 2");
    if (!(hopping > 0.0)) throw validation_error("BathSpec: hopping J must be > 0");
    if (coupling < 0.0) throw validation_error("BathSpec: coupling g must be >= 0");
  }
};

/// Which side of the real axis a nominally-real energy should be
/// approached from. Boundary values z = x +- i0+ are represented
/// exactly instead of with a small finite imaginary part.
enum class BoundarySide { none, above, below };

struct ComplexEnergy {
  cplx value{0.0, 0.0};
  BoundarySide side = BoundarySide::none;

  static ComplexEnergy at(cplx z) { return {z, BoundarySide::none}; }
  static ComplexEnergy above(double x) { return {cplx(x, 0.0), BoundarySide::above}; }
  static ComplexEnergy below(double x) { return {cplx(x, 0.0), BoundarySide::below}; }

  bool on_axis() const { return side != BoundarySide::none; }

  ComplexEnergy conj() const {
    BoundarySide s = side == BoundarySide::above   ? BoundarySide::below
                     : side == BoundarySide::below ? BoundarySide::above
                                                   : BoundarySide::none;
    return {std::conj(value), s};
  }

  void validate() const {
    if (side != BoundarySide::none && value.imag() != 0.0)
      throw validation_error("ComplexEnergy: boundary-side energies must be real");
  }
};

/// Lattice vector; y is ignored for 1D baths.
struct LatticeVector {
  long x = 0;
  long y = 0;
  bool operator==(const LatticeVector&) const = default;
};

struct LatticeSpec {
  enum class Kind { finite, thermodynamic };
  Kind kind = Kind::thermodynamic;
  long length = 0;       // sites per direction when finite
  bool periodic = true;  // open boundaries used for preparation protocols

  static LatticeSpec thermodynamic() { return {Kind::thermodynamic, 0, true}; }
  static LatticeSpec finite(long L, bool pbc = true) { return {Kind::finite, L, pbc}; }
  bool is_finite() const { return kind == Kind::finite; }
};

/// Full impurity-model parameterization shared by every module.
struct ModelSpec {
  BathSpec bath;
  double delta = 0.0;        // impurity on-site energy
  double fermi_level = 0.0;  // E_F; <= 0 empty bath, >= band top full bath
  std::vector<LatticeVector> impurity_sites{LatticeVector{0, 0}};
  LatticeSpec lattice = LatticeSpec::thermodynamic();
  double temperature = 0.0;  // initial-state temperature only

  int n_impurities() const { return static_cast<int>(impurity_sites.size()); }

  void validate() const {
    bath.validate();
    if (impurity_sites.empty()) throw validation_error("ModelSpec: need at least one impurity");
    if (temperature < 0.0) throw validation_error("ModelSpec: temperature must be >= 0");
    for (std::size_t a = 0; a < impurity_sites.size(); ++a)
      for (std::size_t b = a + 1; b < impurity_sites.size(); ++b)
        if (impurity_sites[a] == impurity_sites[b])
          throw validation_error("ModelSpec: impurity sites must be distinct");
    if (lattice.is_finite()) {
      if (lattice.length < 2) throw validation_error("ModelSpec: lattice length too small");
      for (const auto& r : impurity_sites) {
        if (r.x < 0 || r.x >= lattice.length ||
            (bath.dimension == 2 && (r.y < 0 || r.y >= lattice.length)))
          throw validation_error("ModelSpec: impurity site outside the finite lattice");
        if (bath.dimension == 1 && r.y != 0)
          throw validation_error("ModelSpec: 1D impurity sites must have y = 0");
      }
    }
  }
};

}  // namespace fermiwave
