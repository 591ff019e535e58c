#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

// Hydrogenic Rydberg machinery: energies with quantum defects for low-l
// ancilla states, radial and angular matrix elements, circular densities,
// single-atom Stark/Zeeman Hamiltonians, dipole selection rules.

namespace ryd {

enum class Species { Hydrogenic, Rb87 };

struct RydbergLevel {
  int n = 1;
  int l = 0;
  int m = 0;
  Species species = Species::Hydrogenic;

  bool circular() const { return l == n - 1 && std::abs(m) == n - 1; }
  void validate() const;
};

inline RydbergLevel circular_level(int n, Species sp = Species::Hydrogenic) {
  return {n, n - 1, n - 1, sp};
}

struct FieldConfig {
  double Ez_v_per_cm = 0.0;
  double Bz_gauss = 0.0;
};

// Rydberg-Ritz defect series delta(n) = d0 + d2/(n-d0)^2, per (species, l).
// Circular and near-circular states (l >= 4) have defect 0.
double quantum_defect(Species sp, int n, int l);
// replace the built-in table from a versioned text file (columns: species l d0 d2)
void load_quantum_defects(const std::string& path);

// energy relative to ionization threshold, rad/s (reduced-mass corrected)
double level_energy(const RydbergLevel& level);

// <a| r^k |b> over radial wavefunctions, in m^k. Hydrogenic closed form in
// log space; low-l defect states integrate a Coulomb-approximation wave.
double radial_matrix_element(const RydbergLevel& a, const RydbergLevel& b, int k);

// |psi_nC(r,theta)|^2, 1/m^3
double circular_density(int n, double r_m, double theta);
// radius where the density |psi|^2 peaks, m
double circular_peak_radius(int n);

// Stark/Zeeman Hamiltonian in one n manifold over basis {|n,l,m> : m >= m_min},
// rad/s. Returns basis and Hermitian matrix (diagonal Zeeman, off-diagonal Stark).
struct ManifoldHamiltonian {
  std::vector<RydbergLevel> basis;
  Eigen::MatrixXd matrix;
};
ManifoldHamiltonian single_atom_hamiltonian(int n, const FieldConfig& fields, int m_min);

enum class Polarization { SigmaPlus, SigmaMinus, Pi };

struct DipoleChannel {
  RydbergLevel to;
  Polarization pol;
  double omega = 0.0;       // |transition angular frequency|, rad/s
  bool upward = false;      // final state above initial
  double dipole_sq = 0.0;   // |<f| e r C_1q |i>|^2, C^2 m^2
};

// all E1 channels from `from` with n' <= n_max
std::vector<DipoleChannel> dipole_channels(const RydbergLevel& from, int n_max);

}  // namespace ryd
