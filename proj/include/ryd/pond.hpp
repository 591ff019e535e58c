#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

// Ponderomotive traps and drives: center-of-mass potentials from circular
// wavefunction averaging, lattice depth factors and magic-wavelength search,
// Laguerre-Gauss modes, two-beam Rabi frequencies, Thomson scattering errors.

namespace ryd {

enum class LatticeOrientation { InPlane, ZAxis };

struct LatticeSpec {
  double wavelength = 629e-9;  // m
  LatticeOrientation orientation = LatticeOrientation::InPlane;
  double period = 0.0;  // m; 0 means wavelength/2 (counter-propagating)
  double single_beam_intensity_w_cm2 = 0.0;

  double effective_period() const { return period > 0.0 ? period : 0.5 * wavelength; }
  void validate() const;
};

struct LGBeam {
  int p = 0;          // radial index (0 here)
  int m = 0;          // azimuthal index
  double waist = 1e-6;       // m
  double wavelength = 532e-9;  // m
  double power = 1e-3;       // W

  double omega() const;            // optical angular frequency, rad/s
  double rayleigh_range() const;   // m
  void validate() const;
};

// paraxial LG_{0m} amplitude at (r, z), azimuthal factor e^{im phi} excluded.
// Normalized so that (eps0 c / 2) integral |E|^2 dA = power at every z.
std::complex<double> lg_field(const LGBeam& beam, double r, double z);

// Eq.-(1)-style ponderomotive shift of |nC> for an arbitrary intensity profile
// (W/m^2), evaluated by quadrature against the circular density. rad/s.
double pond_shift(int n, const std::function<double(const Eigen::Vector3d&)>& intensity,
                  double omega_light, const Eigen::Vector3d& center_offset = Eigen::Vector3d::Zero());

// free-electron ponderomotive energy for uniform intensity, rad/s
double pond_shift_uniform(double intensity_w_m2, double omega_light);

// dimensionless lattice depth factor: integral of |psi_n|^2 cos(2 pi u / period)
double lattice_depth_factor(int n, const LatticeSpec& lattice);

struct MagicPoint {
  double wavelength = 0.0;  // m (or period for z-axis lattices)
  double eta_s = 0.0;
  double eta_a = 0.0;
};

struct MagicScan {
  std::vector<MagicPoint> eta_a_roots;
  std::vector<MagicPoint> eta_s_roots;
  MagicPoint compromise;  // minimizes max(|eta_a|, |eta_s|)
};

// eta = (U1-U0)/U0 per pair; storage pair (59,61), active pair (56,64)
MagicScan find_magic_wavelengths(LatticeOrientation orientation, double lambda_lo,
                                 double lambda_hi, int grid_points = 160);

struct RabiResult {
  double ring = 0.0;  // rad/s, ring-approximation path
  double full = 0.0;  // rad/s, full quadrature of the two-beam interference term
};

// two-beam ponderomotive Rabi frequency for |nC> -> |n'C| (co-propagating,
// common waist). Zero (ring path) unless n'-n equals the beam OAM difference.
RabiResult pond_rabi(int n, int n_prime, const LGBeam& beam1, const LGBeam& beam2);

// |Omega(offset)/Omega(0)| for a transverse offset of the atom (ring path)
double rabi_offset_ratio(int n, int n_prime, const LGBeam& beam1, const LGBeam& beam2,
                         double offset);

// Gaussian falloff length sigma of Omega(r)/Omega(0); throws if the Gaussian
// fit has residual above 1%
double rabi_position_sensitivity(int n, int n_prime, const LGBeam& beam1, const LGBeam& beam2);

// mean rotation-angle error for a thermal atom (1D transverse) given sigma
double thermal_rotation_angle_error(double temperature_k, double trap_omega, double sigma,
                                    double mass_kg);

struct ThomsonErrors {
  double scatter_rate = 0.0;        // 1/s
  double state_change_rate = 0.0;   // 1/s
  double error_per_pi_pulse = 0.0;  // dimensionless
};

// Thomson scattering of trap light: rate at given depth, state-change rate
// 3e-7 * depth_Hz, and the per-pi-pulse error (16 pi/3) r_e omega / c
ThomsonErrors thomson_errors(double omega_light, double trap_depth_rad_s);

// Raman-transition comparison figure 2 sqrt(2) pi Gamma / Delta_FS
double raman_error_reference(double gamma_rad_s, double delta_fs_rad_s);

}  // namespace ryd
