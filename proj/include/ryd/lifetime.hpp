#pragma once

#include <string>
#include <vector>

#include "ryd/atom.hpp"

// Radiative lifetime of circular states under an engineered LDOS, plus the
// non-radiative budget (trap scattering, collisions).

namespace ryd {

enum class LdosKind { FreeSpace, Bandstop, Tabulated };

struct LdosModel {
  LdosKind kind = LdosKind::FreeSpace;
  double p_min = 1.0;       // in-band Purcell factor for the bandstop model
  double f_low_hz = 0.0;    // band edges (closed interval)
  double f_high_hz = 0.0;
  // tabulated rows, strictly increasing in frequency; log-linear interpolation
  std::vector<double> table_f_hz;
  std::vector<double> table_p_sigma;
  std::vector<double> table_p_pi;

  static LdosModel free_space() { return {}; }
  static LdosModel bandstop(double p_min, double f_low_hz, double f_high_hz);
  static LdosModel from_csv(const std::string& path);  // header frequency_hz,P_sigma,P_pi
};

// Purcell factor at `frequency` for the given polarization
double purcell(const LdosModel& model, double frequency_hz, Polarization pol);

// in-band floor from finite wall conductivity: 4 sqrt(2 eps0 omega / sigma)
double pmin_from_conductivity(double sigma_s_per_m, double frequency_hz);

struct ChannelRate {
  DipoleChannel channel;
  double rate = 0.0;  // 1/s
};

struct DecayRates {
  double total = 0.0;  // 1/s
  std::vector<ChannelRate> breakdown;
};

// sum over dipole channels of A * P(omega,pol) * (1+nbar) for emission and
// A-like * P * nbar for absorption, nbar = blackbody occupation at T_b
DecayRates total_decay_rate(int n, const LdosModel& model, double t_blackbody_k, int n_max,
                            Species species = Species::Hydrogenic);

// inverse of summed rates: radiative + 3e-7 * depth_Hz (trap scattering) + collision
double useful_lifetime(double radiative_rate, double trap_depth_hz, double collision_rate);

}  // namespace ryd
