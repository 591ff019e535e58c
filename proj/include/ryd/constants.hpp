#pragma once

// Physical constants (CODATA 2018), SI units throughout.
// Dynamics modules carry all energies as angular frequencies (rad/s);
// reporting layers divide by 2*pi.

namespace ryd::consts {

inline constexpr double c = 299792458.0;              // m/s
inline constexpr double h = 6.62607015e-34;           // J s
inline constexpr double hbar = 1.054571817e-34;       // J s
inline constexpr double e_charge = 1.602176634e-19;   // C
inline constexpr double m_e = 9.1093837015e-31;       // kg
inline constexpr double eps0 = 8.8541878128e-12;      // F/m
inline constexpr double k_B = 1.380649e-23;           // J/K
inline constexpr double mu_B = 9.2740100783e-24;      // J/T
inline constexpr double a0 = 5.29177210903e-11;       // m
inline constexpr double rydberg_inf_hz = 3.2898419602508e15;  // R_inf * c, Hz
inline constexpr double amu = 1.66053906660e-27;      // kg
inline constexpr double m_rb87 = 86.909180531 * amu;  // kg
inline constexpr double r_e = 2.8179403262e-15;       // classical electron radius, m
inline constexpr double sigma_thomson = 6.6524587321e-29;  // m^2
inline constexpr double hartree = 4.3597447222071e-18;     // J

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// conversion helpers
inline constexpr double gauss_to_tesla = 1e-4;
inline constexpr double v_per_cm_to_v_per_m = 100.0;

}  // namespace ryd::consts
