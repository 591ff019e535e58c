#include "ryd/lifetime.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ryd/constants.hpp"

namespace ryd {

using namespace consts;

LdosModel LdosModel::bandstop(double p_min, double f_low_hz, double f_high_hz) {
  if (p_min < 0.0 || f_low_hz >= f_high_hz)
    throw std::invalid_argument("LdosModel::bandstop: invalid parameters");
  LdosModel m;
  m.kind = LdosKind::Bandstop;
  m.p_min = p_min;
  m.f_low_hz = f_low_hz;
  m.f_high_hz = f_high_hz;
  return m;
}

LdosModel LdosModel::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open LDOS table: " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("frequency_hz,P_sigma,P_pi", 0) != 0)
    throw std::runtime_error("LDOS table must start with header frequency_hz,P_sigma,P_pi");
  LdosModel m;
  m.kind = LdosKind::Tabulated;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string cell;
    double v[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(ss, cell, ',')) throw std::runtime_error("malformed LDOS row: " + line);
      v[i] = std::stod(cell);
    }
    if (!m.table_f_hz.empty() && v[0] <= m.table_f_hz.back())
      throw std::runtime_error("LDOS table frequencies must be strictly increasing");
    if (v[1] < 0.0 || v[2] < 0.0) throw std::runtime_error("LDOS table: negative Purcell factor");
    m.table_f_hz.push_back(v[0]);
    m.table_p_sigma.push_back(v[1]);
    m.table_p_pi.push_back(v[2]);
  }
  if (m.table_f_hz.size() < 2) throw std::runtime_error("LDOS table needs at least two rows");
  return m;
}

double purcell(const LdosModel& model, double frequency_hz, Polarization pol) {
  if (frequency_hz <= 0.0) throw std::invalid_argument("purcell: frequency must be positive");
  switch (model.kind) {
    case LdosKind::FreeSpace:
      return 1.0;
    case LdosKind::Bandstop:
      // closed-interval convention: band edges take the in-band value
      return (frequency_hz >= model.f_low_hz && frequency_hz <= model.f_high_hz) ? model.p_min
                                                                                 : 1.0;
    case LdosKind::Tabulated: {
      const auto& f = model.table_f_hz;
      if (frequency_hz < f.front() || frequency_hz > f.back())
        throw std::out_of_range("purcell: frequency outside tabulated range");
      const auto& p = (pol == Polarization::Pi) ? model.table_p_pi : model.table_p_sigma;
      auto hi = std::lower_bound(f.begin(), f.end(), frequency_hz);
      if (hi == f.begin()) return p.front();
      const size_t i1 = static_cast<size_t>(hi - f.begin());
      const size_t i0 = i1 - 1;
      if (i1 == f.size()) return p.back();
      const double t = (frequency_hz - f[i0]) / (f[i1] - f[i0]);
      // log-linear in P (clamp zeros to a floor to keep the interpolation defined)
      const double lp0 = std::log(std::max(p[i0], 1e-300));
      const double lp1 = std::log(std::max(p[i1], 1e-300));
      return std::exp(lp0 + t * (lp1 - lp0));
    }
  }
  throw std::logic_error("purcell: unreachable");
}

double pmin_from_conductivity(double sigma_s_per_m, double frequency_hz) {
  if (sigma_s_per_m <= 0.0) throw std::invalid_argument("pmin_from_conductivity: sigma > 0");
  const double omega = two_pi * frequency_hz;
  return 4.0 * std::sqrt(2.0 * eps0 * omega / sigma_s_per_m);
}

DecayRates total_decay_rate(int n, const LdosModel& model, double t_blackbody_k, int n_max,
                            Species species) {
  if (n_max < n + 3) throw std::invalid_argument("total_decay_rate: n_max must be >= n+3");
  const RydbergLevel from = circular_level(n, species);
  DecayRates out;
  for (const DipoleChannel& ch : dipole_channels(from, n_max)) {
    const double a_like = std::pow(ch.omega, 3) * ch.dipole_sq / (3.0 * pi * eps0 * hbar * c * c * c);
    double nbar = 0.0;
    if (t_blackbody_k > 0.0) {
      const double x = hbar * ch.omega / (k_B * t_blackbody_k);
      nbar = (x > 700.0) ? 0.0 : 1.0 / std::expm1(x);
    }
    const double p = purcell(model, ch.omega / two_pi, ch.pol);
    const double rate = ch.upward ? a_like * p * nbar : a_like * p * (1.0 + nbar);
    if (rate == 0.0) continue;
    out.breakdown.push_back({ch, rate});
    out.total += rate;
  }
  return out;
}

double useful_lifetime(double radiative_rate, double trap_depth_hz, double collision_rate) {
  if (radiative_rate < 0.0 || trap_depth_hz < 0.0 || collision_rate < 0.0)
    throw std::invalid_argument("useful_lifetime: rates must be nonnegative");
  const double total = radiative_rate + 3e-7 * trap_depth_hz + collision_rate;
  return 1.0 / total;
}

}  // namespace ryd
