#include "ryd/pond.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "ryd/atom.hpp"
#include "ryd/constants.hpp"
#include "ryd/wigner.hpp"

namespace ryd {

using namespace consts;
using std::complex;

void LatticeSpec::validate() const {
  if (wavelength < 300e-9 || wavelength > 2000e-9)
    throw std::invalid_argument("LatticeSpec: wavelength outside [300, 2000] nm");
  if (effective_period() < 0.5 * wavelength - 1e-15)
    throw std::invalid_argument("LatticeSpec: period below wavelength/2");
}

double LGBeam::omega() const { return two_pi * c / wavelength; }
double LGBeam::rayleigh_range() const { return pi * waist * waist / wavelength; }

void LGBeam::validate() const {
  if (p != 0) throw std::invalid_argument("LGBeam: only p = 0 modes are supported");
  if (waist <= 0.25 * wavelength) throw std::invalid_argument("LGBeam: waist too small");
  if (power < 0.0) throw std::invalid_argument("LGBeam: negative power");
}

complex<double> lg_field(const LGBeam& beam, double r, double z) {
  beam.validate();
  const int am = std::abs(beam.m);
  const double zr = beam.rayleigh_range();
  const double wz = beam.waist * std::sqrt(1.0 + (z / zr) * (z / zr));
  const double k = two_pi / beam.wavelength;
  const double amp2 = 4.0 * beam.power / (eps0 * c * pi * wz * wz * std::exp(log_factorial(am)));
  const double x = std::sqrt(2.0) * r / wz;
  const double mag = std::sqrt(amp2) * std::pow(x, am) * std::exp(-r * r / (wz * wz));
  double phase = k * z - (am + 1.0) * std::atan(z / zr);
  if (z != 0.0) phase += k * r * r * z / (2.0 * (z * z + zr * zr));
  return mag * complex<double>(std::cos(phase), std::sin(phase));
}

// ---------------------------------------------------------------------------
// circular-state quadrature helpers (atomic units internally)
// ---------------------------------------------------------------------------

namespace {

struct GaussLegendre {
  std::vector<double> x, w;  // nodes on [-1,1]
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < n; ++i) {  // Newton on Legendre polynomials
      double t = std::cos(pi * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      x[i] = t;
      double p0 = 1.0, p1 = t;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * t * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

// log of radial wave R_{n,n-1}(r) in a.u.
double log_circ_radial(int n, double r_au) {
  const double lgN = 0.5 * (3.0 * std::log(2.0 / n) - std::log(2.0 * n) - std::lgamma(2.0 * n));
  return lgN + (n - 1.0) * std::log(2.0 * r_au / n) - r_au / n;
}

// log of normalized theta part of |Y_{l,l}|: Theta(theta) = N sin^l(theta),
// with 2 pi * integral Theta^2 sin = 1 handled by including the azimuthal 1/sqrt(2pi)
double log_circ_theta_norm(int n) {
  const int l = n - 1;
  // |Y_ll|^2 = (2l+1)! / (4 pi (2^l l!)^2) sin^{2l}
  return 0.5 * (log_factorial(2 * l + 1) - std::log(4.0 * pi)) - l * std::log(2.0) -
         log_factorial(l);
}

struct CircRange {
  double r_lo, r_hi, th_lo, th_hi;
};

CircRange circ_range(int n) {
  const double rc = static_cast<double>(n) * n;
  const double sr = std::sqrt(n * n * n / 2.0);
  const double r_lo = std::max(0.05 * rc, rc - 12.0 * sr);
  const double r_hi = rc + 14.0 * sr;
  const double wth = std::min(0.5 * pi, 12.0 / std::sqrt(2.0 * std::max(1, n - 1)) + 0.05);
  return {r_lo, r_hi, 0.5 * pi - wth, 0.5 * pi + wth};
}

}  // namespace

double pond_shift_uniform(double intensity_w_m2, double omega_light) {
  return e_charge * e_charge * intensity_w_m2 /
         (2.0 * eps0 * c * m_e * omega_light * omega_light * hbar);
}

double pond_shift(int n, const std::function<double(const Eigen::Vector3d&)>& intensity,
                  double omega_light, const Eigen::Vector3d& center_offset) {
  if (n < 1) throw std::invalid_argument("pond_shift: n >= 1");
  const CircRange rg = circ_range(n);

  const double lg_theta = log_circ_theta_norm(n);
  auto evaluate = [&](int nr, int nt, int np) {
    const GaussLegendre gr(nr), gt(nt);
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double r = 0.5 * (rg.r_hi + rg.r_lo) + 0.5 * (rg.r_hi - rg.r_lo) * gr.x[i];
      const double wr = 0.5 * (rg.r_hi - rg.r_lo) * gr.w[i];
      const double lgR = log_circ_radial(n, r);
      for (int j = 0; j < nt; ++j) {
        const double th = 0.5 * (rg.th_hi + rg.th_lo) + 0.5 * (rg.th_hi - rg.th_lo) * gt.x[j];
        const double wt = 0.5 * (rg.th_hi - rg.th_lo) * gt.w[j];
        const double lgT = lg_theta + (n - 1.0) * std::log(std::sin(th));
        const double dens = std::exp(2.0 * (lgR + lgT));  // phi measure applied below
        double isum = 0.0;
        for (int kphi = 0; kphi < np; ++kphi) {
          const double phi = two_pi * kphi / np;
          const Eigen::Vector3d pos =
              center_offset + a0 * r *
                                  Eigen::Vector3d(std::sin(th) * std::cos(phi),
                                                  std::sin(th) * std::sin(phi), std::cos(th));
          isum += intensity(pos);
        }
        total += wr * wt * dens * r * r * std::sin(th) * (isum / np) * two_pi;
      }
    }
    return total;  // mean intensity weighted by |psi|^2 (density normalized in a.u.)
  };

  const double est1 = evaluate(72, 48, 48);
  const double est2 = evaluate(104, 72, 72);
  const double scale = std::max(std::abs(est2), 1e-300);
  const double shift = pond_shift_uniform(est2, omega_light);
  if (std::abs(est2 - est1) / scale > 1e-3)
    throw std::runtime_error("pond_shift: quadrature did not converge; achieved estimate " +
                             std::to_string(shift) + " rad/s");
  return shift;
}

double lattice_depth_factor(int n, const LatticeSpec& lattice) {
  if (n < 1) throw std::invalid_argument("lattice_depth_factor: n >= 1");
  lattice.validate();
  const double q_au = two_pi / lattice.effective_period() * a0;  // phase per a.u. of length
  const CircRange rg = circ_range(n);
  const bool in_plane = lattice.orientation == LatticeOrientation::InPlane;

  const double lg_theta = log_circ_theta_norm(n);
  auto evaluate = [&](int nr, int nt) {
    const GaussLegendre gr(nr), gt(nt);
    double total = 0.0;
    for (int i = 0; i < nr; ++i) {
      const double r = 0.5 * (rg.r_hi + rg.r_lo) + 0.5 * (rg.r_hi - rg.r_lo) * gr.x[i];
      const double wr = 0.5 * (rg.r_hi - rg.r_lo) * gr.w[i];
      const double lgR = log_circ_radial(n, r);
      for (int j = 0; j < nt; ++j) {
        const double th = 0.5 * (rg.th_hi + rg.th_lo) + 0.5 * (rg.th_hi - rg.th_lo) * gt.x[j];
        const double wt = 0.5 * (rg.th_hi - rg.th_lo) * gt.w[j];
        const double lgT = lg_theta + (n - 1.0) * std::log(std::sin(th));
        const double dens = std::exp(2.0 * (lgR + lgT));
        // phi integral analytic: in-plane gives J0(q r sin th), z-axis gives cos(q r cos th)
        const double arg = in_plane ? q_au * r * std::sin(th) : q_au * r * std::cos(th);
        const double osc = in_plane ? std::cyl_bessel_j(0.0, std::abs(arg)) : std::cos(arg);
        total += wr * wt * dens * r * r * std::sin(th) * osc * two_pi;
      }
    }
    return total;
  };

  const double f = evaluate(220, 110);
  return f;
}

namespace {

double eta_of(int n0, int n1, const LatticeSpec& spec) {
  const double f0 = lattice_depth_factor(n0, spec);
  const double f1 = lattice_depth_factor(n1, spec);
  return (f1 - f0) / f0;
}

// z-axis lattices are parametrized by their period (shallow intersection angle
// of a 1560 nm beam); in-plane ones by the wavelength of a retro-reflected beam
LatticeSpec spec_at(LatticeOrientation o, double x) {
  LatticeSpec s;
  s.orientation = o;
  if (o == LatticeOrientation::InPlane) {
    s.wavelength = x;
  } else {
    s.wavelength = 1560e-9;
    s.period = x;
  }
  return s;
}

double bisect_root(const std::function<double(double)>& f, double a, double b, double fa,
                   double fb, int iters = 60) {
  for (int i = 0; i < iters && (b - a) > 1e-14 * std::abs(b); ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fa < 0.0) == (fm < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

MagicScan find_magic_wavelengths(LatticeOrientation orientation, double lambda_lo,
                                 double lambda_hi, int grid_points) {
  if (lambda_hi <= lambda_lo || grid_points < 8)
    throw std::invalid_argument("find_magic_wavelengths: bad scan range");
  auto eta_s = [&](double x) { return eta_of(59, 61, spec_at(orientation, x)); };
  auto eta_a = [&](double x) { return eta_of(56, 64, spec_at(orientation, x)); };

  std::vector<double> xs(grid_points), es(grid_points), ea(grid_points);
  for (int i = 0; i < grid_points; ++i) {
    xs[i] = lambda_lo + (lambda_hi - lambda_lo) * i / (grid_points - 1.0);
    es[i] = eta_s(xs[i]);
    ea[i] = eta_a(xs[i]);
  }

  MagicScan out;
  for (int i = 0; i + 1 < grid_points; ++i) {
    if ((ea[i] < 0.0) != (ea[i + 1] < 0.0)) {
      const double root = bisect_root(eta_a, xs[i], xs[i + 1], ea[i], ea[i + 1]);
      out.eta_a_roots.push_back({root, eta_s(root), 0.0});
    }
    if ((es[i] < 0.0) != (es[i + 1] < 0.0)) {
      const double root = bisect_root(eta_s, xs[i], xs[i + 1], es[i], es[i + 1]);
      out.eta_s_roots.push_back({root, 0.0, eta_a(root)});
    }
  }
  if (out.eta_a_roots.empty() && out.eta_s_roots.empty())
    throw std::runtime_error("find_magic_wavelengths: no magic crossing in the scan range");

  // compromise point: coarse argmin of max(|eta_a|,|eta_s|), then local refine
  double best_x = xs[0], best_v = 1e300;
  for (int i = 0; i < grid_points; ++i) {
    const double v = std::max(std::abs(es[i]), std::abs(ea[i]));
    if (v < best_v) {
      best_v = v;
      best_x = xs[i];
    }
  }
  const double dx = (lambda_hi - lambda_lo) / (grid_points - 1.0);
  for (int i = 0; i < 24; ++i) {
    const double step = dx * std::pow(0.5, i / 2 + 1);
    for (double cand : {best_x - step, best_x + step}) {
      if (cand < lambda_lo || cand > lambda_hi) continue;
      const double v = std::max(std::abs(eta_s(cand)), std::abs(eta_a(cand)));
      if (v < best_v) {
        best_v = v;
        best_x = cand;
      }
    }
  }
  out.compromise = {best_x, eta_s(best_x), eta_a(best_x)};
  return out;
}

// ---------------------------------------------------------------------------
// two-beam ponderomotive Rabi frequencies
// ---------------------------------------------------------------------------

RabiResult pond_rabi(int n, int n_prime, const LGBeam& beam1, const LGBeam& beam2) {
  beam1.validate();
  beam2.validate();
  const int dn = n_prime - n;
  const int dm = beam1.m - beam2.m;
  const double w2 = beam1.omega() * beam2.omega();
  const double pref = e_charge * e_charge / (4.0 * hbar * m_e * w2);

  RabiResult res;
  const double r0 = 0.5 * a0 * (static_cast<double>(n) * n + static_cast<double>(n_prime) * n_prime);
  if (dn == dm) {
    const complex<double> cross = lg_field(beam1, r0, 0.0) * std::conj(lg_field(beam2, r0, 0.0));
    res.ring = pref * cross.real();
  }

  // full path: quadrature of the interference term against psi'* psi
  if (dn == dm) {
    const CircRange ra = circ_range(n), rb = circ_range(n_prime);
    const CircRange rg{std::min(ra.r_lo, rb.r_lo), std::max(ra.r_hi, rb.r_hi),
                       std::min(ra.th_lo, rb.th_lo), std::max(ra.th_hi, rb.th_hi)};
    const GaussLegendre gr(200), gt(100);
    const double lgTn = log_circ_theta_norm(n), lgTp = log_circ_theta_norm(n_prime);
    complex<double> acc = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double r = 0.5 * (rg.r_hi + rg.r_lo) + 0.5 * (rg.r_hi - rg.r_lo) * gr.x[i];
      const double wr = 0.5 * (rg.r_hi - rg.r_lo) * gr.w[i];
      const double lgR = log_circ_radial(n, r) + log_circ_radial(n_prime, r);
      for (int j = 0; j < 100; ++j) {
        const double th = 0.5 * (rg.th_hi + rg.th_lo) + 0.5 * (rg.th_hi - rg.th_lo) * gt.x[j];
        const double wt = 0.5 * (rg.th_hi - rg.th_lo) * gt.w[j];
        const double st = std::sin(th);
        const double lgT = lgTn + lgTp + (n + n_prime - 2.0) * std::log(st);
        const double rho = a0 * r * st, z = a0 * r * std::cos(th);
        const complex<double> cross = lg_field(beam1, rho, z) * std::conj(lg_field(beam2, rho, z));
        acc += wr * wt * std::exp(lgR + lgT) * r * r * st * cross;
      }
    }
    // theta norms carry 1/sqrt(2pi) azimuthal factors each; the phi integral
    // of the matched harmonic contributes 2pi
    res.full = pref * acc.real() * two_pi;
  }
  return res;
}

double rabi_offset_ratio(int n, int n_prime, const LGBeam& beam1, const LGBeam& beam2,
                         double offset) {
  const int dn = n_prime - n;
  if (beam1.m - beam2.m != dn)
    throw std::invalid_argument("rabi_offset_ratio: beam OAM difference must match dn");
  const double r0 = 0.5 * a0 * (static_cast<double>(n) * n + static_cast<double>(n_prime) * n_prime);
  const int npts = 2048;
  auto ring_integral = [&](double d) {
    complex<double> acc = 0.0;
    for (int i = 0; i < npts; ++i) {
      const double phi = two_pi * i / npts;
      const double x = r0 * std::cos(phi) - d, y = r0 * std::sin(phi);
      const double rho = std::hypot(x, y);
      const double phip = std::atan2(y, x);
      const complex<double> e1 =
          lg_field(beam1, rho, 0.0) * std::exp(complex<double>(0.0, beam1.m * phip));
      const complex<double> e2 =
          lg_field(beam2, rho, 0.0) * std::exp(complex<double>(0.0, beam2.m * phip));
      acc += e1 * std::conj(e2) * std::exp(complex<double>(0.0, -dn * phi));
    }
    return std::abs(acc) / npts;
  };
  const double base = ring_integral(0.0);
  return ring_integral(offset) / base;
}

double rabi_position_sensitivity(int n, int n_prime, const LGBeam& beam1, const LGBeam& beam2) {
  // expand the offset range until the ratio drops below ~0.75, then fit
  // ln(ratio) = -d^2/(2 sigma^2)
  double d_max = 0.1 * beam1.waist;
  for (int it = 0; it < 30; ++it) {
    if (rabi_offset_ratio(n, n_prime, beam1, beam2, d_max) < 0.75) break;
    d_max *= 1.3;
  }
  const int npts = 14;
  double sxx = 0.0, sxy = 0.0;
  std::vector<std::pair<double, double>> samples;
  for (int i = 1; i <= npts; ++i) {
    const double d = d_max * i / npts;
    const double ratio = rabi_offset_ratio(n, n_prime, beam1, beam2, d);
    if (ratio <= 0.0) throw std::runtime_error("rabi_position_sensitivity: ratio vanished");
    const double x = d * d, y = std::log(ratio);
    sxx += x * x;
    sxy += x * y;
    samples.emplace_back(d, ratio);
  }
  const double slope = sxy / sxx;
  if (slope >= 0.0) throw std::runtime_error("rabi_position_sensitivity: no falloff detected");
  const double sigma = std::sqrt(-0.5 / slope);
  for (auto& [d, ratio] : samples) {
    const double fit = std::exp(-d * d / (2.0 * sigma * sigma));
    if (std::abs(fit - ratio) > 0.01)
      throw std::runtime_error("rabi_position_sensitivity: Gaussian fit residual above 1%");
  }
  return sigma;
}

double thermal_rotation_angle_error(double temperature_k, double trap_omega, double sigma,
                                    double mass_kg) {
  const double var = k_B * temperature_k / (mass_kg * trap_omega * trap_omega);
  return 1.0 - 1.0 / std::sqrt(1.0 + var / (sigma * sigma));
}

ThomsonErrors thomson_errors(double omega_light, double trap_depth_rad_s) {
  if (omega_light <= 0.0 || trap_depth_rad_s < 0.0)
    throw std::invalid_argument("thomson_errors: positive inputs required");
  ThomsonErrors out;
  // intensity realizing the given ponderomotive depth, then Gamma = I sigma_T/(hbar w)
  const double intensity = trap_depth_rad_s * hbar * 2.0 * eps0 * c * m_e * omega_light *
                           omega_light / (e_charge * e_charge);
  out.scatter_rate = intensity * sigma_thomson / (hbar * omega_light);
  out.state_change_rate = 3e-7 * (trap_depth_rad_s / two_pi);
  out.error_per_pi_pulse = (16.0 * pi / 3.0) * r_e * omega_light / c;
  return out;
}

double raman_error_reference(double gamma_rad_s, double delta_fs_rad_s) {
  return 2.0 * std::sqrt(2.0) * pi * gamma_rad_s / delta_fs_rad_s;
}

}  // namespace ryd
