#include "ryd/atom.hpp"

#include <algorithm>
#include <limits>
#include <tuple>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "ryd/constants.hpp"
#include "ryd/wigner.hpp"

namespace ryd {

using namespace consts;

void RydbergLevel::validate() const {
  if (n < 1 || l < 0 || l >= n || std::abs(m) > l)
    throw std::invalid_argument("RydbergLevel: invalid quantum numbers n=" + std::to_string(n) +
                                " l=" + std::to_string(l) + " m=" + std::to_string(m));
}

// ---------------------------------------------------------------------------
// quantum defects
// ---------------------------------------------------------------------------

namespace {

struct DefectRow {
  double d0 = 0.0, d2 = 0.0;
};

// fine-structure-averaged Rydberg-Ritz coefficients for Rb (weights 2j+1)
std::map<std::pair<Species, int>, DefectRow> g_defects = {
    {{Species::Rb87, 0}, {3.1311804, 0.1784}},
    {{Species::Rb87, 1}, {2.6460775, 0.2933}},
    {{Species::Rb87, 2}, {1.3471161, -0.5987}},
    {{Species::Rb87, 3}, {0.0165192, -0.0850}},
};
std::mutex g_defect_mutex;

Species parse_species(const std::string& s) {
  if (s == "Rb87") return Species::Rb87;
  if (s == "Hydrogenic" || s == "H") return Species::Hydrogenic;
  throw std::invalid_argument("unknown species '" + s + "'");
}

}  // namespace

double quantum_defect(Species sp, int n, int l) {
  if (sp == Species::Hydrogenic || l >= 4) return 0.0;
  std::lock_guard<std::mutex> lk(g_defect_mutex);
  auto it = g_defects.find({sp, l});
  if (it == g_defects.end()) return 0.0;
  const double d0 = it->second.d0;
  const double x = n - d0;
  return d0 + it->second.d2 / (x * x);
}

void load_quantum_defects(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open defect table: " + path);
  std::map<std::pair<Species, int>, DefectRow> table;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ss(line);
    std::string sp;
    int l;
    double d0, d2;
    if (!(ss >> sp >> l >> d0 >> d2)) continue;
    table[{parse_species(sp), l}] = {d0, d2};
  }
  if (table.empty()) throw std::runtime_error("defect table has no rows: " + path);
  std::lock_guard<std::mutex> lk(g_defect_mutex);
  g_defects = std::move(table);
}

double level_energy(const RydbergLevel& level) {
  level.validate();
  const double mass =
      (level.species == Species::Rb87) ? m_rb87 : std::numeric_limits<double>::infinity();
  const double ryd_hz = rydberg_inf_hz / (1.0 + m_e / mass);
  const double nstar = level.n - quantum_defect(level.species, level.n, level.l);
  return -two_pi * ryd_hz / (nstar * nstar);
}

// ---------------------------------------------------------------------------
// radial wavefunctions and matrix elements
// ---------------------------------------------------------------------------

namespace {

// log-magnitude + sign accumulator for sum of exp(logs); long double headroom
double signed_exp_sum(const std::vector<std::pair<double, int>>& terms, double* cancellation) {
  double lmax = -std::numeric_limits<double>::infinity();
  for (auto& [lg, s] : terms) lmax = std::max(lmax, lg);
  if (!std::isfinite(lmax)) {
    *cancellation = 0.0;
    return 0.0;
  }
  long double sum = 0.0L, abs_sum = 0.0L;
  for (auto& [lg, s] : terms) {
    const long double t = std::exp(static_cast<long double>(lg - lmax));
    sum += s * t;
    abs_sum += t;
  }
  *cancellation = (abs_sum > 0.0L) ? static_cast<double>(std::fabs(sum) / abs_sum) : 1.0;
  return static_cast<double>(sum) * std::exp(lmax);
}

// closed-form hydrogenic <n_a l_a| r^k |n_b l_b> in atomic units (Laguerre
// expansion, every factor in log space)
double radial_hydrogenic_au(int na, int la, int nb, int lb, int k) {
  const int nua = na - la - 1, nub = nb - lb - 1;
  const double lgNa = 0.5 * (3.0 * std::log(2.0 / na) + log_factorial(nua) -
                             std::log(2.0 * na) - log_factorial(na + la));
  const double lgNb = 0.5 * (3.0 * std::log(2.0 / nb) + log_factorial(nub) -
                             std::log(2.0 * nb) - log_factorial(nb + lb));
  const double lam = 1.0 / na + 1.0 / nb;
  std::vector<std::pair<double, int>> terms;
  terms.reserve((nua + 1) * (nub + 1));
  for (int i = 0; i <= nua; ++i) {
    // Laguerre L^{2l+1}_{nu}(x) = sum_i (-1)^i binom(nu+2l+1, nu-i) x^i / i!
    const double lgci = log_factorial(nua + 2 * la + 1) - log_factorial(nua - i) -
                        log_factorial(2 * la + 1 + i) - log_factorial(i);
    for (int j = 0; j <= nub; ++j) {
      const double lgcj = log_factorial(nub + 2 * lb + 1) - log_factorial(nub - j) -
                          log_factorial(2 * lb + 1 + j) - log_factorial(j);
      const int p = la + lb + i + j + k + 2;
      double lg = lgNa + lgNb + lgci + lgcj + (la + i) * std::log(2.0 / na) +
                  (lb + j) * std::log(2.0 / nb) + std::lgamma(p + 1.0) -
                  (p + 1.0) * std::log(lam);
      terms.emplace_back(lg, ((i + j) % 2) ? -1 : 1);
    }
  }
  double cancel = 1.0;
  const double value = signed_exp_sum(terms, &cancel);
  if (cancel < 1e-10) return std::numeric_limits<double>::quiet_NaN();  // caller falls back
  return value;
}

// Numerov integration (Coulomb approximation with effective n*) for defect
// states; returns u(r)=r R(r) on a uniform grid, normalized.
struct RadialWave {
  double r0 = 0.0, dr = 0.0;
  std::vector<double> u;
};

RadialWave numerov_wave(double nstar, int l) {
  const double energy = -0.5 / (nstar * nstar);
  const double r_max = 2.0 * nstar * (nstar + 15.0);
  const double dr = 0.01;
  const int n_pts = static_cast<int>(r_max / dr);
  auto f = [&](double r) { return l * (l + 1.0) / (r * r) - 2.0 / r - 2.0 * energy; };
  std::vector<double> u(n_pts, 0.0);
  u[n_pts - 1] = 0.0;
  u[n_pts - 2] = 1e-120;
  const double h2 = dr * dr / 12.0;
  auto r_of = [&](int i) { return dr * (i + 1); };
  for (int i = n_pts - 2; i >= 1; --i) {
    const double fm = f(r_of(i + 1)), f0 = f(r_of(i)), fp = f(r_of(i - 1));
    u[i - 1] = ((2.0 + 10.0 * h2 * f0) * u[i] - (1.0 - h2 * fm) * u[i + 1]) / (1.0 - h2 * fp);
    if (std::abs(u[i - 1]) > 1e200) {  // rescale to avoid overflow
      for (int j = i - 1; j < n_pts; ++j) u[j] *= 1e-100;
    }
  }
  // truncate the divergent core region: innermost minimum of |u| below the
  // inner classical turning point
  const double r_turn = (l > 0) ? (l * (l + 1.0)) / (1.0 + std::sqrt(1.0 + 2.0 * energy * l * (l + 1.0))) : 0.05;
  int i_cut = 0;
  double prev = std::abs(u[0]);
  for (int i = 1; r_of(i) < std::max(r_turn, 0.1) && i < n_pts - 2; ++i) {
    if (std::abs(u[i]) < prev) i_cut = i;
    prev = std::abs(u[i]);
  }
  for (int i = 0; i < i_cut; ++i) u[i] = 0.0;
  double norm = 0.0;
  for (int i = 0; i < n_pts; ++i) norm += u[i] * u[i] * dr;
  const double s = 1.0 / std::sqrt(norm);
  for (auto& x : u) x *= s;
  return {dr, dr, std::move(u)};
}

const RadialWave& cached_wave(Species sp, int n, int l) {
  static std::map<std::tuple<Species, int, int>, RadialWave> cache;
  static std::mutex mtx;
  std::lock_guard<std::mutex> lk(mtx);
  auto key = std::make_tuple(sp, n, l);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const double nstar = n - quantum_defect(sp, n, l);
    it = cache.emplace(key, numerov_wave(nstar, l)).first;
  }
  return it->second;
}

double radial_numerov_au(const RydbergLevel& a, const RydbergLevel& b, int k) {
  const RadialWave& wa = cached_wave(a.species, a.n, a.l);
  const RadialWave& wb = cached_wave(b.species, b.n, b.l);
  const size_t n = std::min(wa.u.size(), wb.u.size());
  double sum = 0.0;
  const double dr = wa.dr;
  for (size_t i = 0; i < n; ++i) {
    const double r = wa.r0 + dr * i;
    sum += wa.u[i] * wb.u[i] * std::pow(r, k) * dr;
  }
  return sum;
}

bool use_closed_form(const RydbergLevel& lv) {
  return quantum_defect(lv.species, lv.n, lv.l) == 0.0 && (lv.n - lv.l - 1) <= 10;
}

}  // namespace

double radial_matrix_element(const RydbergLevel& a, const RydbergLevel& b, int k) {
  a.validate();
  b.validate();
  double val_au = std::numeric_limits<double>::quiet_NaN();
  if (use_closed_form(a) && use_closed_form(b))
    val_au = radial_hydrogenic_au(a.n, a.l, b.n, b.l, k);
  if (std::isnan(val_au))  // defect states, high Laguerre degree, or cancellation
    val_au = radial_numerov_au(a, b, k);
  if (std::isnan(val_au)) throw std::runtime_error("radial_matrix_element: evaluation failed");
  return val_au * std::pow(a0, k);
}

// ---------------------------------------------------------------------------
// circular density
// ---------------------------------------------------------------------------

double circular_density(int n, double r_m, double theta) {
  if (n < 1) throw std::invalid_argument("circular_density: n >= 1");
  const double r = r_m / a0;  // atomic units
  if (r <= 0.0) return 0.0;
  const int l = n - 1;
  // log |R|^2 = log N^2 + 2(n-1) log(2r/n) - 2r/n
  const double lgN2 = 3.0 * std::log(2.0 / n) - std::log(2.0 * n) - log_factorial(n + l);
  const double lgR2 = lgN2 + 2.0 * l * std::log(2.0 * r / n) - 2.0 * r / n;
  // |Y_ll|^2 = (2l+1)!/(4pi) / (2^l l!)^2 * sin^{2l} theta
  const double st = std::abs(std::sin(theta));
  if (st == 0.0 && l > 0) return 0.0;
  const double lgY2 = log_factorial(2 * l + 1) - std::log(4.0 * pi) -
                      2.0 * (l * std::log(2.0) + log_factorial(l)) + 2.0 * l * std::log(st);
  const double dens_au = std::exp(lgR2 + lgY2);
  return dens_au / (a0 * a0 * a0);
}

double circular_peak_radius(int n) { return a0 * n * (n - 1.0); }

// ---------------------------------------------------------------------------
// single-atom Stark/Zeeman Hamiltonian in one manifold
// ---------------------------------------------------------------------------

ManifoldHamiltonian single_atom_hamiltonian(int n, const FieldConfig& fields, int m_min) {
  if (m_min < 0 || m_min > n - 1)
    throw std::invalid_argument("single_atom_hamiltonian: m_min out of range");
  std::vector<RydbergLevel> basis;
  for (int m = m_min; m <= n - 1; ++m)
    for (int l = std::abs(m); l <= n - 1; ++l) basis.push_back({n, l, m, Species::Hydrogenic});

  const int dim = static_cast<int>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const double Ez = fields.Ez_v_per_cm * v_per_cm_to_v_per_m;
  const double Bz = fields.Bz_gauss * gauss_to_tesla;
  for (int i = 0; i < dim; ++i) {
    h(i, i) = basis[i].m * mu_B * Bz / hbar;
    for (int j = i + 1; j < dim; ++j) {
      if (basis[i].m != basis[j].m || std::abs(basis[i].l - basis[j].l) != 1) continue;
      const double ang = ckq_element(basis[j].l, basis[j].m, 1, 0, basis[i].l, basis[i].m);
      const double rad = radial_matrix_element(basis[i], basis[j], 1);
      h(i, j) = h(j, i) = e_charge * Ez * rad * ang / hbar;
    }
  }
  return {std::move(basis), std::move(h)};
}

// ---------------------------------------------------------------------------
// dipole channels
// ---------------------------------------------------------------------------

std::vector<DipoleChannel> dipole_channels(const RydbergLevel& from, int n_max) {
  from.validate();
  const double e_from = level_energy(from);
  std::vector<DipoleChannel> out;
  for (int lp : {from.l - 1, from.l + 1}) {
    if (lp < 0) continue;
    for (int np = lp + 1; np <= n_max; ++np) {
      for (int mp = from.m - 1; mp <= from.m + 1; ++mp) {
        if (std::abs(mp) > lp) continue;
        const RydbergLevel to{np, lp, mp, from.species};
        const double e_to = level_energy(to);
        const double omega = e_to - e_from;
        if (std::abs(omega) < 1e-6) continue;  // degenerate, no radiative channel
        const int q = mp - from.m;
        const double ang = ckq_element(lp, mp, 1, q, from.l, from.m);
        if (ang == 0.0) continue;
        const double rad = radial_matrix_element(from, to, 1);
        const double dsq = e_charge * e_charge * rad * rad * ang * ang;
        const Polarization pol = (q == 1)    ? Polarization::SigmaPlus
                                 : (q == -1) ? Polarization::SigmaMinus
                                             : Polarization::Pi;
        out.push_back({to, pol, std::abs(omega), omega > 0.0, dsq});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const DipoleChannel& a, const DipoleChannel& b) {
    return std::tie(a.to.n, a.to.l, a.to.m) < std::tie(b.to.n, b.to.l, b.to.m);
  });
  return out;
}

}  // namespace ryd
