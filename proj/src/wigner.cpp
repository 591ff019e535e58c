#include "ryd/wigner.hpp"

#include <algorithm>

namespace ryd {

double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3) {
  if (m1 + m2 + m3 != 0) return 0.0;
  if (l3 < std::abs(l1 - l2) || l3 > l1 + l2) return 0.0;
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) return 0.0;

  // Racah formula
  const double lg_delta = 0.5 * (log_factorial(l1 + l2 - l3) + log_factorial(l1 - l2 + l3) +
                                 log_factorial(-l1 + l2 + l3) - log_factorial(l1 + l2 + l3 + 1));
  const double lg_pref = 0.5 * (log_factorial(l1 + m1) + log_factorial(l1 - m1) +
                                log_factorial(l2 + m2) + log_factorial(l2 - m2) +
                                log_factorial(l3 + m3) + log_factorial(l3 - m3));
  const int t_min = std::max({0, l2 - l3 - m1, l1 - l3 + m2});
  const int t_max = std::min({l1 + l2 - l3, l1 - m1, l2 + m2});
  double sum = 0.0;
  for (int t = t_min; t <= t_max; ++t) {
    const double lg = log_factorial(t) + log_factorial(l3 - l2 + m1 + t) +
                      log_factorial(l3 - l1 - m2 + t) + log_factorial(l1 + l2 - l3 - t) +
                      log_factorial(l1 - m1 - t) + log_factorial(l2 + m2 - t);
    const double term = std::exp(lg_delta + lg_pref - lg);
    sum += ((t % 2) ? -term : term);
  }
  const int phase = l1 - l2 - m3;
  return ((phase % 2) ? -sum : sum);
}

double ckq_element(int l2, int m2, int k, int q, int l1, int m1) {
  if (m2 != m1 + q) return 0.0;
  const double w1 = wigner3j(l2, k, l1, 0, 0, 0);
  if (w1 == 0.0) return 0.0;
  const double w2 = wigner3j(l2, k, l1, -m2, q, m1);
  const double val = std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0)) * w1 * w2;
  return ((m2 % 2) ? -val : val);
}

double wigner_small_d(int j, int mp, int m, double beta) {
  if (std::abs(mp) > j || std::abs(m) > j) return 0.0;
  const double pref = 0.5 * (log_factorial(j + m) + log_factorial(j - m) +
                             log_factorial(j + mp) + log_factorial(j - mp));
  const double cb = std::cos(0.5 * beta), sb = std::sin(0.5 * beta);
  const int k_min = std::max(0, m - mp);
  const int k_max = std::min(j + m, j - mp);
  double sum = 0.0;
  for (int k = k_min; k <= k_max; ++k) {
    const double lg = log_factorial(j + m - k) + log_factorial(k) +
                      log_factorial(mp - m + k) + log_factorial(j - mp - k);
    double term = std::exp(pref - lg) * std::pow(cb, 2 * j + m - mp - 2 * k) *
                  std::pow(sb, mp - m + 2 * k);
    sum += (((mp - m + k) % 2) ? -term : term);
  }
  return sum;
}

}  // namespace ryd
