#pragma once

#include <cmath>
#include <stdexcept>

// Angular momentum coefficients. Everything runs in log-factorial space so
// circular-state quantum numbers (l ~ 70, 3j arguments ~ 200) stay finite.

namespace ryd {

inline double log_factorial(int n) {
  if (n < 0) throw std::domain_error("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

// Wigner 3j symbol (l1 l2 l3; m1 m2 m3), integer arguments.
double wigner3j(int l1, int l2, int l3, int m1, int m2, int m3);

// <l2 m2| C_{k q} |l1 m1> with C_kq = sqrt(4pi/(2k+1)) Y_kq
double ckq_element(int l2, int m2, int k, int q, int l1, int m1);

// Wigner small-d matrix element d^j_{mp,m}(beta), integer j.
double wigner_small_d(int j, int mp, int m, double beta);

}  // namespace ryd
