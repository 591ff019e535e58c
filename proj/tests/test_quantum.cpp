#include "doctest.h"

#include <Eigen/Dense>
#include <complex>

#include "ryd/constants.hpp"
#include "ryd/quantum.hpp"
#include "ryd/rng.hpp"

using namespace ryd;
using namespace std::complex_literals;

namespace {

Mat pauli(char a) {
  Mat s(2, 2);
  switch (a) {
    case 'x': s << 0, 1, 1, 0; break;
    case 'y': s << 0, -1i, 1i, 0; break;
    case 'z': s << 1, 0, 0, -1; break;
    default: s.setIdentity();
  }
  return s;
}

// independent dense Kronecker-product oracle
Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat random_mat(int dim, uint64_t seed) {
  Prng rng(seed);
  Mat m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = cxd(rng.gauss(), rng.gauss());
  return m;
}

}  // namespace

TEST_CASE("embed_operator identity and site conventions") {
  CHECK((embed_operator(Mat::Identity(2, 2), 1, 3, 2) - Mat::Identity(8, 8)).norm() == 0.0);

  // Pauli-Z at site 0 of 2 qubits, site 0 slowest: diag(1,1,-1,-1)
  const Mat z0 = embed_operator(pauli('z'), 0, 2, 2);
  Eigen::Vector4cd want(1, 1, -1, -1);
  CHECK((z0.diagonal() - want).norm() == 0.0);
  CHECK(z0.cwiseAbs().sum() == doctest::Approx(4.0));

  // trace identity and agreement with a Kronecker oracle for random A
  const Mat a = random_mat(3, 7);
  const Mat e = embed_operator(a, 1, 3, 3);
  CHECK(std::abs(e.trace() - a.trace() * 9.0) < 1e-12 * std::abs(a.trace() * 9.0) + 1e-12);
  const Mat oracle = kron(kron(Mat::Identity(3, 3), a), Mat::Identity(3, 3));
  CHECK((e - oracle).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS(embed_operator(a, 0, 2, 2));   // dimension mismatch
  CHECK_THROWS(embed_operator(a, 3, 3, 3));   // site out of range
}

TEST_CASE("embed_operator is linear") {
  const Mat a = random_mat(2, 11), b = random_mat(2, 12);
  const cxd ca(0.3, -1.2), cb(-0.7, 0.4);
  const Mat lhs = embed_operator(ca * a + cb * b, 1, 2, 2);
  const Mat rhs = ca * embed_operator(a, 1, 2, 2) + cb * embed_operator(b, 1, 2, 2);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("propagate basics") {
  SUBCASE("empty schedule is identity") {
    const Propagator p = propagate({});
    CHECK(p.matrix.rows() == 1);
    CHECK(std::abs(p.matrix(0, 0) - 1.0) == 0.0);
  }
  SUBCASE("resonant pi pulse is sigma_x up to global phase -i") {
    const double omega = 2e6;
    Segment seg{(omega / 2.0) * pauli('x'), consts::pi / omega};
    const Propagator p = propagate({seg});
    const Mat want = -1i * pauli('x');
    CHECK((p.matrix - want).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(p.elapsed == doctest::Approx(consts::pi / omega));
  }
  SUBCASE("piecewise-constant splitting is exact") {
    Mat h = random_mat(6, 3);
    h = (h + h.adjoint()).eval() * 1e5;
    const double dt = 3.7e-6;
    const Propagator whole = propagate({{h, dt}});
    std::vector<Segment> split(10, {h, dt / 10.0});
    const Propagator parts = propagate(split);
    CHECK((whole.matrix - parts.matrix).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("errors") {
    CHECK_THROWS(propagate({{random_mat(3, 5), 1.0}}));             // non-Hermitian
    Mat h = pauli('z');
    CHECK_THROWS(propagate({{h, -1.0}}));                           // negative duration
  }
  SUBCASE("H and -H give mutually adjoint propagators") {
    Mat h = random_mat(8, 21);
    h = (h + h.adjoint()).eval() * 1e4;
    const Propagator up = propagate({{h, 1e-5}, {0.5 * h, 2e-5}});
    const Propagator um = propagate({{-h, 1e-5}, {-0.5 * h, 2e-5}});
    CHECK((up.matrix - um.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("haar_state determinism and moments") {
  CHECK_THROWS(haar_state(0, 1));
  CHECK(std::abs(std::abs(haar_state(1, 42).amplitudes(0)) - 1.0) < 1e-12);

  const StateVector a = haar_state(16, 123), b = haar_state(16, 123);
  CHECK((a.amplitudes - b.amplitudes).norm() == 0.0);  // bitwise identical

  // Haar moment: mean |<e0|psi>|^2 = 1/dim within 3 standard errors (MC oracle)
  const int dim = 4, n = 10000;
  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = std::norm(haar_state(dim, derive_stream(99, i)).amplitudes(0));
    mean += p;
    m2 += p * p;
  }
  mean /= n;
  const double sem = std::sqrt((m2 / n - mean * mean) / n);
  CHECK(std::abs(mean - 1.0 / dim) < 3.0 * sem);
}

TEST_CASE("average_error_per_atom") {
  const Mat u = propagate({{1e5 * pauli('x'), 1e-6}}).matrix;
  SUBCASE("identical propagators give zero") {
    const ErrorEstimate e = average_error_per_atom(u, u, 1, 8, 5);
    CHECK(e.mean == doctest::Approx(0.0).epsilon(1e-14));
  }
  SUBCASE("global phase is invisible") {
    const Mat up = std::exp(0.83i) * u;
    const ErrorEstimate e = average_error_per_atom(up, u, 1, 8, 5);
    CHECK(std::abs(e.mean) < 1e-12);
  }
  SUBCASE("small sigma-z rotation matches the analytic Haar average") {
    // single qubit, U = exp(-i theta sz / 2): error = 1 - |<psi|U|psi>|^2.
    // 10^5-sample Monte-Carlo oracle evaluated with an independent formula.
    const double theta = 0.01;
    const Mat uref = Mat::Identity(2, 2);
    const Mat urot = expm_herm(pauli('z'), theta / 2.0);
    const ErrorEstimate e = average_error_per_atom(urot, uref, 1, 4000, 7);
    double oracle = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      Prng rng(derive_stream(1234, i));
      // |a|^2 uniform for Haar on dim 2: overlap = |a^2 e^{-i t} + b^2 e^{i t}|^2
      const cxd a(rng.gauss(), rng.gauss()), b(rng.gauss(), rng.gauss());
      const double na = std::norm(a) / (std::norm(a) + std::norm(b));
      const double t = theta / 2.0;
      oracle += 1.0 - (std::norm(na * std::exp(-1i * t) + (1.0 - na) * std::exp(1i * t)));
    }
    oracle /= n;
    CHECK(e.mean == doctest::Approx(oracle).epsilon(0.05));
  }
  SUBCASE("invariant under a shared basis change") {
    Mat hv = random_mat(4, 77);
    hv = (hv + hv.adjoint()).eval();
    const Mat v = expm_herm(hv, 0.4);
    Mat ha = random_mat(4, 78), hb = random_mat(4, 79);
    ha = (ha + ha.adjoint()).eval();
    hb = (hb + hb.adjoint()).eval();
    const Mat ua = expm_herm(ha, 0.3), uref = expm_herm(hb, 0.1);
    const ErrorEstimate e1 = average_error_per_atom(ua, uref, 2, 16, 9);
    const ErrorEstimate e2 = average_error_per_atom(v * ua, v * uref, 2, 16, 9);
    CHECK(std::abs(e1.mean - e2.mean) < 1e-12);
  }
  SUBCASE("subspace embedding restricts the average") {
    // embed qubit subspace {|0>,|1>} of a 4-level site
    Mat w = Mat::Zero(4, 2);
    w(0, 0) = 1.0;
    w(1, 1) = 1.0;
    Mat u4 = Mat::Identity(4, 4);
    u4(2, 2) = -1.0;  // acts only outside the subspace
    const ErrorEstimate e = average_error_per_atom(u4, Mat::Identity(4, 4), 1, 8, 3, w);
    CHECK(std::abs(e.mean) < 1e-14);
  }
}

TEST_CASE("unitarity check helper") {
  Mat u = Mat::Identity(3, 3);
  CHECK(max_nonunitarity(u) == 0.0);
  u(0, 0) = 1.1;
  CHECK(max_nonunitarity(u) > 0.1);
}
