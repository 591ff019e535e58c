#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

// Dense complex linear algebra and stochastic primitives shared by the
// simulation modules. hbar = 1: Hamiltonians are angular frequencies (rad/s).
// Tensor index convention: site 0 varies slowest.

namespace ryd {

using cxd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

struct StateVector {
  Vec amplitudes;
  int local_dim = 2;
  int n_sites = 1;

  StateVector(Vec a, int ld, int ns);
  double norm() const { return amplitudes.norm(); }
};

struct Propagator {
  Mat matrix;
  double elapsed = 0.0;  // s

  int dim() const { return static_cast<int>(matrix.rows()); }
};

// max |U^dag U - I|
double max_nonunitarity(const Mat& u);

// max |H - H^dag| relative to max |H|
double hermiticity_defect(const Mat& h);

// I (x) ... (x) local_op (x) ... (x) I with local_op at `site`, site 0 slowest
Mat embed_operator(const Mat& local_op, int site, int n_sites, int local_dim);

// exp(-i H t) for Hermitian H via eigendecomposition
Mat expm_herm(const Mat& h, double t);

struct Segment {
  Mat hamiltonian;  // rad/s
  double duration;  // s
};

// product of exp(-i H_k dt_k) applied in schedule order (first segment acts first)
Propagator propagate(const std::vector<Segment>& schedule, double unitarity_tol = 1e-9);

// normalized Haar-random state, deterministic for fixed seed
StateVector haar_state(int dim, uint64_t seed);

struct ErrorEstimate {
  double mean = 0.0;
  double sem = 0.0;  // standard error of the mean
};

// Monte-Carlo average of (1 - |<psi|U_ref^dag U|psi>|^2)/n_atoms over Haar states.
// If `embed` is nonempty it must be an isometry (dim_full x dim_sub); states are
// sampled Haar in the subspace and mapped through it.
ErrorEstimate average_error_per_atom(const Mat& u, const Mat& u_ref, int n_atoms,
                                     int n_samples, uint64_t seed,
                                     const Mat& embed = Mat());

// static partition parallel loop; results must be written to disjoint slots
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace ryd
