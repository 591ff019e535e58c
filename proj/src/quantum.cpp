#include "ryd/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <mutex>
#include <thread>

#include "ryd/rng.hpp"

namespace ryd {

StateVector::StateVector(Vec a, int ld, int ns) : amplitudes(std::move(a)), local_dim(ld), n_sites(ns) {
  long expect = 1;
  for (int i = 0; i < ns; ++i) expect *= ld;
  if (amplitudes.size() != expect)
    throw std::invalid_argument("StateVector: length " + std::to_string(amplitudes.size()) +
                                " != local_dim^n_sites = " + std::to_string(expect));
  if (std::abs(amplitudes.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("StateVector: not normalized");
}

double max_nonunitarity(const Mat& u) {
  Mat d = u.adjoint() * u;
  d.diagonal().array() -= 1.0;
  return d.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Mat& h) {
  const double scale = h.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Mat embed_operator(const Mat& local_op, int site, int n_sites, int local_dim) {
  if (local_op.rows() != local_dim || local_op.cols() != local_dim)
    throw std::invalid_argument("embed_operator: local op is " + std::to_string(local_op.rows()) +
                                "x" + std::to_string(local_op.cols()) + ", expected " +
                                std::to_string(local_dim) + "x" + std::to_string(local_dim));
  if (site < 0 || site >= n_sites)
    throw std::invalid_argument("embed_operator: site " + std::to_string(site) + " out of range");

  long left = 1, right = 1;
  for (int i = 0; i < site; ++i) left *= local_dim;
  for (int i = site + 1; i < n_sites; ++i) right *= local_dim;
  const long dim = left * local_dim * right;

  Mat out = Mat::Zero(dim, dim);
  for (long a = 0; a < left; ++a)
    for (int i = 0; i < local_dim; ++i)
      for (int j = 0; j < local_dim; ++j) {
        const cxd v = local_op(i, j);
        if (v == cxd(0.0, 0.0)) continue;
        for (long b = 0; b < right; ++b) {
          const long row = (a * local_dim + i) * right + b;
          const long col = (a * local_dim + j) * right + b;
          out(row, col) = v;
        }
      }
  return out;
}

Mat expm_herm(const Mat& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("expm_herm: eigensolver failed");
  const Eigen::VectorXd& w = es.eigenvalues();
  Vec phase(w.size());
  for (long i = 0; i < w.size(); ++i) {
    const double a = -w(i) * t;
    if (!std::isfinite(a)) throw std::runtime_error("expm_herm: non-finite phase");
    phase(i) = cxd(std::cos(a), std::sin(a));
  }
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

Propagator propagate(const std::vector<Segment>& schedule, double unitarity_tol) {
  if (schedule.empty()) return {Mat::Identity(1, 1), 0.0};
  const long dim = schedule.front().hamiltonian.rows();
  Mat u = Mat::Identity(dim, dim);
  double elapsed = 0.0;
  int idx = 0;
  for (const auto& seg : schedule) {
    if (seg.duration < 0.0)
      throw std::invalid_argument("propagate: negative duration in segment " + std::to_string(idx));
    if (seg.hamiltonian.rows() != dim || seg.hamiltonian.cols() != dim)
      throw std::invalid_argument("propagate: dimension mismatch in segment " + std::to_string(idx));
    if (hermiticity_defect(seg.hamiltonian) > 1e-12)
      throw std::invalid_argument("propagate: non-Hermitian Hamiltonian in segment " +
                                  std::to_string(idx));
    if (seg.duration > 0.0) {
      Mat step = expm_herm(seg.hamiltonian, seg.duration);
      if (!step.allFinite())
        throw std::runtime_error("propagate: NaN in exponential of segment " + std::to_string(idx));
      u = step * u;
      elapsed += seg.duration;
    }
    ++idx;
  }
  if (max_nonunitarity(u) > unitarity_tol)
    throw std::runtime_error("propagate: propagator violates unitarity tolerance");
  return {std::move(u), elapsed};
}

StateVector haar_state(int dim, uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("haar_state: dim must be >= 1");
  Prng rng(seed);
  Vec v(dim);
  for (int i = 0; i < dim; ++i) v(i) = cxd(rng.gauss(), rng.gauss());
  v /= v.norm();
  return StateVector(std::move(v), dim, 1);
}

ErrorEstimate average_error_per_atom(const Mat& u, const Mat& u_ref, int n_atoms, int n_samples,
                                     uint64_t seed, const Mat& embed) {
  if (u.rows() != u_ref.rows() || u.cols() != u_ref.cols())
    throw std::invalid_argument("average_error_per_atom: propagator dimension mismatch");
  if (n_samples < 1) throw std::invalid_argument("average_error_per_atom: n_samples >= 1 required");

  Mat m = u_ref.adjoint() * u;
  if (embed.size() > 0) {
    if (embed.rows() != u.rows())
      throw std::invalid_argument("average_error_per_atom: embed isometry dimension mismatch");
    m = (embed.adjoint() * m * embed).eval();
  }
  const int dim = static_cast<int>(m.rows());

  std::vector<double> errs(n_samples);
  parallel_for(n_samples, [&](int i) {
    const StateVector psi = haar_state(dim, derive_stream(seed, static_cast<uint64_t>(i)));
    const cxd ov = psi.amplitudes.dot(m * psi.amplitudes);  // <psi|M|psi>
    errs[i] = (1.0 - std::norm(ov)) / static_cast<double>(n_atoms);
  });

  double mean = 0.0;
  for (double x : errs) mean += x;
  mean /= n_samples;
  double var = 0.0;
  for (double x : errs) var += (x - mean) * (x - mean);
  const double sem = (n_samples > 1) ? std::sqrt(var / (n_samples * (n_samples - 1.0))) : 0.0;
  return {mean, sem};
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int n_threads = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(n)));
  if (n_threads <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::exception_ptr eptr = nullptr;
  std::mutex mtx;
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int i = t; i < n; i += n_threads) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lk(mtx);
        if (!eptr) eptr = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (eptr) std::rethrow_exception(eptr);
}

}  // namespace ryd
