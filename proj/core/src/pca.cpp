#include "mcf/pca.hpp"

#include <cmath>

namespace mcf {

namespace {

constexpr int kMaxPowerIters = 10000;

void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

struct PowerResult {
  double lambda;
  Eigen::VectorXd vector;
};

PowerResult power_iterate(const Eigen::MatrixXd& M, Eigen::VectorXd v,
                          double shift, double tol) {
  v /= v.norm();
  double lambda = v.dot(M * v);
  for (int it = 0; it < kMaxPowerIters; ++it) {
    Eigen::VectorXd mv = M * v;
    lambda = v.dot(mv);
    const double residual = (mv - lambda * v).norm();
    if (residual <= tol * std::max(std::abs(lambda), 1e-300)) {
      return {lambda, std::move(v)};
    }
    Eigen::VectorXd next = mv + shift * v;
    const double norm = next.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      throw Error(ErrorCode::NumericalError,
                  "power iteration produced a degenerate iterate");
    }
    v = next / norm;
  }
  throw NonConvergenceError("power iteration did not converge", std::move(v),
                            lambda);
}

}  // namespace

Eigen::MatrixXd sample_covariance(const DataMatrix& data) {
  if (!data.centered()) {
    throw Error(ErrorCode::InvalidParams,
                "sample covariance requires centered data");
  }
  const double n = static_cast<double>(data.n_rows());
  Eigen::MatrixXd cov = (data.values().transpose() * data.values()) / n;
  // Symmetrize away the rounding skew of the accumulation.
  cov = 0.5 * (cov + cov.transpose()).eval();
  return cov;
}

EigenPair leading_eigenpair(const Eigen::MatrixXd& M, double tol) {
  const Eigen::Index d = M.rows();
  if (d < 1 || M.cols() != d) {
    throw Error(ErrorCode::InvalidParams, "matrix must be square");
  }
  const double scale = std::max(M.cwiseAbs().maxCoeff(), 1.0);
  if ((M - M.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidParams, "matrix must be symmetric");
  }
  if (d == 1) {
    return {M(0, 0), Direction(Eigen::VectorXd::Ones(1)), false};
  }

  const double shift = std::abs(M.diagonal().minCoeff()) + 1.0;

  // Two fixed starts; disagreement between them exposes a degenerate top
  // eigenspace (e.g. the identity matrix).
  Eigen::VectorXd s0 = Eigen::VectorXd::Ones(d);
  Eigen::VectorXd s1(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    s1[i] = (i % 2 == 0) ? 1.0 : -1.0;
    s1[i] += 0.25 * static_cast<double>(i) / static_cast<double>(d);
  }

  PowerResult a = power_iterate(M, std::move(s0), shift, tol);
  PowerResult b = power_iterate(M, std::move(s1), shift, tol);

  PowerResult& top = (a.lambda >= b.lambda) ? a : b;
  bool degenerate = false;
  const double lam_scale = std::max({std::abs(a.lambda), std::abs(b.lambda), 1.0});
  if (std::abs(a.lambda - b.lambda) <= 100.0 * tol * lam_scale &&
      axis_angle_deg(a.vector, b.vector) > 2.0) {
    degenerate = true;
  }

  fix_sign(top.vector);
  top.vector /= top.vector.norm();
  return {top.lambda, Direction(std::move(top.vector)), degenerate};
}

}  // namespace mcf
