#include "mcf/models.hpp"

#include <cmath>
#include <random>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "mcf/detail/numeric.hpp"

namespace mcf {

namespace {

void require_symmetric(const Eigen::MatrixXd& m, const char* what) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  if (m.rows() != m.cols() ||
      (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::InvalidParams,
                std::string(what) + ": matrix must be symmetric");
  }
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& sigma) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "covariance matrix is not positive definite");
  }
  return llt.matrixL();
}

}  // namespace

GaussianParams GaussianParams::make(Eigen::MatrixXd sigma) {
  require_symmetric(sigma, "GaussianParams");
  cholesky_factor(sigma);  // SPD check
  return GaussianParams{std::move(sigma)};
}

SkewNormalParams SkewNormalParams::make(Eigen::MatrixXd sigma,
                                        Eigen::VectorXd alpha) {
  require_symmetric(sigma, "SkewNormalParams");
  if (alpha.size() != sigma.rows()) {
    throw Error(ErrorCode::InvalidParams,
                "SkewNormalParams: alpha dimension mismatch");
  }
  cholesky_factor(sigma);
  SkewNormalParams p{std::move(sigma), std::move(alpha), Eigen::VectorXd()};
  p.mu = sn_mean(p);
  // Sigma - mu mu^t is the SN covariance and must be PSD.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      p.sigma - p.mu * p.mu.transpose());
  const double floor = -1e-10 * std::max(p.sigma.trace(), 1.0);
  if (es.eigenvalues().minCoeff() < floor) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "SkewNormalParams: Sigma - mu mu^t is not PSD");
  }
  return p;
}

GammaParams GammaParams::make(double alpha0, Eigen::VectorXd alphas) {
  if (!(alpha0 > 0.0) || !std::isfinite(alpha0)) {
    throw Error(ErrorCode::InvalidParams, "GammaParams: alpha0 must be > 0");
  }
  if (alphas.size() < 1 || !(alphas.minCoeff() > 0.0) || !alphas.allFinite()) {
    throw Error(ErrorCode::InvalidParams,
                "GammaParams: every shape must be finite and > 0");
  }
  return GammaParams{alpha0, std::move(alphas)};
}

// --- Gaussian ---------------------------------------------------------------

double gaussian_cumulant(const GaussianParams& p, Radius r,
                         const Direction& dir) {
  const double rv = r.value();
  return 0.5 * rv * rv * dir.vec().dot(p.sigma * dir.vec());
}

EigenPair gaussian_mcf(const GaussianParams& p) {
  return leading_eigenpair(p.sigma);
}

// --- Skew-Normal ------------------------------------------------------------

Eigen::VectorXd sn_mean(const SkewNormalParams& p) {
  const double quad = p.alpha.dot(p.sigma * p.alpha);
  return (p.sigma * p.alpha) / std::sqrt(0.5 * M_PI * (1.0 + quad));
}

double sn_cumulant_centered(const SkewNormalParams& p, Radius r,
                            const Direction& dir) {
  const double rv = r.value();
  const double mt = p.mu.dot(dir.vec());
  const double quad = dir.vec().dot(p.sigma * dir.vec());
  return -rv * mt + 0.5 * rv * rv * quad +
         detail::log_2phi(std::sqrt(0.5 * M_PI) * rv * mt);
}

EigenPair sn_mcf_small_radius(const SkewNormalParams& p) {
  return leading_eigenpair(p.sigma - p.mu * p.mu.transpose());
}

SnLargeRadiusPair sn_mcf_large_radius(const SkewNormalParams& p) {
  if (p.mu.norm() == 0.0) {
    throw Error(ErrorCode::InvalidParams,
                "sn_mcf_large_radius: mu = 0 degenerates to the Gaussian case");
  }
  Eigen::VectorXd v1 = leading_eigenpair(p.sigma).eigenvector.vec();
  if (p.mu.dot(v1) < 0.0) v1 = -v1;

  Eigen::VectorXd v2 =
      leading_eigenpair(p.sigma - 0.5 * M_PI * p.mu * p.mu.transpose())
          .eigenvector.vec();
  if (p.mu.dot(v2) > 0.0) v2 = -v2;

  return {Direction(std::move(v1)), Direction(std::move(v2))};
}

// --- Gamma ------------------------------------------------------------------

double gamma_cumulant_centered(const GammaParams& p, Radius r,
                               const Direction& dir) {
  const double rv = r.value();
  const Eigen::VectorXd& theta = dir.vec();
  if (theta.size() != p.dim()) {
    throw Error(ErrorCode::InvalidParams, "direction dimension mismatch");
  }
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    if (rv * theta[i] >= 1.0) {
      throw OutsideDomainError(
          "gamma cumulant undefined: r*theta_" + std::to_string(i) + " >= 1",
          OutsideDomainError::Constraint::ComponentBound, static_cast<int>(i));
    }
  }
  const double theta_sum = theta.sum();
  if (rv * theta_sum >= 1.0) {
    throw OutsideDomainError("gamma cumulant undefined: r*sum(theta) >= 1",
                             OutsideDomainError::Constraint::SumBound);
  }

  double g = -p.alpha0 * std::log1p(-rv * theta_sum);
  double mean_proj = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    g -= p.alphas[i] * std::log1p(-rv * theta[i]);
    mean_proj += (p.alpha0 + p.alphas[i]) * theta[i];
  }
  return g - rv * mean_proj;
}

Radius gamma_max_radius(int d) {
  if (d < 1) {
    throw Error(ErrorCode::InvalidParams, "dimension must be >= 1");
  }
  return Radius(1.0 / std::sqrt(static_cast<double>(d)));
}

Direction gamma_mcf_large_radius(int d) {
  if (d < 1) {
    throw Error(ErrorCode::InvalidParams, "dimension must be >= 1");
  }
  return normalize(Eigen::VectorXd::Ones(d));
}

// --- Samplers ---------------------------------------------------------------

DataMatrix sample_gaussian(const GaussianParams& p, int n_samples,
                           std::uint64_t seed) {
  const Eigen::Index d = p.sigma.rows();
  const Eigen::MatrixXd chol = cholesky_factor(p.sigma);
  auto rng = detail::make_rng(seed, 0x6761757373ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd x(n_samples, d);
  Eigen::VectorXd z(d);
  for (int i = 0; i < n_samples; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z[j] = gauss(rng);
    x.row(i) = (chol * z).transpose();
  }
  return DataMatrix::from_rows(std::move(x));
}

DataMatrix sample_skew_normal(const SkewNormalParams& p, int n_samples,
                              std::uint64_t seed) {
  const Eigen::Index d = p.sigma.rows();
  const Eigen::MatrixXd chol = cholesky_factor(p.sigma);
  auto rng = detail::make_rng(seed, 0x736b6577ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd x(n_samples, d);
  Eigen::VectorXd z(d);
  for (int i = 0; i < n_samples; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) z[j] = gauss(rng);
    Eigen::VectorXd y = chol * z;
    const double w = gauss(rng);
    if (w > p.alpha.dot(y)) y = -y;
    x.row(i) = (y - p.mu).transpose();
  }
  return DataMatrix::from_rows(std::move(x));
}

DataMatrix sample_gamma(const GammaParams& p, int n_samples,
                        std::uint64_t seed) {
  const Eigen::Index d = p.dim();
  auto rng = detail::make_rng(seed, 0x67616d6dULL);
  std::gamma_distribution<double> shared(p.alpha0, 1.0);
  std::vector<std::gamma_distribution<double>> marginals;
  marginals.reserve(d);
  for (Eigen::Index j = 0; j < d; ++j) {
    marginals.emplace_back(p.alphas[j], 1.0);
  }
  Eigen::MatrixXd x(n_samples, d);
  for (int i = 0; i < n_samples; ++i) {
    const double z0 = shared(rng);
    for (Eigen::Index j = 0; j < d; ++j) {
      x(i, j) = z0 + marginals[j](rng) - (p.alpha0 + p.alphas[j]);
    }
  }
  return DataMatrix::from_rows(std::move(x));
}

}  // namespace mcf
