#ifndef MCF_MODELS_HPP
#define MCF_MODELS_HPP

#include <cstdint>

#include <Eigen/Core>

#include "mcf/pca.hpp"
#include "mcf/types.hpp"

namespace mcf {

/// Centered multivariate Gaussian, covariance Sigma (SPD).
struct GaussianParams {
  Eigen::MatrixXd sigma;

  static GaussianParams make(Eigen::MatrixXd sigma);
};

/// Multivariate skew-normal: density 2 phi_Sigma(x) Phi(alpha^t x). The mean
/// mu = Sigma alpha / sqrt((pi/2)(1 + alpha^t Sigma alpha)) is cached; the
/// distribution's covariance is Sigma - mu mu^t.
struct SkewNormalParams {
  Eigen::MatrixXd sigma;
  Eigen::VectorXd alpha;
  Eigen::VectorXd mu;

  static SkewNormalParams make(Eigen::MatrixXd sigma, Eigen::VectorXd alpha);
};

/// Multivariate gamma built from independent unit-scale gamma variables:
/// x_i = z_0 + z_i with shapes alpha0 and alphas[i]. The shared z_0 couples
/// the components; component means are alpha0 + alphas[i].
struct GammaParams {
  double alpha0;
  Eigen::VectorXd alphas;

  static GammaParams make(double alpha0, Eigen::VectorXd alphas);
  Eigen::Index dim() const noexcept { return alphas.size(); }
};

// --- Gaussian -------------------------------------------------------------

/// G = (r^2/2) theta^t Sigma theta.
double gaussian_cumulant(const GaussianParams& p, Radius r, const Direction& dir);

/// Maximizer for every radius: the leading eigenvector of Sigma.
EigenPair gaussian_mcf(const GaussianParams& p);

// --- Skew-Normal ----------------------------------------------------------

/// Mean vector Sigma alpha / sqrt((pi/2)(1 + alpha^t Sigma alpha)).
Eigen::VectorXd sn_mean(const SkewNormalParams& p);

/// Cumulant function of the centered vector:
/// G = -r mu^t theta + (r^2/2) theta^t Sigma theta + log(2 Phi(sqrt(pi/2) r mu^t theta)).
/// Finite for all finite r; the log term goes through erfc so it stays
/// accurate deep into the left tail.
double sn_cumulant_centered(const SkewNormalParams& p, Radius r,
                            const Direction& dir);

/// Small-radius maximizer: leading eigenvector of the SN covariance
/// Sigma - mu mu^t (the first principal component of the distribution).
EigenPair sn_mcf_small_radius(const SkewNormalParams& p);

/// Large-radius maximizers. mcf1 is the leading eigenvector of Sigma on the
/// half-sphere mu^t theta >= 0; mcf2 the leading eigenvector of
/// Sigma - (pi/2) mu mu^t on mu^t theta < 0.
struct SnLargeRadiusPair {
  Direction mcf1;
  Direction mcf2;
};

SnLargeRadiusPair sn_mcf_large_radius(const SkewNormalParams& p);

// --- Gamma ----------------------------------------------------------------

/// Cumulant function of the centered vector:
/// G = -alpha0 log(1 - r sum theta_i) - sum_i alphas_i log(1 - r theta_i)
///     - r sum_i (alpha0 + alphas_i) theta_i.
/// Defined only where r theta_i < 1 for every i and r sum theta_i < 1; a
/// violation raises OutsideDomain naming the failed constraint.
double gamma_cumulant_centered(const GammaParams& p, Radius r,
                               const Direction& dir);

/// Largest admissible radius over the whole sphere: 1/sqrt(d).
Radius gamma_max_radius(int d);

/// Large-radius maximizer: the uniform simplex direction (1,...,1)/sqrt(d).
Direction gamma_mcf_large_radius(int d);

// --- Samplers (population-centered draws; data is not sample-centered) ----

DataMatrix sample_gaussian(const GaussianParams& p, int n_samples,
                           std::uint64_t seed);

/// Reflection sampler: Y ~ N(0, Sigma), W ~ N(0,1); emit Y when
/// W <= alpha^t Y, else -Y; then subtract mu.
DataMatrix sample_skew_normal(const SkewNormalParams& p, int n_samples,
                              std::uint64_t seed);

/// x_i = z_0 + z_i with independent unit-scale gamma draws, minus the mean
/// alpha0 + alphas_i per component.
DataMatrix sample_gamma(const GammaParams& p, int n_samples, std::uint64_t seed);

}  // namespace mcf

#endif  // MCF_MODELS_HPP
