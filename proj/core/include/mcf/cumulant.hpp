#ifndef MCF_CUMULANT_HPP
#define MCF_CUMULANT_HPP

#include <span>

#include <Eigen/Core>

#include "mcf/types.hpp"

namespace mcf {

/// Empirical cumulant function of the data projected on `dir` at radius `r`:
///
///   G_hat = log( (1/N) sum_i exp(r * theta^t x_i) )
///
/// computed through a max-shifted log-sum-exp so no exponential overflows.
/// G_hat(0) is exactly 0. Requires centered data.
double empirical_cumulant(const DataMatrix& data, Radius r, const Direction& dir);

/// Gradient of the empirical cumulant function restricted to the sphere:
/// the Euclidean gradient r * (sum_i w_i x_i) / (sum_i w_i) with max-shifted
/// weights w_i, projected onto the tangent space at theta.
Eigen::VectorXd cumulant_gradient(const DataMatrix& data, Radius r,
                                  const Direction& dir);

/// Effective sample size (sum w)^2 / sum w^2 of the exponential weights;
/// N at r = 0, approaching 1 as a single observation dominates.
double effective_sample_size(const DataMatrix& data, Radius r,
                             const Direction& dir);

/// Value, tangent gradient, and ESS from one pass over the data.
struct CumulantEval {
  double g;
  Eigen::VectorXd tangent_gradient;
  double ess;
};

CumulantEval evaluate_cumulant(const DataMatrix& data, Radius r,
                               const Direction& dir);

/// Batched evaluation along one direction over an ascending radius grid.
CumulantProfile cumulant_profile(const DataMatrix& data, const Direction& dir,
                                 std::span<const double> radii);

namespace detail {

/// Estimator on raw projections, no centering requirement. Internal: the
/// public operations all work on centered data.
double empirical_cumulant_raw(const Eigen::MatrixXd& values, double r,
                              const Eigen::VectorXd& theta);

}  // namespace detail

}  // namespace mcf

#endif  // MCF_CUMULANT_HPP
