#include "mcf/cumulant.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "mcf/detail/numeric.hpp"

namespace mcf {

namespace {

void require_centered(const DataMatrix& data) {
  if (!data.centered()) {
    throw Error(ErrorCode::InvalidParams,
                "cumulant estimators require centered data");
  }
}

/// Scaled projections z_i = r * theta^t x_i, checked finite.
Eigen::VectorXd scaled_projections(const DataMatrix& data, double r,
                                   const Eigen::VectorXd& theta) {
  Eigen::VectorXd z = r * (data.values() * theta);
  if (!z.allFinite()) {
    throw Error(ErrorCode::NumericalError,
                "non-finite projection in cumulant evaluation");
  }
  return z;
}

}  // namespace

double empirical_cumulant(const DataMatrix& data, Radius r,
                          const Direction& dir) {
  require_centered(data);
  const Eigen::VectorXd z = scaled_projections(data, r.value(), dir.vec());
  return detail::log_mean_exp({z.data(), static_cast<std::size_t>(z.size())});
}

CumulantEval evaluate_cumulant(const DataMatrix& data, Radius r,
                               const Direction& dir) {
  require_centered(data);
  const double rv = r.value();
  const Eigen::VectorXd z = scaled_projections(data, rv, dir.vec());
  const Eigen::Index n = z.size();
  const Eigen::Index d = data.n_cols();
  const double m = z.maxCoeff();

  double sum_w = 0.0;
  double sum_w2 = 0.0;
  Eigen::VectorXd sum_wx = Eigen::VectorXd::Zero(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double w = std::exp(z[i] - m);
    sum_w += w;
    sum_w2 += w * w;
    sum_wx.noalias() += w * data.values().row(i).transpose();
  }

  CumulantEval out;
  out.g = m + std::log(sum_w / static_cast<double>(n));
  if (!std::isfinite(out.g)) {
    throw Error(ErrorCode::NumericalError, "non-finite cumulant estimate");
  }

  Eigen::VectorXd grad = (rv / sum_w) * sum_wx;
  grad -= dir.vec() * dir.vec().dot(grad);  // tangent projection
  out.tangent_gradient = std::move(grad);
  out.ess = (sum_w * sum_w) / sum_w2;
  return out;
}

Eigen::VectorXd cumulant_gradient(const DataMatrix& data, Radius r,
                                  const Direction& dir) {
  return evaluate_cumulant(data, r, dir).tangent_gradient;
}

double effective_sample_size(const DataMatrix& data, Radius r,
                             const Direction& dir) {
  require_centered(data);
  const Eigen::VectorXd z = scaled_projections(data, r.value(), dir.vec());
  const double m = z.maxCoeff();
  double sum_w = 0.0;
  double sum_w2 = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double w = std::exp(z[i] - m);
    sum_w += w;
    sum_w2 += w * w;
  }
  return (sum_w * sum_w) / sum_w2;
}

CumulantProfile cumulant_profile(const DataMatrix& data, const Direction& dir,
                                 std::span<const double> radii) {
  require_centered(data);
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) {
      throw Error(ErrorCode::InvalidParams, "profile radii must be ascending");
    }
  }
  CumulantProfile profile{dir, {}, {}, {}};
  profile.radii.reserve(radii.size());
  profile.values.reserve(radii.size());
  profile.ess.reserve(radii.size());
  for (double r : radii) {
    const Eigen::VectorXd z = scaled_projections(data, r, dir.vec());
    const double m = z.maxCoeff();
    double sum_w = 0.0;
    double sum_w2 = 0.0;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      const double w = std::exp(z[i] - m);
      sum_w += w;
      sum_w2 += w * w;
    }
    profile.radii.push_back(r);
    profile.values.push_back(m + std::log(sum_w / static_cast<double>(z.size())));
    profile.ess.push_back((sum_w * sum_w) / sum_w2);
  }
  profile.validate();
  return profile;
}

namespace detail {

double empirical_cumulant_raw(const Eigen::MatrixXd& values, double r,
                              const Eigen::VectorXd& theta) {
  Eigen::VectorXd z = r * (values * theta);
  if (!z.allFinite()) {
    throw Error(ErrorCode::NumericalError,
                "non-finite projection in cumulant evaluation");
  }
  return log_mean_exp({z.data(), static_cast<std::size_t>(z.size())});
}

}  // namespace detail

}  // namespace mcf
