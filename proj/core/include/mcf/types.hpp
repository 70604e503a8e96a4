#ifndef MCF_TYPES_HPP
#define MCF_TYPES_HPP

#include <vector>

#include <Eigen/Core>

#include "mcf/error.hpp"

namespace mcf {

/// Norm of the dual vector s: the projection radius. Small radii weight the
/// variance, large radii weight the distribution tails.
class Radius {
 public:
  explicit Radius(double s);

  double value() const noexcept { return s_; }

 private:
  double s_;
};

/// Unit vector on the d-dimensional hypersphere. Guaranteed |theta| = 1
/// within 1e-12 from construction onward.
class Direction {
 public:
  explicit Direction(Eigen::VectorXd theta);

  const Eigen::VectorXd& vec() const noexcept { return theta_; }
  Eigen::Index dim() const noexcept { return theta_.size(); }
  double operator[](Eigen::Index i) const { return theta_[i]; }

 private:
  Eigen::VectorXd theta_;
};

/// N observations of a d-dimensional random vector, rows = observations.
/// Once centered, every column mean is zero (within 1e-10 relative to the
/// column standard deviation) and `mean()` holds the subtracted sample mean.
class DataMatrix {
 public:
  /// Raw (not yet centered) data.
  static DataMatrix from_rows(Eigen::MatrixXd values);

  DataMatrix(Eigen::MatrixXd values, bool centered, Eigen::VectorXd mean);

  const Eigen::MatrixXd& values() const noexcept { return values_; }
  bool centered() const noexcept { return centered_; }
  const Eigen::VectorXd& mean() const noexcept { return mean_; }
  Eigen::Index n_rows() const noexcept { return values_.rows(); }
  Eigen::Index n_cols() const noexcept { return values_.cols(); }

 private:
  Eigen::MatrixXd values_;
  bool centered_;
  Eigen::VectorXd mean_;
};

/// Sampled curve r -> G_r(theta) along one direction, with the effective
/// sample size of each estimate as a reliability diagnostic.
struct CumulantProfile {
  Direction direction;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> ess;

  /// Throws unless radii are strictly increasing, values are finite wherever
  /// an ESS is recorded, and the curve is convex in r within tolerance
  /// (convexity residuals >= -1e-8 * max|G|).
  void validate() const;
};

/// Subtract the sample mean from every column. Idempotent in effect: already
/// centered input is returned unchanged.
DataMatrix center(const DataMatrix& data);

/// v / |v| as a Direction. Throws DegenerateDirection on a zero vector.
Direction normalize(const Eigen::VectorXd& v);

/// Angle between two unit vectors in degrees, in [0, 180].
double angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Angle between the axes spanned by two unit vectors, in [0, 90] (sign of
/// either vector is ignored).
double axis_angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

}  // namespace mcf

#endif  // MCF_TYPES_HPP
