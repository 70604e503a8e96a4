#include "mcf/types.hpp"

#include <algorithm>
#include <cmath>

namespace mcf {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegenerateDirection: return "DegenerateDirection";
    case ErrorCode::DegenerateProjection: return "DegenerateProjection";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NumericalError: return "NumericalError";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidParams: return "InvalidParams";
  }
  return "UnknownError";
}

Radius::Radius(double s) : s_(s) {
  if (!std::isfinite(s) || s < 0.0) {
    throw Error(ErrorCode::InvalidParams, "radius must be finite and >= 0");
  }
}

Direction::Direction(Eigen::VectorXd theta) : theta_(std::move(theta)) {
  if (theta_.size() < 1) {
    throw Error(ErrorCode::InvalidParams, "direction must have dimension >= 1");
  }
  if (!theta_.allFinite()) {
    throw Error(ErrorCode::NumericalError, "direction has non-finite entries");
  }
  const double sq = theta_.squaredNorm();
  if (std::abs(sq - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidParams,
                "direction is not a unit vector (|theta^t theta - 1| > 1e-12)");
  }
}

DataMatrix::DataMatrix(Eigen::MatrixXd values, bool centered,
                       Eigen::VectorXd mean)
    : values_(std::move(values)), centered_(centered), mean_(std::move(mean)) {
  if (values_.rows() < 2) {
    throw Error(ErrorCode::InsufficientData,
                "data matrix needs at least 2 observations");
  }
  if (values_.cols() < 1) {
    throw Error(ErrorCode::InvalidParams,
                "data matrix needs at least 1 variable");
  }
  if (!values_.allFinite() || !mean_.allFinite()) {
    throw Error(ErrorCode::NumericalError, "data matrix has non-finite entries");
  }
  if (mean_.size() != values_.cols()) {
    throw Error(ErrorCode::InvalidParams, "mean vector dimension mismatch");
  }
  if (centered_) {
    const auto n = static_cast<double>(values_.rows());
    for (Eigen::Index j = 0; j < values_.cols(); ++j) {
      const double col_mean = values_.col(j).mean();
      const double col_sd = std::sqrt(values_.col(j).squaredNorm() / n);
      if (std::abs(col_mean) > 1e-10 * std::max(col_sd, 1e-300)) {
        throw Error(ErrorCode::InvalidParams,
                    "centered flag set but a column mean is nonzero");
      }
    }
  }
}

DataMatrix DataMatrix::from_rows(Eigen::MatrixXd values) {
  const Eigen::Index d = values.cols();
  return DataMatrix(std::move(values), false, Eigen::VectorXd::Zero(d));
}

DataMatrix center(const DataMatrix& data) {
  if (data.centered()) {
    return data;
  }
  Eigen::VectorXd mean = data.values().colwise().mean();
  Eigen::MatrixXd centered = data.values().rowwise() - mean.transpose();
  // Kill first-pass rounding residue so the centered invariant holds even for
  // columns whose mean is large compared to their spread.
  Eigen::VectorXd residue = centered.colwise().mean();
  centered.rowwise() -= residue.transpose();
  mean += residue;
  return DataMatrix(std::move(centered), true, std::move(mean));
}

Direction normalize(const Eigen::VectorXd& v) {
  const double norm = v.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorCode::DegenerateDirection,
                "cannot normalize a zero or non-finite vector");
  }
  Eigen::VectorXd unit = v / norm;
  // One corrective pass keeps |theta| = 1 within 1e-12 even when the input
  // norm is extreme.
  unit /= unit.norm();
  return Direction(std::move(unit));
}

double angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double c = a.dot(b) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, -1.0, 1.0)) * 180.0 / M_PI;
}

double axis_angle_deg(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double c = std::abs(a.dot(b)) / (a.norm() * b.norm());
  return std::acos(std::clamp(c, 0.0, 1.0)) * 180.0 / M_PI;
}

void CumulantProfile::validate() const {
  if (radii.size() != values.size() || radii.size() != ess.size()) {
    throw Error(ErrorCode::InvalidParams, "profile sequences differ in length");
  }
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (i > 0 && !(radii[i] > radii[i - 1])) {
      throw Error(ErrorCode::InvalidParams,
                  "profile radii must be strictly increasing");
    }
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::NumericalError,
                  "profile value non-finite where ESS recorded");
    }
  }
  double max_abs = 0.0;
  for (double v : values) max_abs = std::max(max_abs, std::abs(v));
  const double tol = 1e-8 * max_abs + 1e-12;
  for (std::size_t i = 1; i + 1 < radii.size(); ++i) {
    // Convexity residual: chord value at radii[i] minus curve value. For a
    // uniform grid this is half the second finite difference.
    const double lam =
        (radii[i + 1] - radii[i]) / (radii[i + 1] - radii[i - 1]);
    const double chord = lam * values[i - 1] + (1.0 - lam) * values[i + 1];
    if (chord - values[i] < -tol) {
      throw Error(ErrorCode::NumericalError,
                  "cumulant profile is not convex in r");
    }
  }
}

}  // namespace mcf
