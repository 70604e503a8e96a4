#include "mcf/tail.hpp"

#include <algorithm>
#include <cmath>

#include "mcf/cumulant.hpp"

namespace mcf {

namespace {

constexpr int kGridPoints = 512;
constexpr double kNoiseFloor = 1e-6;
constexpr int kMinTailPoints = 10;

/// Linear interpolation with zero extension outside the grid.
double interp_or_zero(const std::vector<double>& grid,
                      const std::vector<double>& density, double z) {
  if (z < grid.front() || z > grid.back()) return 0.0;
  const auto it = std::upper_bound(grid.begin(), grid.end(), z);
  const std::size_t hi = std::min<std::size_t>(it - grid.begin(), grid.size() - 1);
  if (hi == 0) return density.front();
  const std::size_t lo = hi - 1;
  const double t = (z - grid[lo]) / (grid[hi] - grid[lo]);
  return (1.0 - t) * density[lo] + t * density[hi];
}

}  // namespace

void MarginalDensity::validate() const {
  if (grid.size() != density.size() || grid.size() < 2) {
    throw Error(ErrorCode::InvalidParams, "marginal density grid mismatch");
  }
  if (!(bandwidth > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "bandwidth must be positive");
  }
  double integral = 0.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      throw Error(ErrorCode::InvalidParams, "grid must be ascending");
    }
    if (density[i] < 0.0 || density[i - 1] < 0.0) {
      throw Error(ErrorCode::NumericalError, "negative density value");
    }
    integral += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
  }
  if (integral < 0.98 || integral > 1.02) {
    throw Error(ErrorCode::NumericalError,
                "marginal density does not integrate to 1 within 2%");
  }
}

MarginalDensity marginal_density(const DataMatrix& data, const Direction& dir,
                                 std::optional<double> bandwidth) {
  if (data.n_rows() < 30) {
    throw Error(ErrorCode::InsufficientData,
                "marginal density needs at least 30 observations");
  }
  const Eigen::VectorXd z = data.values() * dir.vec();
  const auto n = static_cast<double>(z.size());
  const double mean = z.mean();
  const double sd = std::sqrt((z.array() - mean).square().sum() / n);
  if (sd == 0.0) {
    throw Error(ErrorCode::DegenerateProjection,
                "all projections identical along this direction");
  }
  const double h = bandwidth.value_or(1.06 * sd * std::pow(n, -0.2));
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::InvalidParams, "bandwidth must be positive");
  }

  const double lo = z.minCoeff() - 3.0 * h;
  const double hi = z.maxCoeff() + 3.0 * h;
  MarginalDensity out{dir, std::vector<double>(kGridPoints),
                      std::vector<double>(kGridPoints), h};
  const double dz = (hi - lo) / (kGridPoints - 1);
  const double norm = 1.0 / (n * h * std::sqrt(2.0 * M_PI));
  for (int i = 0; i < kGridPoints; ++i) {
    const double g = lo + i * dz;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      const double u = (g - z[j]) / h;
      acc += std::exp(-0.5 * u * u);
    }
    out.grid[i] = g;
    out.density[i] = norm * acc;
  }
  out.validate();
  return out;
}

std::optional<double> find_tail_crossing(const MarginalDensity& fa,
                                         const MarginalDensity& fb) {
  const bool same_grid = fa.grid == fb.grid;
  std::vector<double> grid, da, db;
  if (same_grid) {
    grid = fa.grid;
    da = fa.density;
    db = fb.density;
  } else {
    const double lo = std::min(fa.grid.front(), fb.grid.front());
    const double hi = std::max(fa.grid.back(), fb.grid.back());
    grid.resize(kGridPoints);
    da.resize(kGridPoints);
    db.resize(kGridPoints);
    const double dz = (hi - lo) / (kGridPoints - 1);
    for (int i = 0; i < kGridPoints; ++i) {
      grid[i] = lo + i * dz;
      da[i] = interp_or_zero(fa.grid, fa.density, grid[i]);
      db[i] = interp_or_zero(fb.grid, fb.density, grid[i]);
    }
  }

  const int n = static_cast<int>(grid.size());
  // Largest grid point where dominance fails meaningfully; above it fa > fb
  // wherever the comparison rises out of the noise floor.
  int last_violation = -1;
  for (int i = n - 1; i >= 0; --i) {
    const bool meaningful = da[i] > kNoiseFloor || db[i] > kNoiseFloor;
    if (meaningful && !(da[i] > db[i])) {
      last_violation = i;
      break;
    }
  }
  const int start = std::max(last_violation, 0);
  int tail_points = 0;
  for (int i = start + 1; i < n; ++i) {
    if (da[i] > kNoiseFloor && db[i] > kNoiseFloor) ++tail_points;
  }
  if (tail_points < kMinTailPoints) return std::nullopt;
  return grid[start];
}

TailDominanceReport verify_theorem1(const DataMatrix& data,
                                    const Direction& theta_a,
                                    const Direction& theta_b,
                                    std::span<const double> radii,
                                    double ess_reliable_min) {
  if (!data.centered()) {
    throw Error(ErrorCode::InvalidParams, "verify_theorem1 requires centered data");
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) {
      throw Error(ErrorCode::InvalidParams, "radii must be ascending");
    }
  }

  const MarginalDensity fa = marginal_density(data, theta_a);
  const MarginalDensity fb = marginal_density(data, theta_b);

  TailDominanceReport report;
  report.z_star = find_tail_crossing(fa, fb);

  report.holds_for_radii.reserve(radii.size());
  for (double r : radii) {
    const Radius rad(r);
    const double ga = empirical_cumulant(data, rad, theta_a);
    const double gb = empirical_cumulant(data, rad, theta_b);
    const double ess_a = effective_sample_size(data, rad, theta_a);
    const double ess_b = effective_sample_size(data, rad, theta_b);
    report.holds_for_radii.push_back(RadiusDominance{
        r, ga > gb, ess_a, ess_b,
        std::min(ess_a, ess_b) >= ess_reliable_min});
  }

  if (report.z_star.has_value()) {
    const auto& holds = report.holds_for_radii;
    for (std::size_t i = 0; i < holds.size(); ++i) {
      bool all_above = true;
      for (std::size_t j = i; j < holds.size(); ++j) {
        if (!holds[j].dominates) {
          all_above = false;
          break;
        }
      }
      if (all_above) {
        report.s_star_estimate = holds[i].radius;
        break;
      }
    }
  }
  return report;
}

}  // namespace mcf
