#ifndef MCF_OPTIMIZER_HPP
#define MCF_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcf/types.hpp"

namespace mcf {

struct OptimizerConfig {
  int starts = 32;
  int max_iters = 500;
  double step_init = 0.1;       // initial arc step, radians
  double grad_tol = 1e-8;       // relative to max(1, |G|)
  double angle_dedup_deg = 2.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// One local maximum of the cumulant function on the sphere.
struct Maximum {
  Direction direction;
  double g_value;
  int basin_count = 1;
};

/// Result of the full pipeline: ranked maxima, the PCA baseline, and
/// reliability diagnostics at the radius used.
struct MCFResult {
  Radius radius_used;
  std::vector<Maximum> maxima;  // g_value descending
  Direction pc1;
  double ess_at_radius;  // ESS at the top-ranked maximum direction
  std::vector<std::string> warnings;
};

/// Maximize the empirical cumulant function over the unit sphere at fixed
/// radius: projected gradient ascent with renormalization retraction and a
/// backtracking line search, from `starts` directions drawn uniformly on the
/// sphere (deterministic given cfg.seed). Converged points that fail a
/// second-order probe (8 tangent perturbations of size 1e-3) are discarded
/// as saddles; the rest are deduplicated. Throws NonConvergence (carrying
/// the best iterate) when no start converges.
std::vector<Maximum> maximize_at_radius(const DataMatrix& data, Radius r,
                                        const OptimizerConfig& cfg);

/// Greedy deduplication by descending value: a solution within
/// `angle_dedup_deg` of an already kept one is merged into it, adding its
/// basin_count. Antipodal directions are 180 degrees apart and stay distinct.
/// Ties in value break lexicographically (smallest direction first).
std::vector<Maximum> deduplicate(std::vector<Maximum> solutions,
                                 double angle_dedup_deg);

struct AutoRadiusResult {
  Radius radius;
  bool heavy_tail;  // even the grid floor failed the ESS requirement
};

/// Largest radius keeping min-over-probe-directions ESS >= ess_min, searched
/// on the geometric grid r0 * 2^k (r0 = 0.1 / sigma_max) and refined by five
/// bisection steps. Probes are the 2d signed axis directions plus 8 fixed
/// pseudo-random directions. When the data is so heavy-tailed that even r0
/// fails, returns r0 with heavy_tail set.
AutoRadiusResult auto_radius(const DataMatrix& data, double ess_min);

/// Full pipeline: center, resolve the radius (given, or auto_radius), run
/// the multi-start search, deduplicate, and attach the PC1 baseline plus
/// warnings (heavy tail, partial non-convergence, degenerate spectrum).
MCFResult mcf(const DataMatrix& data, const OptimizerConfig& cfg,
              std::optional<double> radius = std::nullopt,
              double ess_min = 10.0);

}  // namespace mcf

#endif  // MCF_OPTIMIZER_HPP
