#include "mcf/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mcf/cumulant.hpp"
#include "mcf/detail/numeric.hpp"
#include "mcf/pca.hpp"

namespace mcf {

namespace {

constexpr double kStepFloor = 1e-12;
constexpr double kStepCap = 1.0;

bool lex_less(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

struct StartOutcome {
  bool converged = false;
  Direction theta;
  double g = 0.0;
};

/// Projected gradient ascent with retraction. The step is the arc length
/// moved along the unit tangent direction; backtracking halves it until the
/// move ascends (floor 1e-12), and it grows again after successes so the
/// same configuration works across radius scales. Value comparisons go flat
/// at the float noise floor of G before the gradient tolerance is reached,
/// so a short secant polish on the directional derivative finishes the job.
StartOutcome ascend(const DataMatrix& data, Radius r, const OptimizerConfig& cfg,
                    Direction theta) {
  CumulantEval eval = evaluate_cumulant(data, r, theta);
  auto converged = [&]() {
    return eval.tangent_gradient.norm() <=
           cfg.grad_tol * std::max(1.0, std::abs(eval.g));
  };

  double step = cfg.step_init;
  bool stalled = false;
  for (int it = 0; it < cfg.max_iters && !stalled; ++it) {
    if (converged()) return {true, theta, eval.g};
    const Eigen::VectorXd u =
        eval.tangent_gradient / eval.tangent_gradient.norm();
    bool moved = false;
    while (step >= kStepFloor) {
      Direction cand = normalize(theta.vec() + step * u);
      CumulantEval trial = evaluate_cumulant(data, r, cand);
      if (trial.g > eval.g) {
        theta = std::move(cand);
        eval = std::move(trial);
        step = std::min(step * 2.0, kStepCap);
        moved = true;
        break;
      }
      step *= 0.5;
    }
    stalled = !moved;
  }

  // Secant polish: Newton steps on phi'(t) = u . tangent_gradient along the
  // retracted arc. Only gradient decrease is accepted, so this terminates at
  // the float-exact stationary point or bails out.
  for (int p = 0; p < 20; ++p) {
    if (converged()) return {true, theta, eval.g};
    const double gnorm = eval.tangent_gradient.norm();
    const Eigen::VectorXd u = eval.tangent_gradient / gnorm;
    const double h = 1e-6;
    CumulantEval probe = evaluate_cumulant(data, r, normalize(theta.vec() + h * u));
    const double curvature = (u.dot(probe.tangent_gradient) - gnorm) / h;
    if (!(curvature < 0.0)) break;  // not inside a maximum's basin
    const double t = std::min(-gnorm / curvature, 1e-2);
    Direction cand = normalize(theta.vec() + t * u);
    CumulantEval trial = evaluate_cumulant(data, r, cand);
    if (trial.tangent_gradient.norm() >= gnorm) break;
    theta = std::move(cand);
    eval = std::move(trial);
  }
  return {converged(), theta, eval.g};
}

/// Second-order probe: G must not increase along tangent perturbations of
/// size 1e-3 (8 of them, deterministic). Rejects saddle points and minima.
bool is_local_maximum(const DataMatrix& data, Radius r, const Direction& theta,
                      double g, std::uint64_t seed) {
  const Eigen::Index d = theta.dim();
  if (d < 2) return true;  // the 0-sphere has no tangent directions
  auto rng = detail::make_rng(seed, 0x70726f6265ULL);
  const double slack = 1e-12 * std::max(1.0, std::abs(g));
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd v = detail::normal_vector(rng, d);
    v -= theta.vec() * theta.vec().dot(v);
    const double norm = v.norm();
    if (norm < 1e-12) continue;
    Direction probe = normalize(theta.vec() + (1e-3 / norm) * v);
    if (empirical_cumulant(data, r, probe) > g + slack) return false;
  }
  return true;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (starts < 1 || max_iters < 1 || !(step_init > 0.0) || !(grad_tol > 0.0) ||
      !(angle_dedup_deg > 0.0) || angle_dedup_deg >= 90.0) {
    throw Error(ErrorCode::InvalidParams,
                "optimizer config: counts and tolerances must be positive, "
                "angle_dedup_deg < 90");
  }
}

std::vector<Maximum> maximize_at_radius(const DataMatrix& data, Radius r,
                                        const OptimizerConfig& cfg) {
  cfg.validate();
  if (!(r.value() > 0.0)) {
    throw Error(ErrorCode::InvalidParams, "maximize_at_radius requires r > 0");
  }
  const Eigen::Index d = data.n_cols();

  std::vector<Maximum> found;
  int converged_count = 0;
  bool have_best = false;
  Eigen::VectorXd best_iterate;
  double best_g = -std::numeric_limits<double>::infinity();

  for (int s = 0; s < cfg.starts; ++s) {
    auto rng = detail::make_rng(cfg.seed, static_cast<std::uint64_t>(s));
    Eigen::VectorXd v = detail::normal_vector(rng, d);
    if (v.norm() == 0.0) v[0] = 1.0;
    StartOutcome outcome = ascend(data, r, cfg, normalize(v));
    if (outcome.g > best_g) {
      best_g = outcome.g;
      best_iterate = outcome.theta.vec();
      have_best = true;
    }
    if (!outcome.converged) continue;
    ++converged_count;
    if (!is_local_maximum(data, r, outcome.theta, outcome.g, cfg.seed)) continue;
    found.push_back(Maximum{outcome.theta, outcome.g, 1});
  }

  if (found.empty()) {
    if (!have_best) best_iterate = Eigen::VectorXd::Unit(d, 0);
    throw NonConvergenceError(
        converged_count == 0
            ? "no start converged within max_iters"
            : "every converged start was rejected as a saddle point",
        std::move(best_iterate), best_g);
  }
  return deduplicate(std::move(found), cfg.angle_dedup_deg);
}

std::vector<Maximum> deduplicate(std::vector<Maximum> solutions,
                                 double angle_dedup_deg) {
  std::sort(solutions.begin(), solutions.end(),
            [](const Maximum& a, const Maximum& b) {
              if (a.g_value != b.g_value) return a.g_value > b.g_value;
              return lex_less(a.direction.vec(), b.direction.vec());
            });
  std::vector<Maximum> kept;
  for (auto& sol : solutions) {
    bool merged = false;
    for (auto& k : kept) {
      if (angle_deg(k.direction.vec(), sol.direction.vec()) <= angle_dedup_deg) {
        k.basin_count += sol.basin_count;
        merged = true;
        break;
      }
    }
    if (!merged) kept.push_back(std::move(sol));
  }
  return kept;
}

AutoRadiusResult auto_radius(const DataMatrix& data, double ess_min) {
  if (!data.centered()) {
    throw Error(ErrorCode::InvalidParams, "auto_radius requires centered data");
  }
  const auto n = static_cast<double>(data.n_rows());
  if (!(ess_min > 1.0) || ess_min > n) {
    throw Error(ErrorCode::InvalidParams, "ess_min must lie in (1, N]");
  }
  const Eigen::Index d = data.n_cols();

  double sigma_max = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    sigma_max =
        std::max(sigma_max, std::sqrt(data.values().col(j).squaredNorm() / n));
  }
  if (sigma_max == 0.0) {
    throw Error(ErrorCode::DegenerateProjection,
                "auto_radius: every column is constant");
  }
  const double r0 = 0.1 / sigma_max;

  // Probe set: signed axes plus 8 fixed pseudo-random directions. The seed
  // is a constant so the rule is a deterministic function of the data.
  std::vector<Direction> probes;
  probes.reserve(2 * static_cast<std::size_t>(d) + 8);
  for (Eigen::Index j = 0; j < d; ++j) {
    probes.push_back(Direction(Eigen::VectorXd::Unit(d, j)));
    probes.push_back(Direction(-Eigen::VectorXd::Unit(d, j)));
  }
  auto rng = detail::make_rng(0x6d63665f72616446ULL, 0);
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd v = detail::normal_vector(rng, d);
    if (v.norm() == 0.0) v[0] = 1.0;
    probes.push_back(normalize(v));
  }

  auto min_ess_ok = [&](double r) {
    for (const auto& p : probes) {
      if (effective_sample_size(data, Radius(r), p) < ess_min) return false;
    }
    return true;
  };

  if (!min_ess_ok(r0)) {
    return {Radius(r0), true};
  }
  double lo = r0;
  int k = 0;
  while (k < 60 && min_ess_ok(lo * 2.0)) {
    lo *= 2.0;
    ++k;
  }
  if (k == 60) return {Radius(lo), false};
  double hi = lo * 2.0;
  for (int step = 0; step < 5; ++step) {
    const double mid = 0.5 * (lo + hi);
    if (min_ess_ok(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {Radius(lo), false};
}

MCFResult mcf(const DataMatrix& data, const OptimizerConfig& cfg,
              std::optional<double> radius, double ess_min) {
  cfg.validate();
  const DataMatrix centered = center(data);

  std::vector<std::string> warnings;
  Radius r(0.0);
  if (radius.has_value()) {
    if (!(*radius > 0.0) || !std::isfinite(*radius)) {
      throw Error(ErrorCode::InvalidParams, "radius must be finite and > 0");
    }
    r = Radius(*radius);
  } else {
    AutoRadiusResult ar = auto_radius(centered, ess_min);
    r = ar.radius;
    if (ar.heavy_tail) {
      warnings.push_back(
          "heavy-tail: ESS fell below ess_min at the grid floor radius; the "
          "empirical cumulant estimate is unreliable at any useful radius");
    }
  }

  std::vector<Maximum> maxima;
  try {
    maxima = maximize_at_radius(centered, r, cfg);
  } catch (const NonConvergenceError&) {
    throw;
  }

  // Count unconverged starts for the warning by re-deriving from basins.
  int basin_total = 0;
  for (const auto& m : maxima) basin_total += m.basin_count;
  if (basin_total < cfg.starts) {
    warnings.push_back(std::to_string(cfg.starts - basin_total) + " of " +
                       std::to_string(cfg.starts) +
                       " starts did not converge to a maximum");
  }

  EigenPair pc = leading_eigenpair(sample_covariance(centered));
  if (pc.degenerate) {
    warnings.push_back(
        "degenerate-spectrum: the top covariance eigenspace is not "
        "one-dimensional; pc1 is one representative of it");
  }

  const double ess =
      effective_sample_size(centered, r, maxima.front().direction);
  return MCFResult{r, std::move(maxima), pc.eigenvector, ess,
                   std::move(warnings)};
}

}  // namespace mcf
