#ifndef MCF_TESTS_HELPERS_HPP
#define MCF_TESTS_HELPERS_HPP

// Test-side oracles, independent of the library implementations they check:
// closed-form 2x2 eigen solutions, grid scans over the circle, bootstrap
// standard errors, naive (unshifted) log-mean-exp, and data constructions.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace mcf_test {

struct Eigen2x2 {
  double lambda;
  Eigen::Vector2d vector;  // unit, first nonzero coordinate positive
};

/// Brute-force closed-form leading eigenpair of a symmetric 2x2 matrix.
inline Eigen2x2 solve_sym2x2(double a, double b, double d) {
  const double mean = 0.5 * (a + d);
  const double delta = std::sqrt(0.25 * (a - d) * (a - d) + b * b);
  const double lambda = mean + delta;
  Eigen::Vector2d v;
  if (std::abs(b) > 1e-300) {
    v << b, lambda - a;
  } else if (a >= d) {
    v << 1.0, 0.0;
  } else {
    v << 0.0, 1.0;
  }
  v.normalize();
  if ((std::abs(v[0]) > 1e-12 && v[0] < 0.0) ||
      (std::abs(v[0]) <= 1e-12 && v[1] < 0.0)) {
    v = -v;
  }
  return {lambda, v};
}

inline Eigen::Vector2d dir2(double angle_deg) {
  const double a = angle_deg * M_PI / 180.0;
  return {std::cos(a), std::sin(a)};
}

struct GridMax {
  double value;
  double angle_deg;
};

/// All local maxima of f over a uniform angular grid of the circle,
/// descending by value.
inline std::vector<GridMax> circle_local_maxima(
    const std::function<double(const Eigen::Vector2d&)>& f, int n_grid = 360) {
  std::vector<double> vals(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    vals[i] = f(dir2(360.0 * i / n_grid));
  }
  std::vector<GridMax> maxima;
  for (int i = 0; i < n_grid; ++i) {
    const double prev = vals[(i + n_grid - 1) % n_grid];
    const double next = vals[(i + 1) % n_grid];
    if (vals[i] > prev && vals[i] > next) {
      maxima.push_back({vals[i], 360.0 * i / n_grid});
    }
  }
  std::sort(maxima.begin(), maxima.end(),
            [](const GridMax& x, const GridMax& y) { return x.value > y.value; });
  return maxima;
}

inline double ang_dist_deg(double a, double b) {
  double d = std::fmod(std::abs(a - b), 360.0);
  return std::min(d, 360.0 - d);
}

/// Naive log(mean(exp(r z_i))) without the max shift; overflows where the
/// shifted path does not. The equivalence oracle for the LSE reduction.
inline double naive_log_mean_exp(const Eigen::VectorXd& z) {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) sum += std::exp(z[i]);
  return std::log(sum / static_cast<double>(z.size()));
}

/// Bootstrap standard error of the empirical cumulant at (r, theta):
/// resample rows with replacement, recompute, take the deviation.
inline double bootstrap_se_cumulant(const Eigen::MatrixXd& centered, double r,
                                    const Eigen::VectorXd& theta, int resamples,
                                    std::uint64_t seed) {
  const Eigen::Index n = centered.rows();
  const Eigen::VectorXd z = r * (centered * theta);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  std::vector<double> ghats(resamples);
  Eigen::VectorXd zb(n);
  for (int b = 0; b < resamples; ++b) {
    for (Eigen::Index i = 0; i < n; ++i) zb[i] = z[pick(rng)];
    const double m = zb.maxCoeff();
    double s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) s += std::exp(zb[i] - m);
    ghats[b] = m + std::log(s / static_cast<double>(n));
  }
  double mean = 0.0;
  for (double g : ghats) mean += g;
  mean /= resamples;
  double var = 0.0;
  for (double g : ghats) var += (g - mean) * (g - mean);
  return std::sqrt(var / (resamples - 1));
}

/// Bootstrap SE of a difference of cumulants along two directions on the
/// same sample (joint resampling keeps their correlation).
inline double bootstrap_se_cumulant_diff(const Eigen::MatrixXd& centered,
                                         double r, const Eigen::VectorXd& ta,
                                         const Eigen::VectorXd& tb,
                                         int resamples, std::uint64_t seed) {
  const Eigen::Index n = centered.rows();
  const Eigen::VectorXd za = r * (centered * ta);
  const Eigen::VectorXd zb = r * (centered * tb);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  std::vector<double> diffs(resamples);
  for (int b = 0; b < resamples; ++b) {
    double ma = -1e300, mb = -1e300;
    std::vector<Eigen::Index> idx(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      idx[i] = pick(rng);
      ma = std::max(ma, za[idx[i]]);
      mb = std::max(mb, zb[idx[i]]);
    }
    double sa = 0.0, sb = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      sa += std::exp(za[idx[i]] - ma);
      sb += std::exp(zb[idx[i]] - mb);
    }
    diffs[b] = (ma + std::log(sa)) - (mb + std::log(sb));
  }
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= resamples;
  double var = 0.0;
  for (double d : diffs) var += (d - mean) * (d - mean);
  return std::sqrt(var / (resamples - 1));
}

/// Random orthogonal matrix via Gram-Schmidt of a random Gaussian matrix.
inline Eigen::MatrixXd random_orthogonal(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd a(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix the sign convention so Q is a deterministic function of a.
  Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

/// Random symmetric positive-definite matrix with condition spread.
inline Eigen::MatrixXd random_spd(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.2, 3.0);
  Eigen::MatrixXd q = random_orthogonal(d, seed ^ 0x5151);
  Eigen::VectorXd evals(d);
  for (int i = 0; i < d; ++i) evals[i] = unif(rng);
  return q * evals.asDiagonal() * q.transpose();
}

/// d = 2 product sample: column 1 ~ Laplace(scale 1), column 2 ~ N(0,1).
inline Eigen::MatrixXd laplace_normal_sample(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd x(n, 2);
  for (int i = 0; i < n; ++i) {
    const double u = unif(rng);
    x(i, 0) = -std::copysign(std::log(1.0 - 2.0 * std::abs(u)), u);
    x(i, 1) = gauss(rng);
  }
  return x;
}

}  // namespace mcf_test

#endif  // MCF_TESTS_HELPERS_HPP
