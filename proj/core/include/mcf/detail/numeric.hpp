#ifndef MCF_DETAIL_NUMERIC_HPP
#define MCF_DETAIL_NUMERIC_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

#include <Eigen/Core>

namespace mcf::detail {

/// log(sum_i exp(x[i])) with the max shifted out so nothing overflows.
inline double log_sum_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;  // empty or all -inf
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - m);
  return m + std::log(sum);
}

/// log(mean_i exp(x[i])); exactly 0 when all arguments are 0.
inline double log_mean_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double sum = 0.0;
  for (double v : x) sum += std::exp(v - m);
  return m + std::log(sum / static_cast<double>(x.size()));
}

/// log(2 Phi(x)) for the standard normal CDF Phi, accurate far into the left
/// tail. Goes through erfc (never underflows above x ~ -37) and switches to
/// the asymptotic expansion of the Mills ratio below that.
inline double log_2phi(double x) {
  if (x >= -37.0) {
    return std::log(std::erfc(-x * M_SQRT1_2));
  }
  // Phi(x) ~ phi(x)/(-x) * (1 - 1/x^2 + 3/x^4 - 15/x^6 + 105/x^8 - 945/x^10)
  const double ix2 = 1.0 / (x * x);
  const double series =
      -ix2 * (1.0 - ix2 * (3.0 - ix2 * (15.0 - ix2 * (105.0 - ix2 * 945.0))));
  return std::log(2.0) - 0.5 * x * x - std::log(-x) -
         0.5 * std::log(2.0 * M_PI) + std::log1p(series);
}

/// Deterministic per-purpose RNG stream: a 64-bit mix of (seed, stream) keys
/// feeding mt19937_64, so independent subtasks never share a stream.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return std::mt19937_64(z);
}

/// Standard-normal vector draw.
inline Eigen::VectorXd normal_vector(std::mt19937_64& rng, Eigen::Index d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd v(d);
  for (Eigen::Index i = 0; i < d; ++i) v[i] = gauss(rng);
  return v;
}

}  // namespace mcf::detail

#endif  // MCF_DETAIL_NUMERIC_HPP
