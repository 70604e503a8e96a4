#ifndef MCF_CLI_HPP
#define MCF_CLI_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mcf/models.hpp"
#include "mcf/optimizer.hpp"
#include "mcf/types.hpp"

namespace mcf {

enum class Command { Simulate, Analyze, ComparePca, Tailcheck };

using ModelParams = std::variant<GaussianParams, SkewNormalParams, GammaParams>;

/// Everything a single CLI invocation needs. Tolerances and seeds are echoed
/// into every output for provenance.
struct RunConfig {
  Command command = Command::Analyze;
  std::string input_path;
  std::string output_path;
  std::optional<ModelParams> model;  // simulate only
  int n_samples = 0;                 // simulate only
  std::optional<double> radius;      // absent = auto radius
  double ess_min = 10.0;
  OptimizerConfig opt;
  std::optional<Eigen::VectorXd> theta_a;  // tailcheck only
  std::optional<Eigen::VectorXd> theta_b;

  void validate() const;
};

/// Files written by a command.
struct RunOutputs {
  std::vector<std::string> paths;
};

/// Draw n_samples from the configured model, write them as CSV (header
/// v1..vd, one observation per line, 15 significant digits) plus a JSON
/// sidecar `<output>.meta.json` echoing parameters, seed, and derived
/// quantities. Byte-identical across reruns with the same seed.
RunOutputs run_simulate(const RunConfig& cfg);

/// Run the MCF pipeline on a CSV dataset. Writes the MCFResult as JSON to
/// the output path and a plot-ready profile CSV (maximum index, radius, G,
/// ESS) to `<output>.profile.csv`.
RunOutputs run_analyze(const RunConfig& cfg);

/// MCF maxima next to the PCA baseline: JSON with pc1, the maxima, each
/// maximum's axis angle to pc1, and the pairwise angles between maxima.
RunOutputs run_compare_pca(const RunConfig& cfg);

/// Theorem-1 style tail dominance report for two directions.
RunOutputs run_tailcheck(const RunConfig& cfg);

/// Parse "a,b,c" into a vector. Throws ParseError on malformed input.
Eigen::VectorXd parse_vector(const std::string& text);

/// Parse model parameters from JSON text (or the content of a JSON file):
/// {"sigma": [[...]]} for gaussian, plus "alpha" for skew-normal, or
/// {"alpha0": x, "alphas": [...]} for gamma.
ModelParams parse_model_params(const std::string& family,
                               const std::string& json_text);

// CSV interchange (comma separator, '.' decimal, UTF-8, header auto-detected
// by a non-numeric first row).
void write_csv(const std::string& path, const Eigen::MatrixXd& values);
Eigen::MatrixXd read_csv(const std::string& path);

/// Render an error as the machine-readable JSON emitted on stderr.
std::string error_json(ErrorCode code, const std::string& message);

}  // namespace mcf

#endif  // MCF_CLI_HPP
