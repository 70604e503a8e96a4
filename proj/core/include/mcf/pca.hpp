#ifndef MCF_PCA_HPP
#define MCF_PCA_HPP

#include <Eigen/Core>

#include "mcf/types.hpp"

namespace mcf {

/// Top eigenvalue/eigenvector of a symmetric matrix. The eigenvector sign is
/// fixed so its first nonzero coordinate is positive; `degenerate` flags a
/// top eigenspace that is not one-dimensional within tolerance.
struct EigenPair {
  double eigenvalue;
  Direction eigenvector;
  bool degenerate = false;
};

/// Sample covariance (1/N) X^t X of centered data. Symmetric PSD.
Eigen::MatrixXd sample_covariance(const DataMatrix& data);

/// Leading eigenpair by shifted power iteration (shift c = |min diagonal|+1
/// keeps the top eigenvalue dominant in magnitude). Relative residual
/// |Mv - lambda v| <= tol |lambda| at return. Runs from two starts; if they
/// settle on directions more than 2 degrees apart (as axes) with equal
/// eigenvalues, the pair is flagged degenerate and either vector is returned.
EigenPair leading_eigenpair(const Eigen::MatrixXd& M, double tol = 1e-8);

}  // namespace mcf

#endif  // MCF_PCA_HPP
