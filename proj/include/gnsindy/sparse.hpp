#ifndef GNSINDY_SPARSE_HPP
#define GNSINDY_SPARSE_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

namespace gnsindy {

enum class SolverKind { Ols, Ridge, STRidge, Lasso };

SolverKind solver_kind_from_string(const std::string& name);
std::string to_string(SolverKind kind);

struct SparseSolverConfig {
  SolverKind kind = SolverKind::STRidge;
  double lambda = 0.0;   // l2 weight (Ridge/STRidge) or l1 weight (Lasso)
  double tol = 0.1;      // STRidge hard threshold, applied in normalized space
  int max_iter = 100;    // STRidge sweeps / Lasso coordinate-descent sweeps
  bool normalize = true;

  void validate() const;
};

/// Linear system theta * xi = u_t restricted to the active columns.
struct RegressionProblem {
  Eigen::MatrixXd theta;  // N x D
  Eigen::VectorXd u_t;    // N
  std::vector<bool> active;          // D; empty means all active
  std::vector<std::string> labels;   // optional, for diagnostics

  Eigen::Index n_samples() const { return theta.rows(); }
  Eigen::Index n_terms() const { return theta.cols(); }
  bool is_active(Eigen::Index k) const { return active.empty() || active[k]; }
};

/// Scales every column to unit L2 norm; returns the scales so solutions map
/// back as xi_k = xi_normalized_k / scale_k. Throws NumericalError for a zero
/// column (named by label when available).
std::pair<Eigen::MatrixXd, Eigen::VectorXd> normalize_columns(
    const Eigen::MatrixXd& theta, const std::vector<std::string>& labels = {});

/// Least squares over the active columns via rank-revealing QR; inactive
/// entries are exactly zero. Throws NumericalError on rank deficiency.
Eigen::VectorXd ols(const RegressionProblem& problem);

/// Solves (theta_a' theta_a + lambda I) xi_a = theta_a' u_t. lambda = 0
/// delegates to ols.
Eigen::VectorXd ridge(const RegressionProblem& problem, double lambda);

/// Result of the iterated/sparsity-promoting solvers. xi is in physical units
/// (denormalized); xi_normalized holds the same solution in unit-column space,
/// which is what mask thresholds compare against.
struct SparseSolution {
  Eigen::VectorXd xi;
  Eigen::VectorXd xi_normalized;
  bool all_pruned = false;
};

/// Sequential-threshold ridge: ridge solve on the active set, drop every
/// |coefficient| < tol (normalized space), repeat to a fixed point or
/// config.max_iter sweeps, then an unpenalized least-squares pass on the
/// survivors. An all-pruned outcome returns zeros with the flag set.
SparseSolution stridge(const RegressionProblem& problem, const SparseSolverConfig& config);

/// Cyclic coordinate descent on (1/2N)||theta xi - u_t||^2 + lambda ||xi||_1
/// with closed-form soft-threshold updates; converged when the largest
/// coefficient change in a sweep falls below 1e-8.
SparseSolution lasso(const RegressionProblem& problem, const SparseSolverConfig& config);

/// Dispatch on config.kind; Ols/Ridge honor config.normalize as well.
SparseSolution solve_sparse(const RegressionProblem& problem, const SparseSolverConfig& config);

}  // namespace gnsindy

#endif  // GNSINDY_SPARSE_HPP
