#ifndef GNSINDY_TRAINER_HPP
#define GNSINDY_TRAINER_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "gnsindy/dictionary.hpp"
#include "gnsindy/network.hpp"
#include "gnsindy/sampling.hpp"
#include "gnsindy/sparse.hpp"

namespace gnsindy {

/// Mask + coefficient state of the sparse regression during training.
/// xi is zero wherever mask is false; xi_est is the latest estimator output in
/// normalized-column space (what delta_spr thresholds).
struct SparsityState {
  std::vector<bool> mask;
  Eigen::VectorXd xi;
  Eigen::VectorXd xi_est;
  int last_update_iter = -1;

  explicit SparsityState(int n_terms)
      : mask(n_terms, true),
        xi(Eigen::VectorXd::Zero(n_terms)),
        xi_est(Eigen::VectorXd::Zero(n_terms)) {}
};

struct TrainConfig {
  int max_iter = 25000;
  int patience = 500;
  int periodicity = 100;
  double delta_spr = 0.05;  // mask threshold on |xi_est|
  SparseSolverConfig estimator;
  SparseSolverConfig constraint;
  std::vector<int> widths = {2, 64, 64, 64, 64, 1};
  double omega0 = 30.0;
  std::uint64_t seed_data = 42;
  std::uint64_t seed_train = 50;
  int log_every = 100;
  double residual_weight = 1.0;

  void validate() const;
};

struct LossRecord {
  int iter = 0;
  double mse = 0.0;
  double residual = 0.0;
  double total = 0.0;
  int active_terms = 0;
};

struct XiRecord {
  int iter = 0;
  Eigen::VectorXd xi;        // physical units
  std::vector<bool> mask;
};

struct DiscoveryResult {
  std::vector<std::string> labels;
  std::vector<bool> final_mask;
  Eigen::VectorXd final_xi;  // physical units
  std::string equation;      // "u_t = ..." over masked-active terms, 4 decimals
  std::vector<LossRecord> loss_history;
  std::vector<XiRecord> xi_history;  // one row per mask-update event
  double final_mse = 0.0;
  double final_residual = 0.0;
  double wall_seconds = 0.0;
};

struct LossValue {
  double total = 0.0;
  double mse = 0.0;
  double residual = 0.0;
};

/// Loss of the masked regression-constrained fit:
///   mse      = (1/N) sum (u - u_hat)^2
///   residual = (1/N) sum (u_hat_t - Theta (xi .* mask))^2
/// total = mse + residual_weight * residual (weight defaults to 1).
LossValue compute_loss(const Eigen::VectorXd& u_true, const JetBatch& jets,
                       const DictionaryEvaluation& eval, const SparsityState& state,
                       double residual_weight = 1.0);

/// Runs the estimator on the complete dictionary (every column, current mask
/// ignored) and thresholds the normalized-space solution:
/// mask_k = |xi_est_k| >= delta_spr. On estimator failure the previous mask is
/// returned unchanged and `warn` (when set) receives the reason.
std::vector<bool> update_mask(const DictionaryEvaluation& eval,
                              const SparseSolverConfig& estimator, double delta_spr,
                              const SparsityState& state, Eigen::VectorXd* xi_est_out = nullptr,
                              const std::function<void(const std::string&)>& warn = {});

/// Constraint solve restricted to the masked-active columns; inactive entries
/// are exactly zero; result in physical units. An all-false mask yields the
/// zero vector with all_pruned set (not an error).
SparseSolution solve_constraint(const DictionaryEvaluation& eval, const std::vector<bool>& mask,
                                const SparseSolverConfig& config);

/// Full training loop: forward jets on all samples, dictionary evaluation,
/// constraint solve, masked loss, backprop with xi held fixed, Adam step, and
/// scheduled mask updates. Deterministic for fixed seeds and a single thread.
/// Throws NumericalError (with the iteration) on a non-finite loss.
DiscoveryResult discover(const SampleSet& samples, const TrainConfig& config,
                         const Dictionary& dict);

/// Uniform seed-deterministic draw of grid entries, the random-sampling
/// baseline fed to the same trainer.
SampleSet random_baseline_samples(const SnapshotMatrix& snap, std::size_t size,
                                  std::uint64_t seed);

void write_loss_csv(const std::vector<LossRecord>& history, const std::filesystem::path& path);
void write_xi_csv(const std::vector<XiRecord>& history, const std::vector<std::string>& labels,
                  const std::filesystem::path& path);

/// Renders "u_t = c1 term1 + c2 term2 ..." over active terms, 4-decimal
/// coefficients, dictionary order.
std::string render_equation(const Eigen::VectorXd& xi, const std::vector<bool>& mask,
                            const std::vector<std::string>& labels);

}  // namespace gnsindy

#endif  // GNSINDY_TRAINER_HPP
