#ifndef GNSINDY_SAMPLING_HPP
#define GNSINDY_SAMPLING_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "gnsindy/snapshot.hpp"

namespace gnsindy {

/// Settings of the two-way greedy sample selection.
struct QdeimConfig {
  double epsilon_thr = 1e-5;  // energy-criterion precision, in (0,1)
  int t_div = 1;              // number of uniform time subdomains
  std::optional<int> subsample_size;
  std::uint64_t subsample_seed = 42;

  /// Validates against the number of time columns m. Throws ConfigError.
  void validate(Eigen::Index m) const;
};

struct SamplePoint {
  double t = 0.0;
  double x = 0.0;
  double u = 0.0;
  int src_row = 0;  // index into x_grid
  int src_col = 0;  // index into t_grid
};

struct SampleSet {
  std::vector<SamplePoint> points;
  std::size_t size() const { return points.size(); }
};

/// Rank-truncated SVD, rank picked by the energy criterion.
struct TruncatedSvd {
  Eigen::MatrixXd left;     // n x r, orthonormal columns
  Eigen::VectorXd sigma;    // r positive, non-increasing
  Eigen::MatrixXd right_t;  // r x m, orthonormal rows
  int rank = 0;
};

/// Smallest r with 1 - (sum_{j<=r} sigma_j)/(sum_all sigma) < epsilon_thr.
/// Throws NumericalError for an all-zero matrix.
TruncatedSvd truncated_svd(const Eigen::MatrixXd& block, double epsilon_thr);

/// Greedy column-pivoted QR pivots of an r x k matrix (r <= k): each pivot
/// maximizes the residual column norm after orthogonalization against the
/// previously chosen columns; ties break to the lowest index. Throws
/// NumericalError if all residual norms fall below 1e-13 before r pivots.
std::vector<int> pivoted_qr_indices(const Eigen::MatrixXd& m);

/// Two-way greedy selection: split the time grid into cfg.t_div contiguous
/// blocks (floor-division sizes, remainder columns on the last block), run
/// truncated_svd per block, take pivoted QR indices of the left/right singular
/// blocks, and emit the full r x r Cartesian product of spatial x temporal
/// indices per block. Cardinality is sum_k r_k^2. Honors GNSINDY_THREADS for
/// per-block parallelism; block results are concatenated in block order.
SampleSet qdeim_sample(const SnapshotMatrix& snap, const QdeimConfig& cfg);

/// Uniform draw of `size` points without replacement (seeded xoshiro256**
/// partial Fisher-Yates). Throws ConfigError if size exceeds the set.
SampleSet subsample(const SampleSet& samples, std::size_t size, std::uint64_t seed);

void save_samples_csv(const SampleSet& samples, const std::filesystem::path& path);
SampleSet load_samples_csv(const std::filesystem::path& path);

}  // namespace gnsindy

#endif  // GNSINDY_SAMPLING_HPP
