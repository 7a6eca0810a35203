#ifndef GNSINDY_SNAPSHOT_HPP
#define GNSINDY_SNAPSHOT_HPP

#include <Eigen/Dense>
#include <filesystem>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gnsindy {

/// Field values of one scalar PDE on a uniform space-time grid.
/// Rows index space, columns index time.
struct SnapshotMatrix {
  Eigen::MatrixXd values;  // n x m
  Eigen::VectorXd x_grid;  // length n, strictly increasing, uniform
  Eigen::VectorXd t_grid;  // length m, strictly increasing, uniform

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }

  /// Throws DataError if grids are non-uniform/non-increasing, sizes disagree,
  /// any value is non-finite, or n < 2 / m < 2.
  void validate() const;
};

enum class PdeKind { Burgers, AllenCahn, KdV };

struct GaussianBump {
  double center = 0.0;
  double width = 1.0;
  double amplitude = 1.0;
};
struct TanhKink {};
struct CosineSquared {};  // u0(x) = x^2 cos(pi x)
struct SolitonSum {
  std::vector<std::pair<double, double>> solitons;  // (speed, offset)
};

using InitialCondition = std::variant<GaussianBump, TanhKink, CosineSquared, SolitonSum>;

/// Problem description for the pseudo-spectral generator. Conventions:
///   Burgers:    u_t = advection * u * u_x + nu * u_xx        (advection = -1, nu = 0.1)
///   Allen-Cahn: u_t = gamma1 * u_xx + gamma2 * (u - u^3)     (gamma1 = 1e-4, gamma2 = 5)
///   KdV:        u_t = c * u * u_x + alpha * u_xxx            (c = 6, alpha = 1)
struct PdeSpec {
  PdeKind kind = PdeKind::Burgers;

  double x_min = -8.0, x_max = 8.0;
  double t_min = 0.0, t_max = 10.0;
  int n = 256;  // spatial points, must be a power of two
  int m = 100;  // time instances

  double nu = 0.1;
  double advection = -1.0;
  double gamma1 = 1e-4;
  double gamma2 = 5.0;
  double c = 6.0;
  double alpha = 1.0;

  InitialCondition ic = GaussianBump{};

  /// Throws ConfigError on invalid coefficients, non-power-of-two n, or a
  /// degenerate domain.
  void validate() const;
};

/// Diagnostics from spectral_solve.
struct SolveStats {
  double residual_rel_l2 = 0.0;  // PDE residual over interior times, relative L2
  double max_abs_u = 0.0;
  int steps_per_interval = 0;  // internal RK4 steps between saved columns
};

/// Integrating-factor RK4 pseudo-spectral solve on a periodic domain, sampled
/// on the requested n x m grid. The stiff linear part is integrated exactly;
/// the nonlinear term is dealiased with the 3/2 rule. Throws NumericalError
/// (with the offending time) if |u| exceeds 1e6.
SnapshotMatrix spectral_solve(const PdeSpec& spec, SolveStats* stats = nullptr);

/// Closed-form single soliton of u_t - 6 u u_x - u_xxx = 0:
///   u(x,t) = (s/2) sech^2( (sqrt(s)/2) (x + s t - offset) ).
SnapshotMatrix kdv_soliton(double speed, double offset, const Eigen::VectorXd& x_grid,
                           const Eigen::VectorXd& t_grid);

enum class SnapshotFormat { Csv, Binary };

void save_snapshot(const SnapshotMatrix& snap, const std::filesystem::path& path,
                   SnapshotFormat format);
SnapshotMatrix load_snapshot(const std::filesystem::path& path, SnapshotFormat format);

/// Format inferred from the extension: ".csv" -> Csv, anything else -> Binary.
SnapshotFormat snapshot_format_for(const std::filesystem::path& path);

}  // namespace gnsindy

#endif  // GNSINDY_SNAPSHOT_HPP
