#ifndef GNSINDY_NETWORK_HPP
#define GNSINDY_NETWORK_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "gnsindy/dictionary.hpp"

namespace gnsindy {

/// Per-dimension affine map from physical (t, x) onto [-1, 1]:
/// normalized = scale * physical + shift. Derivatives returned by the network
/// are chain-rule corrected back to physical units.
struct InputAffine {
  double t_scale = 1.0, t_shift = 0.0;
  double x_scale = 1.0, x_shift = 0.0;

  static InputAffine from_ranges(double t_min, double t_max, double x_min, double x_max);
};

/// Multilayer perceptron with sine hidden activations and an affine output.
/// The first layer output is scaled by omega0 before the sine.
struct SirenNetwork {
  std::vector<int> widths;  // first 2 (t, x), last 1
  double omega0 = 30.0;
  InputAffine input_affine;
  std::vector<Eigen::MatrixXd> weights;  // weights[l]: widths[l+1] x widths[l]
  std::vector<Eigen::VectorXd> biases;   // biases[l]:  widths[l+1]

  int layer_count() const { return static_cast<int>(weights.size()); }
  int parameter_count() const;
};

/// Deterministic initialization for a fixed seed: first layer weights
/// U(-1/fan_in, 1/fan_in), hidden/output weights U(-sqrt(6/fan_in), +...),
/// biases U(-1/sqrt(fan_in), +...). Throws ConfigError on bad widths.
SirenNetwork init_siren(const std::vector<int>& widths, double omega0, std::uint64_t seed);

/// Exact derivative bundle (u, u_x, u_xx, u_xxx, u_t) of the network function
/// at one physical point, by third-order jet propagation through each layer.
Jet forward_jet(const SirenNetwork& net, double t, double x);

/// Jets of a whole batch, one column per sample.
struct JetBatch {
  Eigen::RowVectorXd u, u_x, u_xx, u_xxx, u_t;
  Eigen::Index size() const { return u.cols(); }
  Jet at(Eigen::Index s) const { return {u[s], u_x[s], u_xx[s], u_xxx[s], u_t[s]}; }
};

/// Jet slots of one layer for the whole batch (width x N each).
struct SlotBatch {
  Eigen::MatrixXd v, x, xx, xxx, t;
};

/// Forward state kept for backprop: inputs of every affine layer and the
/// pre-activation jets of every sine layer.
struct ForwardTrace {
  std::vector<SlotBatch> layer_in;   // layer_count entries
  std::vector<SlotBatch> preact;     // layer_count - 1 entries (sine layers)
};

JetBatch forward_jets(const SirenNetwork& net, const Eigen::VectorXd& t,
                      const Eigen::VectorXd& x, ForwardTrace* trace = nullptr);

/// Adjoints of the output jet slots, i.e. dLoss/d(slot) per sample.
struct JetAdjointBatch {
  Eigen::RowVectorXd u, u_x, u_xx, u_xxx, u_t;
};

struct Gradients {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
};

/// Exact reverse-mode gradient of any loss whose jet-slot adjoints are given,
/// with respect to every weight and bias. Requires the trace of the matching
/// forward_jets call.
Gradients backprop(const SirenNetwork& net, const ForwardTrace& trace,
                   const JetAdjointBatch& adjoint);

/// Parameters as one flat vector, layer-major: weights row-major, then bias.
Eigen::VectorXd flatten_parameters(const SirenNetwork& net);
void set_parameters(SirenNetwork& net, const Eigen::VectorXd& flat);
Eigen::VectorXd flatten_gradients(const SirenNetwork& net, const Gradients& grads);

/// Binary container (magic GNSW, little-endian): widths, omega0, input_affine,
/// parameters in flat order.
void save_network(const SirenNetwork& net, const std::filesystem::path& path);
SirenNetwork load_network(const std::filesystem::path& path);

}  // namespace gnsindy

#endif  // GNSINDY_NETWORK_HPP
