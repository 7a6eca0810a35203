#ifndef GNSINDY_ADAM_HPP
#define GNSINDY_ADAM_HPP

#include <Eigen/Dense>

#include "gnsindy/errors.hpp"

namespace gnsindy {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.99;
  double beta2 = 0.99;
  double epsilon = 1e-8;
  bool amsgrad = true;
};

/// First/second moment accumulators plus the amsgrad running max of the
/// bias-corrected second moment.
struct AdamState {
  AdamConfig config;
  long step = 0;
  Eigen::ArrayXd m, v, vhat_max;

  explicit AdamState(Eigen::Index size, AdamConfig cfg = {})
      : config(cfg),
        m(Eigen::ArrayXd::Zero(size)),
        v(Eigen::ArrayXd::Zero(size)),
        vhat_max(Eigen::ArrayXd::Zero(size)) {}
};

/// One Adam update with bias correction; with amsgrad the denominator uses the
/// running max of the corrected second moment, which never decreases.
inline void adam_step(AdamState& state, Eigen::VectorXd& params, const Eigen::VectorXd& grad) {
  if (params.size() != state.m.size() || grad.size() != state.m.size())
    throw ConfigError("adam_step: parameter/gradient size mismatch");
  const AdamConfig& c = state.config;
  ++state.step;
  const auto g = grad.array();
  state.m = c.beta1 * state.m + (1.0 - c.beta1) * g;
  state.v = c.beta2 * state.v + (1.0 - c.beta2) * g.square();
  const double m_corr = 1.0 - std::pow(c.beta1, static_cast<double>(state.step));
  const double v_corr = 1.0 - std::pow(c.beta2, static_cast<double>(state.step));
  Eigen::ArrayXd m_hat = state.m / m_corr;
  Eigen::ArrayXd v_hat = state.v / v_corr;
  if (c.amsgrad) {
    state.vhat_max = state.vhat_max.max(v_hat);
    v_hat = state.vhat_max;
  }
  params.array() -= c.learning_rate * m_hat / (v_hat.sqrt() + c.epsilon);
}

}  // namespace gnsindy

#endif  // GNSINDY_ADAM_HPP
