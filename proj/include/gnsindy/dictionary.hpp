#ifndef GNSINDY_DICTIONARY_HPP
#define GNSINDY_DICTIONARY_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace gnsindy {

/// Per-point derivative bundle of the surrogate, in physical units.
struct Jet {
  double u = 0.0;
  double u_x = 0.0;
  double u_xx = 0.0;
  double u_xxx = 0.0;
  double u_t = 0.0;
};

/// One candidate term u^i * d^j u / dx^j  (j = 0 contributes no derivative
/// factor, so (i,0) is the pure power u^i and (0,0) is the constant 1).
struct TermSpec {
  int poly_power = 0;
  int deriv_order = 0;
  std::string label;
};

/// Canonical label, e.g. (0,0) -> "1", (1,1) -> "u u_x", (2,3) -> "u^2 u_xxx".
std::string term_label(int poly_power, int deriv_order);

struct Dictionary {
  int poly_order = 0;   // p
  int deriv_order = 0;  // d
  std::vector<TermSpec> terms;  // (p+1)(d+1), poly-major order

  int size() const { return static_cast<int>(terms.size()); }
  std::vector<std::string> labels() const;
};

/// All terms u^i d^j u for i <= p, j <= d, ordered i-major then j. Throws
/// ConfigError for p < 1 or d < 1 (degenerate library).
Dictionary build_dictionary(int poly_order, int deriv_order);

/// Candidate-term matrix and time derivative evaluated at a batch of jets.
struct DictionaryEvaluation {
  Eigen::MatrixXd theta;            // N x D
  Eigen::VectorXd u_t;              // N
  std::vector<std::string> labels;  // D
};

/// theta[s][k] = u_s^{i_k} * (d^{j_k} u_s). Throws ConfigError if the
/// dictionary requests derivative orders above what jets carry (> 3).
DictionaryEvaluation evaluate_dictionary(std::span<const Jet> jets, const Dictionary& dict);

}  // namespace gnsindy

#endif  // GNSINDY_DICTIONARY_HPP
