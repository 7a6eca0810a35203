#ifndef GNSINDY_CONFIG_HPP
#define GNSINDY_CONFIG_HPP

#include <filesystem>
#include <map>
#include <string>

#include "gnsindy/sampling.hpp"
#include "gnsindy/snapshot.hpp"
#include "gnsindy/trainer.hpp"

namespace gnsindy {

/// Everything one experiment needs: data generation, sampling, dictionary,
/// training, and output location.
struct ExperimentConfig {
  PdeSpec pde;
  QdeimConfig qdeim;
  int poly_order = 2;
  int deriv_order = 2;
  TrainConfig train;
  std::string out_dir = "out";
  std::string preset;  // set when built from a preset

  void validate() const;

  /// Fully-resolved flat key/value view, embedded in reports so a run is
  /// reconstructible from its report alone.
  std::map<std::string, std::string> to_map() const;
};

/// Compiled-in experiment presets: "burgers", "allen-cahn", "kdv".
ExperimentConfig preset_config(const std::string& name);

/// Flat key-value config text: one `key = value` per line, `#` comments,
/// dotted section keys (reference in the README). Unknown keys are errors.
std::map<std::string, std::string> parse_config_file(const std::filesystem::path& path);

/// Applies flat entries on top of a base config (preset or defaults).
void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, std::string>& entries);

}  // namespace gnsindy

#endif  // GNSINDY_CONFIG_HPP
