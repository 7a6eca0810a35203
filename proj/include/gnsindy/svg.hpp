#ifndef GNSINDY_SVG_HPP
#define GNSINDY_SVG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "gnsindy/sampling.hpp"
#include "gnsindy/snapshot.hpp"

namespace gnsindy {

/// Field heatmap, one rectangle per grid cell, fixed 256-entry colormap.
/// When `overlay` is non-null its points are drawn as markers on top.
void write_heatmap_svg(const SnapshotMatrix& snap, const std::filesystem::path& path,
                       const std::string& title, const SampleSet* overlay = nullptr);

/// One polyline per series over a shared x axis, with legend.
struct LineSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};
void write_line_chart_svg(const std::vector<LineSeries>& series,
                          const std::filesystem::path& path, const std::string& title,
                          const std::string& x_label, const std::string& y_label);

}  // namespace gnsindy

#endif  // GNSINDY_SVG_HPP
