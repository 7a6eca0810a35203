#include "gnsindy/snapshot.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "binary_io.hpp"
#include "gnsindy/errors.hpp"

namespace gnsindy {

namespace {

constexpr char kCsvCorner[] = "x\\t";  // literal token in cell (0,0)
constexpr char kBinaryMagic[4] = {'G', 'N', 'S', 'D'};

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_grid(const Eigen::VectorXd& grid, const char* name, long line_hint) {
  if (grid.size() < 2) throw DataError(std::string(name) + " grid must have at least 2 points");
  const double step0 = grid[1] - grid[0];
  for (Eigen::Index i = 0; i + 1 < grid.size(); ++i) {
    const double step = grid[i + 1] - grid[i];
    if (!(step > 0.0))
      throw DataError(std::string("non-monotone ") + name + " grid", line_hint);
    if (std::abs(step - step0) > 1e-9 * std::abs(step0))
      throw DataError(std::string("non-uniform ") + name + " grid", line_hint);
  }
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    if (!std::isfinite(grid[i]))
      throw DataError(std::string("non-finite value in ") + name + " grid", line_hint);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& field, long line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::exception&) {
    throw DataError("cannot parse number '" + field + "'", line);
  }
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

void SnapshotMatrix::validate() const {
  if (values.rows() != x_grid.size() || values.cols() != t_grid.size())
    throw DataError("snapshot size mismatch between values and grids");
  if (values.rows() < 2 || values.cols() < 2)
    throw DataError("snapshot requires n >= 2 and m >= 2");
  check_grid(x_grid, "space", 0);
  check_grid(t_grid, "time", 0);
  if (!values.allFinite()) throw DataError("non-finite value in snapshot field");
}

void PdeSpec::validate() const {
  if (!(x_max > x_min) || !(t_max > t_min)) throw ConfigError("pde: empty space or time interval");
  if (n < 2 || m < 2) throw ConfigError("pde: resolution must satisfy n >= 2, m >= 2");
  if (!is_power_of_two(n)) throw ConfigError("pde: n must be a power of two (pseudo-spectral)");
  switch (kind) {
    case PdeKind::Burgers:
      if (!(nu > 0.0)) throw ConfigError("pde: Burgers requires nu > 0");
      break;
    case PdeKind::AllenCahn:
      if (!(gamma1 > 0.0) || !(gamma2 > 0.0))
        throw ConfigError("pde: Allen-Cahn requires gamma1 > 0 and gamma2 > 0");
      break;
    case PdeKind::KdV:
      break;
  }
  if (const auto* sum = std::get_if<SolitonSum>(&ic)) {
    if (sum->solitons.empty()) throw ConfigError("pde: soliton-sum initial condition is empty");
    for (const auto& [speed, offset] : sum->solitons) {
      (void)offset;
      if (!(speed > 0.0)) throw ConfigError("pde: soliton speeds must be > 0");
    }
  }
  if (const auto* bump = std::get_if<GaussianBump>(&ic)) {
    if (!(bump->width > 0.0)) throw ConfigError("pde: gaussian bump width must be > 0");
  }
}

SnapshotMatrix kdv_soliton(double speed, double offset, const Eigen::VectorXd& x_grid,
                           const Eigen::VectorXd& t_grid) {
  if (!(speed > 0.0)) throw ConfigError("kdv_soliton: speed must be > 0");
  SnapshotMatrix snap;
  snap.x_grid = x_grid;
  snap.t_grid = t_grid;
  snap.values.resize(x_grid.size(), t_grid.size());
  const double half_speed = 0.5 * speed;
  const double k = 0.5 * std::sqrt(speed);
  for (Eigen::Index j = 0; j < t_grid.size(); ++j) {
    for (Eigen::Index i = 0; i < x_grid.size(); ++i) {
      const double phase = k * (x_grid[i] + speed * t_grid[j] - offset);
      const double sech = 1.0 / std::cosh(phase);
      snap.values(i, j) = half_speed * sech * sech;
    }
  }
  snap.validate();
  return snap;
}

SnapshotFormat snapshot_format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? SnapshotFormat::Csv : SnapshotFormat::Binary;
}

namespace {

void save_csv(const SnapshotMatrix& snap, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open '" + path.string() + "' for writing");
  os << kCsvCorner;
  for (Eigen::Index j = 0; j < snap.cols(); ++j) os << ',' << fmt_double(snap.t_grid[j]);
  os << '\n';
  for (Eigen::Index i = 0; i < snap.rows(); ++i) {
    os << fmt_double(snap.x_grid[i]);
    for (Eigen::Index j = 0; j < snap.cols(); ++j) os << ',' << fmt_double(snap.values(i, j));
    os << '\n';
  }
  if (!os) throw DataError("write failure on '" + path.string() + "'");
}

SnapshotMatrix load_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(is, line)) throw DataError("empty snapshot file", 1);
  auto header = split_csv_line(line);
  if (header.size() < 3 || header[0] != kCsvCorner)
    throw DataError("malformed header: expected corner token 'x\\t' and a time grid", 1);
  const Eigen::Index m = static_cast<Eigen::Index>(header.size()) - 1;
  Eigen::VectorXd t_grid(m);
  for (Eigen::Index j = 0; j < m; ++j) t_grid[j] = parse_double(header[j + 1], 1);

  std::vector<double> xs;
  std::vector<std::vector<double>> rows;
  long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (static_cast<Eigen::Index>(fields.size()) != m + 1)
      throw DataError("row has " + std::to_string(fields.size()) + " fields, expected " +
                          std::to_string(m + 1),
                      line_no);
    xs.push_back(parse_double(fields[0], line_no));
    std::vector<double> row(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      row[j] = parse_double(fields[j + 1], line_no);
      if (!std::isfinite(row[j])) throw DataError("non-finite field value", line_no);
    }
    rows.push_back(std::move(row));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  if (n < 2) throw DataError("snapshot requires at least 2 spatial rows", line_no);

  SnapshotMatrix snap;
  snap.t_grid = t_grid;
  snap.x_grid = Eigen::Map<Eigen::VectorXd>(xs.data(), n);
  snap.values.resize(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j) snap.values(i, j) = rows[i][j];

  check_grid(snap.t_grid, "time", 1);
  // x-grid problems are attributed to the first body line for a usable message.
  check_grid(snap.x_grid, "space", 2);
  snap.validate();
  return snap;
}

void save_binary(const SnapshotMatrix& snap, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DataError("cannot open '" + path.string() + "' for writing");
  os.write(kBinaryMagic, 4);
  detail::write_u32(os, 1u);
  detail::write_u64(os, static_cast<std::uint64_t>(snap.rows()));
  detail::write_u64(os, static_cast<std::uint64_t>(snap.cols()));
  for (Eigen::Index i = 0; i < snap.rows(); ++i) detail::write_f64(os, snap.x_grid[i]);
  for (Eigen::Index j = 0; j < snap.cols(); ++j) detail::write_f64(os, snap.t_grid[j]);
  for (Eigen::Index i = 0; i < snap.rows(); ++i)
    for (Eigen::Index j = 0; j < snap.cols(); ++j) detail::write_f64(os, snap.values(i, j));
  if (!os) throw DataError("write failure on '" + path.string() + "'");
}

SnapshotMatrix load_binary(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DataError("cannot open '" + path.string() + "'");
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kBinaryMagic, 4) != 0)
    throw DataError("bad magic: not a GNSD snapshot file", 1);
  const auto version = detail::read_u32(is, 4);
  if (version != 1) throw DataError("unsupported GNSD version " + std::to_string(version), 4);
  const auto n = detail::read_u64(is, 8);
  const auto m = detail::read_u64(is, 16);
  if (n < 2 || m < 2 || n > (1ull << 32) || m > (1ull << 32))
    throw DataError("implausible snapshot dimensions", 8);

  SnapshotMatrix snap;
  snap.x_grid.resize(static_cast<Eigen::Index>(n));
  snap.t_grid.resize(static_cast<Eigen::Index>(m));
  long offset = 24;
  for (auto i = 0u; i < n; ++i, offset += 8) snap.x_grid[i] = detail::read_f64(is, offset);
  for (auto j = 0u; j < m; ++j, offset += 8) snap.t_grid[j] = detail::read_f64(is, offset);
  snap.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (auto i = 0u; i < n; ++i)
    for (auto j = 0u; j < m; ++j, offset += 8) snap.values(i, j) = detail::read_f64(is, offset);
  snap.validate();
  return snap;
}

}  // namespace

void save_snapshot(const SnapshotMatrix& snap, const std::filesystem::path& path,
                   SnapshotFormat format) {
  snap.validate();
  if (format == SnapshotFormat::Csv)
    save_csv(snap, path);
  else
    save_binary(snap, path);
}

SnapshotMatrix load_snapshot(const std::filesystem::path& path, SnapshotFormat format) {
  return format == SnapshotFormat::Csv ? load_csv(path) : load_binary(path);
}

}  // namespace gnsindy
