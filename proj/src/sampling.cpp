#include "gnsindy/sampling.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <numeric>
#include <sstream>

#include "gnsindy/errors.hpp"
#include "gnsindy/rng.hpp"

namespace gnsindy {

namespace {

int worker_threads_from_env() {
  const char* env = std::getenv("GNSINDY_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1)
    throw ConfigError("GNSINDY_THREADS must be a positive integer, got '" + std::string(env) + "'");
  return static_cast<int>(v);
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void QdeimConfig::validate(Eigen::Index m) const {
  if (!(epsilon_thr > 0.0) || !(epsilon_thr < 1.0))
    throw ConfigError("qdeim: epsilon_thr must lie in (0, 1)");
  if (t_div < 1) throw ConfigError("qdeim: t_div must be >= 1");
  if (t_div > m) throw ConfigError("qdeim: t_div exceeds the number of time columns");
  if (m / t_div < 2) throw ConfigError("qdeim: every time subdomain needs at least 2 columns");
  if (subsample_size && *subsample_size < 0)
    throw ConfigError("qdeim: subsample_size must be non-negative");
}

TruncatedSvd truncated_svd(const Eigen::MatrixXd& block, double epsilon_thr) {
  if (block.size() == 0) throw NumericalError("truncated_svd: empty block");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double total = sigma.sum();
  if (!(total > 0.0)) throw NumericalError("truncated_svd: all-zero matrix has no energy rank");

  int rank = 0;
  double cumulative = 0.0;
  for (Eigen::Index j = 0; j < sigma.size(); ++j) {
    cumulative += sigma[j];
    if (1.0 - cumulative / total < epsilon_thr) {
      rank = static_cast<int>(j) + 1;
      break;
    }
  }
  if (rank == 0) rank = static_cast<int>(sigma.size());  // criterion holds at r = z

  TruncatedSvd out;
  out.rank = rank;
  out.left = svd.matrixU().leftCols(rank);
  out.sigma = sigma.head(rank);
  out.right_t = svd.matrixV().leftCols(rank).transpose();
  return out;
}

std::vector<int> pivoted_qr_indices(const Eigen::MatrixXd& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  if (rows > cols)
    throw NumericalError("pivoted_qr_indices: need at least as many columns as rows");

  Eigen::MatrixXd residual = m;
  std::vector<char> chosen(static_cast<size_t>(cols), 0);
  std::vector<int> pivots;
  pivots.reserve(static_cast<size_t>(rows));

  for (Eigen::Index step = 0; step < rows; ++step) {
    // Strict > keeps the lowest index on exact ties.
    int best = -1;
    double best_norm = -1.0;
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (chosen[static_cast<size_t>(k)]) continue;
      const double norm = residual.col(k).norm();
      if (norm > best_norm) {
        best_norm = norm;
        best = static_cast<int>(k);
      }
    }
    if (best < 0 || best_norm < 1e-13)
      throw NumericalError("pivoted_qr_indices: rank deficiency at pivot " +
                           std::to_string(step));
    pivots.push_back(best);
    chosen[static_cast<size_t>(best)] = 1;

    const Eigen::VectorXd q = residual.col(best) / best_norm;
    for (Eigen::Index k = 0; k < cols; ++k) {
      if (chosen[static_cast<size_t>(k)]) continue;
      residual.col(k) -= q * q.dot(residual.col(k));
    }
  }
  return pivots;
}

namespace {

struct BlockRange {
  int begin = 0;
  int count = 0;
};

// Floor-division slicing: t_div blocks of m/t_div columns, remainder on the
// last block.
std::vector<BlockRange> time_blocks(Eigen::Index m, int t_div) {
  std::vector<BlockRange> blocks(static_cast<size_t>(t_div));
  const int base = static_cast<int>(m) / t_div;
  for (int b = 0; b < t_div; ++b) {
    blocks[static_cast<size_t>(b)].begin = b * base;
    blocks[static_cast<size_t>(b)].count =
        (b + 1 == t_div) ? static_cast<int>(m) - b * base : base;
  }
  return blocks;
}

std::vector<SamplePoint> qdeim_block(const SnapshotMatrix& snap, const BlockRange& range,
                                     double epsilon_thr, int block_index) {
  try {
    const Eigen::MatrixXd block = snap.values.middleCols(range.begin, range.count);
    const TruncatedSvd svd = truncated_svd(block, epsilon_thr);
    const std::vector<int> space_idx = pivoted_qr_indices(svd.left.transpose());
    const std::vector<int> time_idx = pivoted_qr_indices(svd.right_t);

    std::vector<SamplePoint> points;
    points.reserve(space_idx.size() * time_idx.size());
    for (int row : space_idx) {
      for (int local_col : time_idx) {
        const int col = range.begin + local_col;
        points.push_back({snap.t_grid[col], snap.x_grid[row], snap.values(row, col), row, col});
      }
    }
    return points;
  } catch (const NumericalError& err) {
    throw NumericalError("qdeim block " + std::to_string(block_index) + ": " + err.what());
  }
}

}  // namespace

SampleSet qdeim_sample(const SnapshotMatrix& snap, const QdeimConfig& cfg) {
  snap.validate();
  cfg.validate(snap.cols());
  const auto blocks = time_blocks(snap.cols(), cfg.t_div);
  const int threads = worker_threads_from_env();

  std::vector<std::vector<SamplePoint>> per_block(blocks.size());
  if (threads > 1 && blocks.size() > 1) {
    std::vector<std::future<std::vector<SamplePoint>>> futures;
    futures.reserve(blocks.size());
    for (size_t b = 0; b < blocks.size(); ++b)
      futures.push_back(std::async(std::launch::async, qdeim_block, std::cref(snap), blocks[b],
                                   cfg.epsilon_thr, static_cast<int>(b)));
    for (size_t b = 0; b < blocks.size(); ++b) per_block[b] = futures[b].get();
  } else {
    for (size_t b = 0; b < blocks.size(); ++b)
      per_block[b] = qdeim_block(snap, blocks[b], cfg.epsilon_thr, static_cast<int>(b));
  }

  SampleSet out;
  for (auto& block_points : per_block)
    out.points.insert(out.points.end(), block_points.begin(), block_points.end());
  return out;
}

SampleSet subsample(const SampleSet& samples, std::size_t size, std::uint64_t seed) {
  if (size > samples.size())
    throw ConfigError("subsample: requested " + std::to_string(size) + " of " +
                      std::to_string(samples.size()) + " points");
  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  Xoshiro256ss rng(seed);
  // Partial Fisher-Yates: the first `size` slots are a uniform draw without
  // replacement.
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.bounded(order.size() - i));
    std::swap(order[i], order[j]);
  }
  SampleSet out;
  out.points.reserve(size);
  for (std::size_t i = 0; i < size; ++i) out.points.push_back(samples.points[order[i]]);
  return out;
}

void save_samples_csv(const SampleSet& samples, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw DataError("cannot open '" + path.string() + "' for writing");
  os << "t,x,u,src_row,src_col\n";
  for (const auto& p : samples.points)
    os << fmt_double(p.t) << ',' << fmt_double(p.x) << ',' << fmt_double(p.u) << ',' << p.src_row
       << ',' << p.src_col << '\n';
  if (!os) throw DataError("write failure on '" + path.string() + "'");
}

SampleSet load_samples_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw DataError("cannot open '" + path.string() + "'");
  std::string line;
  if (!std::getline(is, line)) throw DataError("empty sample file", 1);
  if (line != "t,x,u,src_row,src_col" && line != "t,x,u,src_row,src_col\r")
    throw DataError("malformed sample header, expected 't,x,u,src_row,src_col'", 1);
  SampleSet out;
  long line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ss(line);
    SamplePoint p;
    char c1, c2, c3, c4;
    if (!(ss >> p.t >> c1 >> p.x >> c2 >> p.u >> c3 >> p.src_row >> c4 >> p.src_col) ||
        c1 != ',' || c2 != ',' || c3 != ',' || c4 != ',')
      throw DataError("malformed sample row", line_no);
    out.points.push_back(p);
  }
  return out;
}

}  // namespace gnsindy
