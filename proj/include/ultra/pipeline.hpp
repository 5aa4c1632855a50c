#ifndef ULTRA_PIPELINE_HPP
#define ULTRA_PIPELINE_HPP

#include "ultra/core.hpp"
#include "ultra/dissim.hpp"
#include "ultra/hclust.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ultra {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitGolden = 3 };

enum class LevelMode { cost, rank };
enum class OutputFormat { json, csv, text };

struct PipelineConfig {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  MergeCriterion criterion = MergeCriterion::median;
  LevelMode levels = LevelMode::cost;
  unsigned p = 3;
  double tau = 0.1;
  std::size_t level = 2;
  OutputFormat format = OutputFormat::json;
  std::vector<std::string> columns;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Euclidean dissimilarities, then naive or NN-chain clustering depending on
/// whether the criterion is reducible.
Dendrogram cluster_table(const DataTable& data, MergeCriterion crit, LevelMode levels);

/**
 * Reads the CSV, clusters it and writes dendrogram.json, dendrogram.nwk,
 * coeffs.json, coeffs.csv, chains.csv, regress.csv and padic.json into
 * out_dir. A 0/1 table additionally yields lattice.json and lattice.txt.
 * Returns an ExitCode; diagnostics go to `log`.
 */
int run_pipeline(const PipelineConfig& cfg, std::ostream& log);

/// Datasets compiled into the binary for the golden checks.
struct GoldenData {
  DataTable iris8;
  BooleanTable objects5;
  Dendrogram ranked8;
  Dendrogram triangle3;
};

GoldenData embedded_golden_data();

struct GoldenCheck {
  std::string name;
  std::string anchor;
  bool passed;
  std::string detail;
};

struct SelftestReport {
  std::vector<GoldenCheck> checks;
  std::vector<std::string> notes;

  bool all_passed() const;
  void print(std::ostream& out) const;
};

SelftestReport selftest(const GoldenData& data);

struct BenchmarkPoint {
  std::size_t n;
  double seconds;  // best of the repetitions
};

/// Times nn_chain_cluster (ward) on random points in the unit cube; the
/// distance matrix is built outside the timed region.
std::vector<BenchmarkPoint> benchmark_nn_chain(const std::vector<std::size_t>& sizes,
                                               std::size_t repetitions, unsigned seed);

}  // namespace ultra

#endif  // ULTRA_PIPELINE_HPP
