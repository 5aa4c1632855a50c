#ifndef ULTRA_IO_HPP
#define ULTRA_IO_HPP

#include "ultra/core.hpp"
#include "ultra/dissim.hpp"
#include "ultra/genlattice.hpp"
#include "ultra/haar.hpp"
#include "ultra/padic.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace ultra {

/// Malformed or inconsistent input data (as opposed to a usage error).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RowLabels { detect, present, absent };

struct CsvOptions {
  RowLabels row_labels = RowLabels::detect;
  /// Header names or 1-based column numbers; empty selects every column.
  std::vector<std::string> columns;
};

/// Header row first; an optional leading column of row labels.
DataTable read_csv(std::istream& in, const CsvOptions& opts = {});
DataTable read_csv_file(const std::filesystem::path& path, const CsvOptions& opts = {});
void write_csv(std::ostream& out, const DataTable& table, int decimals = 6);

/// Fixed-point formatting without a "-0.000..." artefact.
std::string format_fixed(double value, int decimals = 6);

nlohmann::json dendrogram_to_json(const Dendrogram& dend,
                                  const std::vector<std::string>& labels = {});
/// Accepts {n_terminals, merges: [[a, b, level], ...]}; optional raw_levels, labels.
Dendrogram dendrogram_from_json(const nlohmann::json& j);
std::vector<std::string> dendrogram_labels(const nlohmann::json& j);
Dendrogram read_dendrogram_file(const std::filesystem::path& path);

/// Newick text; branch length = parent level - child level.
std::string to_newick(const Dendrogram& dend, const std::vector<std::string>& labels = {});

/// {smooth: [...], details: {node_id: {vector: [...], level: rank}}, columns}
nlohmann::json haar_to_json(const HaarTransform<double>& ht,
                            const std::vector<std::string>& columns = {});
HaarTransform<double> haar_from_json(const nlohmann::json& j, const Dendrogram& dend);

/// Rows are attributes; columns s_{n-1}, d_{n-1}, ..., d_1.
void write_haar_table_csv(std::ostream& out, const HaarTransform<double>& ht,
                          const std::vector<std::string>& columns = {});

nlohmann::json padic_to_json(const Dendrogram& dend, unsigned p,
                             const std::vector<std::string>& labels = {});

nlohmann::json lattice_to_json(const SetValuedDistanceTable& table, const Semilattice& lattice,
                               const std::vector<std::size_t>& levels);
/// Two-column rendering: every potential vertex beside the vertices found,
/// one line per level, followed by the vertex/pair and cluster listings.
std::string render_lattice_text(const SetValuedDistanceTable& table, const Semilattice& lattice,
                                const std::vector<std::size_t>& levels);

std::string attribute_set_label(const SetValuedDistanceTable& table, const AttributeSet& set);

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace ultra

#endif  // ULTRA_IO_HPP
