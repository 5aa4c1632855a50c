#include "ultra/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>

namespace ultra {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  std::string out(s.substr(first, last - first + 1));
  if (out.size() >= 2 && out.front() == '"' && out.back() == '"') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      cur.push_back(c);
    } else if (c == ',' && !quoted) {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

std::optional<double> parse_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return v;
}

}  // namespace

DataTable read_csv(std::istream& in, const CsvOptions& opts) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw DataError("CSV input is empty");
  std::vector<std::string> header = rows.front();
  rows.erase(rows.begin());
  if (rows.empty()) throw DataError("CSV input has a header but no data rows");

  bool labelled = opts.row_labels == RowLabels::present;
  if (opts.row_labels == RowLabels::detect) {
    labelled = header.front().empty() ||
               std::any_of(rows.begin(), rows.end(),
                           [](const auto& r) { return !parse_number(r.front()).has_value(); });
  }
  const std::size_t offset = labelled ? 1 : 0;
  const std::size_t width = header.size();
  if (width <= offset) throw DataError("CSV input has no data columns");

  std::vector<std::size_t> selected;
  if (opts.columns.empty()) {
    for (std::size_t c = offset; c < width; ++c) selected.push_back(c);
  } else {
    for (const std::string& name : opts.columns) {
      auto it = std::find(header.begin() + static_cast<std::ptrdiff_t>(offset), header.end(), name);
      if (it != header.end()) {
        selected.push_back(static_cast<std::size_t>(it - header.begin()));
        continue;
      }
      const auto num = parse_number(name);
      const auto idx = num ? static_cast<std::size_t>(*num) : 0;
      if (!num || *num != static_cast<double>(idx) || idx < 1 || idx + offset > width) {
        throw DataError("unknown CSV column '" + name + "'");
      }
      selected.push_back(idx - 1 + offset);
    }
  }

  DataTable table;
  table.values.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(selected.size()));
  for (std::size_t c : selected) table.col_labels.push_back(header[c]);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != width) {
      throw DataError("CSV row " + std::to_string(r + 2) + " has " +
                      std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(width));
    }
    if (labelled) table.row_labels.push_back(cells.front());
    for (std::size_t s = 0; s < selected.size(); ++s) {
      const auto v = parse_number(cells[selected[s]]);
      if (!v || !std::isfinite(*v)) {
        throw DataError("CSV row " + std::to_string(r + 2) + ", column '" + header[selected[s]] +
                        "': not a finite decimal number: '" + cells[selected[s]] + "'");
      }
      table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) = *v;
    }
  }
  return table;
}

DataTable read_csv_file(const std::filesystem::path& path, const CsvOptions& opts) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  return read_csv(in, opts);
}

std::string format_fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

void write_csv(std::ostream& out, const DataTable& table, int decimals) {
  const bool labelled = !table.row_labels.empty();
  for (std::size_t j = 0; j < table.cols(); ++j) {
    if (j > 0 || labelled) out << ',';
    out << table.col_label(j);
  }
  out << '\n';
  for (std::size_t i = 0; i < table.rows(); ++i) {
    if (labelled) out << table.row_labels[i];
    for (std::size_t j = 0; j < table.cols(); ++j) {
      if (j > 0 || labelled) out << ',';
      out << format_fixed(table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                          decimals);
    }
    out << '\n';
  }
}

nlohmann::json dendrogram_to_json(const Dendrogram& dend, const std::vector<std::string>& labels) {
  nlohmann::json j;
  j["n_terminals"] = dend.n_terminals();
  auto merges = nlohmann::json::array();
  for (const Merge& m : dend.merges()) merges.push_back({m.left, m.right, m.level});
  j["merges"] = std::move(merges);
  if (!dend.raw_levels().empty()) j["raw_levels"] = dend.raw_levels();
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

Dendrogram dendrogram_from_json(const nlohmann::json& j) {
  try {
    const auto n = j.at("n_terminals").get<std::size_t>();
    std::vector<Merge> merges;
    for (const auto& m : j.at("merges")) {
      if (!m.is_array() || m.size() != 3) throw DataError("each merge must be [a, b, level]");
      merges.push_back({m[0].get<NodeId>(), m[1].get<NodeId>(), m[2].get<double>()});
    }
    Dendrogram dend(n, std::move(merges));
    if (j.contains("raw_levels")) dend.set_raw_levels(j["raw_levels"].get<std::vector<double>>());
    return dend;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed dendrogram JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("invalid dendrogram: ") + e.what());
  }
}

std::vector<std::string> dendrogram_labels(const nlohmann::json& j) {
  if (!j.contains("labels")) return {};
  return j["labels"].get<std::vector<std::string>>();
}

Dendrogram read_dendrogram_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return dendrogram_from_json(j);
}

std::string to_newick(const Dendrogram& dend, const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << std::setprecision(17);
  auto emit = [&](auto&& self, NodeId id) -> void {
    if (dend.is_terminal(id)) {
      out << (id < labels.size() ? labels[id] : std::to_string(id));
    } else {
      const Merge& m = dend.merge_of(id);
      out << '(';
      self(self, m.left);
      out << ':' << (m.level - dend.level(m.left)) << ',';
      self(self, m.right);
      out << ':' << (m.level - dend.level(m.right)) << ')';
    }
  };
  emit(emit, dend.root());
  out << ';';
  return out.str();
}

nlohmann::json haar_to_json(const HaarTransform<double>& ht, const std::vector<std::string>& columns) {
  auto row = [](const auto& r) {
    std::vector<double> v(static_cast<std::size_t>(r.size()));
    for (Eigen::Index i = 0; i < r.size(); ++i) v[static_cast<std::size_t>(i)] = r(i);
    return v;
  };
  nlohmann::json j;
  j["smooth"] = row(ht.smooth);
  nlohmann::json details = nlohmann::json::object();
  for (std::size_t k = 0; k < ht.dend.n_internal(); ++k) {
    const NodeId node = ht.dend.n_terminals() + k;
    details[std::to_string(node)] = {{"vector", row(ht.details.row(static_cast<Eigen::Index>(k)))},
                                     {"level", k + 1}};
  }
  j["details"] = std::move(details);
  if (!columns.empty()) j["columns"] = columns;
  return j;
}

HaarTransform<double> haar_from_json(const nlohmann::json& j, const Dendrogram& dend) {
  try {
    const auto smooth = j.at("smooth").get<std::vector<double>>();
    const auto m = static_cast<Eigen::Index>(smooth.size());
    HaarTransform<double> ht{dend, Eigen::VectorXd(m),
                             Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dend.n_internal()), m)};
    for (Eigen::Index c = 0; c < m; ++c) ht.smooth(c) = smooth[static_cast<std::size_t>(c)];
    const auto& details = j.at("details");
    if (details.size() != dend.n_internal()) {
      throw DataError("coefficient file has " + std::to_string(details.size()) +
                      " details, dendrogram has " + std::to_string(dend.n_internal()) +
                      " internal nodes");
    }
    for (const auto& [key, value] : details.items()) {
      const NodeId node = std::stoul(key);
      if (!dend.is_internal(node)) throw DataError("detail for unknown node " + key);
      const auto vec = value.at("vector").get<std::vector<double>>();
      if (static_cast<Eigen::Index>(vec.size()) != m) {
        throw DataError("detail " + key + " has the wrong dimension");
      }
      auto row = ht.detail(node);
      for (Eigen::Index c = 0; c < m; ++c) row(c) = vec[static_cast<std::size_t>(c)];
    }
    return ht;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed coefficient JSON: ") + e.what());
  } catch (const std::logic_error& e) {
    throw DataError(std::string("malformed coefficient JSON: ") + e.what());
  }
}

void write_haar_table_csv(std::ostream& out, const HaarTransform<double>& ht,
                          const std::vector<std::string>& columns) {
  const std::size_t top = ht.dend.n_internal();
  out << ",s" << top;
  for (std::size_t r = top; r >= 1; --r) out << ",d" << r;
  out << '\n';
  for (std::size_t c = 0; c < ht.dims(); ++c) {
    const auto ic = static_cast<Eigen::Index>(c);
    out << (c < columns.size() ? columns[c] : "v" + std::to_string(c + 1));
    out << ',' << format_fixed(ht.smooth(ic));
    for (std::size_t r = top; r >= 1; --r) {
      out << ',' << format_fixed(ht.details(static_cast<Eigen::Index>(r - 1), ic));
    }
    out << '\n';
  }
}

nlohmann::json padic_to_json(const Dendrogram& dend, unsigned p,
                             const std::vector<std::string>& labels) {
  nlohmann::json j;
  j["p"] = p;
  j["unique"] = check_uniqueness(dend, p);
  auto codes = nlohmann::json::array();
  for (std::size_t t = 0; t < dend.n_terminals(); ++t) {
    const PadicCode code = encode(dend, p, t);
    auto coeffs = nlohmann::json::array();
    for (const auto& [level, c] : code.coeffs) coeffs.push_back({level, c});
    nlohmann::json entry{{"terminal", t}, {"coeffs", coeffs},
                         {"decimal", decimal_exact(code).str()}};
    if (t < labels.size()) entry["label"] = labels[t];
    codes.push_back(std::move(entry));
  }
  j["codes"] = std::move(codes);
  return j;
}

std::string attribute_set_label(const SetValuedDistanceTable& table, const AttributeSet& set) {
  if (set.empty()) return "{}";
  std::string out;
  for (std::size_t j : set.indices()) {
    if (!out.empty()) out += ',';
    out += table.attribute_label(j);
  }
  return out;
}

nlohmann::json lattice_to_json(const SetValuedDistanceTable& table, const Semilattice& lattice,
                               const std::vector<std::size_t>& levels) {
  nlohmann::json j;
  auto vertices = nlohmann::json::array();
  auto pairs = nlohmann::json::object();
  for (const AttributeSet& v : lattice.vertices) {
    vertices.push_back({{"set", v.indices()}, {"label", attribute_set_label(table, v)},
                        {"level", v.size()}});
    auto list = nlohmann::json::array();
    for (const auto& [a, b] : pairs_for_node(table, v)) list.push_back({a, b});
    pairs[attribute_set_label(table, v)] = std::move(list);
  }
  j["vertices"] = std::move(vertices);
  j["edges"] = lattice.edges;
  j["pairs"] = std::move(pairs);
  auto clusters = nlohmann::json::object();
  for (std::size_t k : levels) clusters[std::to_string(k)] = clusters_at_level(table, k);
  j["clusters"] = std::move(clusters);
  std::vector<std::string> objects;
  for (std::size_t i = 0; i < table.size(); ++i) objects.push_back(table.object_label(i));
  j["objects"] = std::move(objects);
  return j;
}

std::string render_lattice_text(const SetValuedDistanceTable& table, const Semilattice& lattice,
                                const std::vector<std::size_t>& levels) {
  const std::size_t m = table.n_attributes();
  std::map<std::size_t, std::vector<std::string>> potential;
  std::map<std::size_t, std::vector<std::string>> found;
  if (m <= 6) {
    std::vector<AttributeSet> all;
    for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
      std::vector<std::size_t> idx;
      for (std::size_t b = 0; b < m; ++b) {
        if (mask & (std::size_t{1} << b)) idx.push_back(b);
      }
      all.emplace_back(std::move(idx));
    }
    std::sort(all.begin(), all.end());
    for (const auto& s : all) potential[s.size()].push_back(attribute_set_label(table, s));
  }
  for (const auto& v : lattice.vertices) found[v.size()].push_back(attribute_set_label(table, v));

  auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : "   ") + p;
    return s;
  };
  std::ostringstream out;
  out << std::left << std::setw(34) << "Potential lattice vertices" << std::setw(34)
      << "Lattice vertices found" << "Level\n";
  const std::size_t lowest = found.empty() ? 0 : found.begin()->first;
  for (std::size_t lvl = m + 1; lvl-- > std::min<std::size_t>(lowest, 1);) {
    out << std::setw(34) << join(potential[lvl]) << std::setw(34) << join(found[lvl]) << lvl
        << '\n';
  }
  out << '\n';
  for (auto it = lattice.vertices.rbegin(); it != lattice.vertices.rend(); ++it) {
    out << "The set " << attribute_set_label(table, *it) << " corresponds to:";
    const auto pairs = pairs_for_node(table, *it);
    if (pairs.empty()) out << " (union closure only)";
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      out << (p == 0 ? " " : ", ") << "d(" << table.object_label(pairs[p].first) << ','
          << table.object_label(pairs[p].second) << ')';
    }
    out << '\n';
  }
  for (std::size_t k : levels) {
    out << "\nClusters defined by all pairwise linkage at level <= " << k << ":\n";
    for (const ObjectSet& c : clusters_at_level(table, k)) {
      out << "  ";
      for (std::size_t i = 0; i < c.size(); ++i) out << (i ? ", " : "") << table.object_label(c[i]);
      out << '\n';
    }
  }
  return out.str();
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << j.dump(2) << '\n';
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
}

}  // namespace ultra
