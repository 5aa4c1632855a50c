// Command-line front end: cluster, wavelet, padic, genum, canon, pipeline,
// selftest and bench.

#include "ultra/core.hpp"
#include "ultra/dissim.hpp"
#include "ultra/genlattice.hpp"
#include "ultra/haar.hpp"
#include "ultra/hclust.hpp"
#include "ultra/io.hpp"
#include "ultra/padic.hpp"
#include "ultra/pipeline.hpp"
#include "ultra/symmetry.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

using namespace ultra;

namespace {

bool verbose() {
  const char* v = std::getenv("ULTRA_VERBOSE");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    write_text_file(out_path, text);
    if (verbose()) std::cerr << "wrote " << out_path << '\n';
  }
}

std::string json_text(const nlohmann::json& j) { return j.dump(2) + "\n"; }

const std::map<std::string, MergeCriterion> kCriteria{
    {"single", MergeCriterion::single},   {"complete", MergeCriterion::complete},
    {"average", MergeCriterion::average}, {"ward", MergeCriterion::ward},
    {"median", MergeCriterion::median}};

const std::map<std::string, LevelMode> kLevelModes{{"cost", LevelMode::cost},
                                                    {"rank", LevelMode::rank}};

struct Options {
  std::string input;
  std::string out;
  std::string dend;
  std::string data;
  std::string coeffs;
  std::vector<std::string> columns;
  std::string criterion_name = "median";
  std::string levels_name = "cost";
  MergeCriterion criterion = MergeCriterion::median;
  LevelMode levels = LevelMode::cost;
  std::string algorithm = "auto";
  std::string newick;
  std::string mode;
  std::string format = "json";
  double tau = 0.1;
  bool per_coordinate = false;
  std::optional<std::size_t> terminal;
  unsigned p = 3;
  bool check_unique = false;
  std::size_t dilations = 0;
  std::size_t level = 2;
  bool corrupt = false;
  std::vector<std::size_t> sizes{256, 512, 1024};
  std::size_t reps = 5;
  PipelineConfig pipeline;
};

DataTable load_table(const Options& o, const std::string& path) {
  CsvOptions csv;
  csv.columns = o.columns;
  DataTable t = read_csv_file(path, csv);
  t.validate();
  return t;
}

int cmd_cluster(const Options& o) {
  const DataTable data = load_table(o, o.input);
  if (data.rows() < 2) throw DataError("clustering needs at least 2 rows");
  const DistanceMatrix d = euclidean_matrix(data);
  Dendrogram dend = [&] {
    if (o.algorithm == "naive") return naive_cluster(d, o.criterion);
    if (o.algorithm == "nnchain") return nn_chain_cluster(d, o.criterion);
    return is_reducible(o.criterion) ? nn_chain_cluster(d, o.criterion)
                                     : naive_cluster(d, o.criterion);
  }();
  if (o.levels == LevelMode::rank) dend = dend.with_rank_levels();
  emit(o.out, json_text(dendrogram_to_json(dend, data.row_labels)));
  if (!o.newick.empty()) write_text_file(o.newick, to_newick(dend, data.row_labels) + "\n");
  return kExitOk;
}

int cmd_wavelet(const Options& o) {
  if (o.dend.empty()) throw CLI::ValidationError("--dend", "is required");
  std::ifstream dend_in(o.dend);
  if (!dend_in) throw DataError("cannot open '" + o.dend + "'");
  nlohmann::json dend_json;
  try {
    dend_in >> dend_json;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + o.dend + "' is not valid JSON: " + e.what());
  }
  const Dendrogram dend = dendrogram_from_json(dend_json);
  const auto row_labels = dendrogram_labels(dend_json);
  const ThresholdMode tmode = o.per_coordinate ? ThresholdMode::coordinate : ThresholdMode::norm;

  std::optional<DataTable> data;
  if (!o.data.empty()) data = load_table(o, o.data);
  auto transform = [&]() -> HaarTransform<double> {
    if (data) return apply_to_signal(dend, *data);
    if (o.coeffs.empty()) throw CLI::ValidationError("--data/--coeffs", "one is required");
    std::ifstream in(o.coeffs);
    if (!in) throw DataError("cannot open '" + o.coeffs + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DataError("'" + o.coeffs + "' is not valid JSON: " + e.what());
    }
    return haar_from_json(j, dend);
  };
  std::vector<std::string> columns;
  if (data) columns = data->col_labels;

  if (o.mode == "forward") {
    const auto ht = transform();
    if (o.format == "csv") {
      std::ostringstream s;
      write_haar_table_csv(s, ht, columns);
      emit(o.out, s.str());
    } else {
      emit(o.out, json_text(haar_to_json(ht, columns)));
    }
  } else if (o.mode == "inverse" || o.mode == "regress") {
    auto ht = transform();
    if (o.mode == "regress") ht = threshold_regress(ht, o.tau, tmode);
    DataTable out;
    out.values = inverse(ht);
    out.row_labels = row_labels;
    out.col_labels = columns;
    std::ostringstream s;
    write_csv(s, out);
    emit(o.out, s.str());
  } else if (o.mode == "chain") {
    const auto ht = transform();
    std::ostringstream s;
    s << "terminal,step,error";
    for (std::size_t c = 0; c < ht.dims(); ++c) {
      s << ',' << (c < columns.size() ? columns[c] : "v" + std::to_string(c + 1));
    }
    s << '\n';
    for (std::size_t t = 0; t < dend.n_terminals(); ++t) {
      if (o.terminal && *o.terminal != t) continue;
      const auto chain = approximation_chain(ht, t);
      for (std::size_t k = 0; k < chain.size(); ++k) {
        s << t << ',' << k << ',' << format_fixed(chain[k].error);
        for (Eigen::Index c = 0; c < chain[k].partial.size(); ++c) {
          s << ',' << format_fixed(chain[k].partial(c));
        }
        s << '\n';
      }
    }
    emit(o.out, s.str());
  } else {
    throw CLI::ValidationError("mode", "must be forward, inverse, chain or regress");
  }
  return kExitOk;
}

int cmd_padic(const Options& o) {
  if (!is_prime(o.p)) throw CLI::ValidationError("--p", "must be prime");
  std::ifstream in(o.dend);
  if (!in) throw DataError("cannot open '" + o.dend + "'");
  nlohmann::json dj;
  try {
    in >> dj;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + o.dend + "' is not valid JSON: " + e.what());
  }
  const Dendrogram dend = dendrogram_from_json(dj);
  nlohmann::json j = padic_to_json(dend, o.p, dendrogram_labels(dj));
  if (o.dilations > 0) {
    for (std::size_t t = 0; t < dend.n_terminals(); ++t) {
      PadicCode code = encode(dend, o.p, t);
      for (std::size_t k = 0; k < o.dilations; ++k) code = dilate(code);
      auto coeffs = nlohmann::json::array();
      for (const auto& [level, c] : code.coeffs) coeffs.push_back({level, c});
      j["codes"][t]["dilated"] = coeffs;
    }
  }
  emit(o.out, json_text(j));
  if (o.check_unique && !j["unique"].get<bool>()) {
    std::cerr << "decimal codes are not unique for p = " << o.p << '\n';
    return kExitData;
  }
  return kExitOk;
}

int cmd_genum(const Options& o) {
  const BooleanTable data = BooleanTable::from_data(load_table(o, o.input));
  const auto table = setvalued_table(data);
  const Semilattice lattice = build_lattice(table);
  if (o.level > table.n_attributes()) {
    throw CLI::ValidationError("--level", "exceeds the number of attributes");
  }
  if (o.format == "text") {
    emit(o.out, render_lattice_text(table, lattice, {o.level}));
  } else {
    emit(o.out, json_text(lattice_to_json(table, lattice, {o.level})));
  }
  return kExitOk;
}

int cmd_canon(const Options& o) {
  std::ifstream in(o.dend);
  if (!in) throw DataError("cannot open '" + o.dend + "'");
  nlohmann::json dj;
  try {
    in >> dj;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("'" + o.dend + "' is not valid JSON: " + e.what());
  }
  const auto [canon, perm] = canonicalize(dendrogram_from_json(dj));
  nlohmann::json j = dendrogram_to_json(canon, dendrogram_labels(dj));
  j["swapped"] = perm.swapped;
  emit(o.out, json_text(j));
  return kExitOk;
}

int cmd_selftest(const Options& o) {
  GoldenData data = embedded_golden_data();
  if (o.corrupt) {
    data.iris8.values(0, 0) += 0.5;
    data.objects5.values(0, 1) = !data.objects5.values(0, 1);
  }
  const SelftestReport report = selftest(data);
  report.print(std::cout);
  return report.all_passed() ? kExitOk : kExitGolden;
}

int cmd_bench(const Options& o) {
  const auto points = benchmark_nn_chain(o.sizes, o.reps, 12345);
  std::cout << "n,seconds,ratio\n";
  for (std::size_t k = 0; k < points.size(); ++k) {
    std::cout << points[k].n << ',' << points[k].seconds << ',';
    if (k > 0) std::cout << points[k].seconds / points[k - 1].seconds;
    std::cout << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hierarchical clustering, ultrametrics, dendrogram Haar wavelets and p-adic codes"};
  app.require_subcommand(1);
  Options o;

  auto* cluster = app.add_subcommand("cluster", "Cluster a CSV table into a dendrogram");
  cluster->add_option("--input", o.input, "CSV input")->required()->check(CLI::ExistingFile);
  cluster->add_option("--criterion", o.criterion_name, "Merge criterion")
      ->check(CLI::IsMember(kCriteria));
  cluster->add_option("--levels", o.levels_name, "Level values: cost or rank")
      ->check(CLI::IsMember(kLevelModes));
  cluster->add_option("--algorithm", o.algorithm, "auto, nnchain or naive")
      ->check(CLI::IsMember({"auto", "nnchain", "naive"}));
  cluster->add_option("--columns", o.columns, "Columns to use (names or 1-based numbers)")
      ->delimiter(',');
  cluster->add_option("--out", o.out, "Output JSON (default stdout)");
  cluster->add_option("--newick", o.newick, "Also write a Newick file");

  auto* wavelet = app.add_subcommand("wavelet", "Haar wavelet transform of a dendrogram");
  wavelet->add_option("mode", o.mode, "forward, inverse, chain or regress")
      ->required()
      ->check(CLI::IsMember({"forward", "inverse", "chain", "regress"}));
  wavelet->add_option("--dend", o.dend, "Dendrogram JSON")->required()->check(CLI::ExistingFile);
  wavelet->add_option("--data", o.data, "Data (or external signal) CSV")->check(CLI::ExistingFile);
  wavelet->add_option("--coeffs", o.coeffs, "Coefficient JSON")->check(CLI::ExistingFile);
  wavelet->add_option("--columns", o.columns, "Columns to use")->delimiter(',');
  wavelet->add_option("--tau", o.tau, "Hard threshold for regress")->check(CLI::NonNegativeNumber);
  wavelet->add_flag("--per-coordinate", o.per_coordinate, "Threshold single coefficients");
  wavelet->add_option("--terminal", o.terminal, "Restrict chain output to one terminal");
  wavelet->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  wavelet->add_option("--out", o.out, "Output file (default stdout)");

  auto* padic = app.add_subcommand("padic", "p-adic codes of the terminals");
  padic->add_option("--dend", o.dend, "Dendrogram JSON")->required()->check(CLI::ExistingFile);
  padic->add_option("--p", o.p, "Prime base");
  padic->add_flag("--check-unique", o.check_unique, "Exit 2 if decimal codes collide");
  padic->add_option("--dilate", o.dilations, "Also report codes after k dilations");
  padic->add_option("--out", o.out, "Output JSON (default stdout)");

  auto* genum = app.add_subcommand("genum", "Distance-set lattice of a boolean table");
  genum->add_option("--input", o.input, "0/1 CSV input")->required()->check(CLI::ExistingFile);
  genum->add_option("--level", o.level, "Cluster level k");
  genum->add_option("--columns", o.columns, "Columns to use")->delimiter(',');
  genum->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  genum->add_option("--out", o.out, "Output file (default stdout)");

  auto* canon = app.add_subcommand("canon", "Canonical child order of a dendrogram");
  canon->add_option("--dend", o.dend, "Dendrogram JSON")->required()->check(CLI::ExistingFile);
  canon->add_option("--out", o.out, "Output JSON (default stdout)");

  auto* pipeline = app.add_subcommand("pipeline", "Run cluster, wavelet, padic (and genum)");
  pipeline->add_option("--input", o.pipeline.input, "CSV input")->required();
  pipeline->add_option("--out-dir", o.pipeline.out_dir, "Output directory")->required();
  pipeline->add_option("--criterion", o.criterion_name, "Merge criterion")
      ->check(CLI::IsMember(kCriteria));
  pipeline->add_option("--levels", o.levels_name, "cost or rank")->check(CLI::IsMember(kLevelModes));
  pipeline->add_option("--p", o.pipeline.p, "Prime base");
  pipeline->add_option("--tau", o.pipeline.tau, "Regression threshold");
  pipeline->add_option("--level", o.pipeline.level, "Lattice cluster level");
  pipeline->add_option("--columns", o.pipeline.columns, "Columns to use")->delimiter(',');

  auto* self = app.add_subcommand("selftest", "Run the embedded golden checks");
  self->add_flag("--corrupt", o.corrupt, "Perturb the embedded data first");

  auto* bench = app.add_subcommand("bench", "Time NN-chain clustering at several sizes");
  bench->add_option("--sizes", o.sizes, "Problem sizes")->delimiter(',');
  bench->add_option("--reps", o.reps, "Repetitions per size (best is reported)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }
  o.criterion = kCriteria.at(o.criterion_name);
  o.levels = kLevelModes.at(o.levels_name);
  o.pipeline.criterion = o.criterion;
  o.pipeline.levels = o.levels;

  try {
    if (*cluster) return cmd_cluster(o);
    if (*wavelet) return cmd_wavelet(o);
    if (*padic) return cmd_padic(o);
    if (*genum) return cmd_genum(o);
    if (*canon) return cmd_canon(o);
    if (*pipeline) return run_pipeline(o.pipeline, std::cerr);
    if (*self) return cmd_selftest(o);
    if (*bench) return cmd_bench(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::out_of_range& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
