#include "ultra/pipeline.hpp"

#include "ultra/genlattice.hpp"
#include "ultra/haar.hpp"
#include "ultra/io.hpp"
#include "ultra/padic.hpp"
#include "ultra/symmetry.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

namespace ultra {

void PipelineConfig::validate() const {
  if (input.empty()) throw std::invalid_argument("input path is required");
  if (!std::filesystem::exists(input)) {
    throw std::invalid_argument("input '" + input.string() + "' does not exist");
  }
  if (out_dir.empty()) throw std::invalid_argument("output directory is required");
  if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  if (!(tau >= 0.0)) throw std::invalid_argument("tau must be non-negative");
}

Dendrogram cluster_table(const DataTable& data, MergeCriterion crit, LevelMode levels) {
  if (data.rows() < 2) throw DataError("clustering needs at least 2 rows");
  const DistanceMatrix d = euclidean_matrix(data);
  Dendrogram dend = is_reducible(crit) ? nn_chain_cluster(d, crit) : naive_cluster(d, crit);
  return levels == LevelMode::rank ? dend.with_rank_levels() : dend;
}

namespace {

bool is_boolean(const DataTable& data) {
  return (data.values.array() == 0.0 || data.values.array() == 1.0).all();
}

void write_chains(std::ostream& out, const HaarTransform<double>& ht, const DataTable& data) {
  out << "terminal,label,step,node,sign,error";
  for (std::size_t c = 0; c < data.cols(); ++c) out << ',' << data.col_label(c);
  out << '\n';
  for (std::size_t t = 0; t < data.rows(); ++t) {
    const auto chain = approximation_chain(ht, t);
    const auto path = ht.dend.root_path(t);
    for (std::size_t s = 0; s < chain.size(); ++s) {
      out << t << ',' << data.row_label(t) << ',' << s << ',';
      if (s == 0) {
        out << "s,";
      } else {
        const std::size_t idx = path.size() - s;
        const NodeId child = idx == 0 ? t : path[idx - 1];
        out << 'd' << ht.dend.rank(path[idx]) << ',' << ht.dend.branch_label(child);
      }
      out << ',' << format_fixed(chain[s].error);
      for (Eigen::Index c = 0; c < chain[s].partial.size(); ++c) {
        out << ',' << format_fixed(chain[s].partial(c));
      }
      out << '\n';
    }
  }
}

}  // namespace

int run_pipeline(const PipelineConfig& cfg, std::ostream& log) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    CsvOptions opts;
    opts.columns = cfg.columns;
    const DataTable data = read_csv_file(cfg.input, opts);
    data.validate();
    std::filesystem::create_directories(cfg.out_dir);
    const auto& dir = cfg.out_dir;

    const Dendrogram dend = cluster_table(data, cfg.criterion, cfg.levels);
    write_json_file(dir / "dendrogram.json", dendrogram_to_json(dend, data.row_labels));
    write_text_file(dir / "dendrogram.nwk", to_newick(dend, data.row_labels) + "\n");

    const auto ht = forward(dend, data);
    write_json_file(dir / "coeffs.json", haar_to_json(ht, data.col_labels));
    {
      std::ofstream out(dir / "coeffs.csv");
      write_haar_table_csv(out, ht, data.col_labels);
    }
    {
      std::ofstream out(dir / "chains.csv");
      write_chains(out, ht, data);
    }
    {
      DataTable smoothed = data;
      smoothed.values = inverse(threshold_regress(ht, cfg.tau));
      std::ofstream out(dir / "regress.csv");
      write_csv(out, smoothed);
    }
    write_json_file(dir / "padic.json", padic_to_json(dend, cfg.p, data.row_labels));

    if (is_boolean(data)) {
      const auto table = setvalued_table(BooleanTable::from_data(data));
      const auto lattice = build_lattice(table);
      std::vector<std::size_t> levels;
      for (std::size_t k = 0; k <= table.n_attributes(); ++k) levels.push_back(k);
      write_json_file(dir / "lattice.json", lattice_to_json(table, lattice, levels));
      write_text_file(dir / "lattice.txt", render_lattice_text(table, lattice, {cfg.level}));
    }
    log << "wrote pipeline artifacts to " << dir.string() << '\n';
    return kExitOk;
  } catch (const DataError& e) {
    log << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    log << "data error: " << e.what() << '\n';
    return kExitData;
  }
}

GoldenData embedded_golden_data() {
  DataTable iris;
  iris.values.resize(8, 4);
  iris.values << 5.1, 3.5, 1.4, 0.2,
                 4.9, 3.0, 1.4, 0.2,
                 4.7, 3.2, 1.3, 0.2,
                 4.6, 3.1, 1.5, 0.2,
                 5.0, 3.6, 1.4, 0.2,
                 5.4, 3.9, 1.7, 0.4,
                 4.6, 3.4, 1.4, 0.3,
                 5.0, 3.4, 1.5, 0.2;
  iris.row_labels = {"1", "2", "3", "4", "5", "6", "7", "8"};
  iris.col_labels = {"Sepal.L", "Sepal.W", "Petal.L", "Petal.W"};

  BooleanTable objects;
  objects.values.resize(5, 3);
  objects.values << true, false, true,
                    false, true, true,
                    true, false, true,
                    true, false, false,
                    false, false, true;
  objects.row_labels = {"a", "b", "c", "e", "f"};
  objects.col_labels = {"v1", "v2", "v3"};

  // x1..x8 are terminals 0..7; q1..q7 are nodes 8..14, left child listed first.
  Dendrogram ranked8(8, {{0, 1, 1}, {8, 2, 2}, {3, 4, 3}, {10, 5, 4},
                         {9, 11, 5}, {6, 7, 6}, {12, 13, 7}});
  // x, y, z with y and z joined at 1.0 and x attached at 3.5.
  Dendrogram triangle3(3, {{1, 2, 1.0}, {0, 3, 3.5}});
  return {std::move(iris), std::move(objects), std::move(ranked8), std::move(triangle3)};
}

bool SelftestReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

void SelftestReport::print(std::ostream& out) const {
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(44) << c.name << " ["
        << c.anchor << "]";
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  for (const auto& n : notes) out << "NOTE  " << n << '\n';
  std::size_t passed = 0;
  for (const auto& c : checks) passed += c.passed ? 1 : 0;
  out << passed << "/" << checks.size() << " golden checks passed\n";
}

namespace {

// Haar coefficients of the 8 iris rows under median clustering:
// rows are attributes, columns s7, d7, d6, ..., d1.
constexpr std::array<std::array<double, 8>, 4> kIrisHaar{{
    {5.146875, 0.253125, 0.13125, 0.1375, -0.025, 0.05, -0.025, 0.05},
    {3.603125, 0.296875, 0.16875, -0.1375, 0.125, 0.05, -0.075, -0.05},
    {1.5625, 0.1375, 0.025, 0.0, 0.0, -0.10, 0.05, 0.0},
    {0.30625, 0.09375, -0.0125, -0.025, 0.05, 0.0, 0.0, 0.0},
}};

// Codes of x1..x8 on the ranked 8-leaf tree: (level, coefficient).
const std::array<std::map<std::size_t, int>, 8> kRankedCodes{{
    {{1, +1}, {2, +1}, {5, +1}, {7, +1}},
    {{1, -1}, {2, +1}, {5, +1}, {7, +1}},
    {{2, -1}, {5, +1}, {7, +1}},
    {{3, +1}, {4, +1}, {5, -1}, {7, +1}},
    {{3, -1}, {4, +1}, {5, -1}, {7, +1}},
    {{4, -1}, {5, -1}, {7, +1}},
    {{6, +1}, {7, -1}},
    {{6, -1}, {7, -1}},
}};

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

}  // namespace

SelftestReport selftest(const GoldenData& data) {
  SelftestReport report;
  auto check = [&](std::string name, std::string anchor, bool ok, std::string detail = {}) {
    report.checks.push_back({std::move(name), std::move(anchor), ok, std::move(detail)});
  };
  constexpr double tol = 1e-6;

  // Iris rows, median criterion, Haar transform.
  try {
    const Dendrogram dend = naive_cluster(euclidean_matrix(data.iris8), MergeCriterion::median);
    const auto ht = forward(dend, data.iris8);
    double smooth_err = 0.0;
    double abs_err = 0.0;
    double signed_err = 0.0;
    for (std::size_t a = 0; a < 4; ++a) {
      const auto ia = static_cast<Eigen::Index>(a);
      smooth_err = std::max(smooth_err, std::abs(ht.smooth(ia) - kIrisHaar[a][0]));
      for (std::size_t r = 7; r >= 1; --r) {
        const double got = ht.details(static_cast<Eigen::Index>(r - 1), ia);
        const double want = kIrisHaar[a][8 - r];
        abs_err = std::max(abs_err, std::abs(std::abs(got) - std::abs(want)));
        signed_err = std::max(signed_err, std::abs(got - want));
      }
    }
    check("iris8 smooth s7", "Haar table of the iris rows", smooth_err <= tol,
          "max deviation " + fmt(smooth_err));
    check("iris8 |detail| per attribute and level", "Haar table of the iris rows",
          abs_err <= tol, "max deviation " + fmt(abs_err));
    check("iris8 signed details (older child = +1)", "Haar table of the iris rows",
          signed_err <= tol, "max deviation " + fmt(signed_err));

    const Eigen::MatrixXd back = inverse(ht);
    const double rt = (back - data.iris8.values).cwiseAbs().maxCoeff();
    check("iris8 inverse reproduces the data", "exact reconstruction from the root",
          rt <= 1e-12, "max deviation " + fmt(rt));

    // A terminal hanging directly off the root on the +1 side is s7 + d7.
    bool root_child = false;
    const NodeId root = dend.root();
    const NodeId plus_child = dend.merge_of(root).left;
    if (dend.is_terminal(plus_child)) {
      const Eigen::VectorXd want = ht.smooth + ht.detail(root).transpose();
      const Eigen::VectorXd row =
          data.iris8.values.row(static_cast<Eigen::Index>(plus_child)).transpose();
      root_child = (want - row).cwiseAbs().maxCoeff() <= 1e-9 &&
                   (reconstruct_one(ht, plus_child) - row).cwiseAbs().maxCoeff() <= 1e-9;
    }
    check("a root child reconstructs as s7 + d7", "root-path reconstruction", root_child);

    double chain_err = 0.0;
    for (std::size_t t = 0; t < dend.n_terminals(); ++t) {
      chain_err = std::max(chain_err, approximation_chain(ht, t).back().error);
    }
    check("approximation chains end at error 0", "chain least upper bound", chain_err == 0.0);
    report.notes.push_back(
        "the identities x1 = d2 + d5 + d7 + s7 and x8 = d6 - d7 + s7 cannot both hold with "
        "x2 = s7 + d7 in a binary tree (the root would need three children); only the "
        "s7 + d7 identity is checked");
  } catch (const std::exception& e) {
    check("iris8 pipeline", "Haar table of the iris rows", false, e.what());
  }

  // Ranked 8-leaf tree.
  {
    const Dendrogram& tree = data.ranked8;
    bool codes_ok = true;
    for (std::size_t t = 0; t < 8; ++t) codes_ok = codes_ok && encode(tree, 3, t).coeffs == kRankedCodes[t];
    check("p-adic codes of x1..x8", "ranked 8-leaf tree", codes_ok);
    const PadicCode dil = dilate(encode(tree, 2, 0));
    check("dilation of x1 with p = 2", "multiplication by 1/p",
          dil.coeffs == std::map<std::size_t, int>{{1, +1}, {4, +1}, {6, +1}});
    check("decimal codes distinct for p = 3", "p = 3 avoids ambiguity", check_uniqueness(tree, 3));
    check("decimal value of x1 with p = 2 is 166", "p-adic decimal equivalent",
          decimal_exact(encode(tree, 2, 0)) == 166);
    check("ambiguity witness for p = 2", "+1*p vs -1*p + 1*p^2",
          decimal_exact(PadicCode{2, {{1, +1}}}) == decimal_exact(PadicCode{2, {{1, -1}, {2, +1}}}));
    check("cophenetic D(x1,x2)=1, D(x1,x3)=2, D(x1,x7)=7", "ranked 8-leaf tree",
          cophenetic_distance(tree, 0, 1) == 1.0 && cophenetic_distance(tree, 0, 2) == 2.0 &&
              cophenetic_distance(tree, 0, 6) == 7.0);
    check("q4 = {x4, x5, x6}", "ranked 8-leaf tree",
          cluster_members(tree, 11) == std::vector<std::size_t>{3, 4, 5});
    check("spherical completeness", "nested chains meet", check_spherical_completeness(tree));
    check("wreath-product order 2^7 = 128", "child-swap group", automorphism_count(tree) == 128);
  }

  // Three-point ultrametric triangle.
  {
    const Dendrogram& tri = data.triangle3;
    const bool dists = cophenetic_distance(tri, 0, 2) == 3.5 &&
                       cophenetic_distance(tri, 0, 1) == 3.5 &&
                       cophenetic_distance(tri, 1, 2) == 1.0;
    check("d(x,z)=3.5, d(x,y)=3.5, d(y,z)=1.0", "strong triangle inequality",
          dists && verify_ultrametric(cophenetic_matrix(tri)).empty());
  }

  // Boolean objects and the distance-set lattice.
  try {
    const auto table = setvalued_table(data.objects5);
    const AttributeSet v12{0, 1};
    const AttributeSet v2{1};
    const AttributeSet v23{1, 2};
    const AttributeSet v123{0, 1, 2};
    check("set-valued distances d(a,b), d(a,c), d(b,e)", "simple matching on 5 objects",
          table.at(0, 1) == v12 && table.at(0, 2) == v2 && table.at(1, 3) == v123);
    const Semilattice lattice = build_lattice(table);
    check("lattice vertices {v2}, {v1,v2}, {v2,v3}, {v1,v2,v3}", "lattice vertices found",
          lattice.vertices == std::vector<AttributeSet>{v2, v12, v23, v123});
    using P = std::vector<ObjectPair>;
    const bool partition =
        pairs_for_node(table, v123) == P{{1, 3}, {3, 4}} &&
        pairs_for_node(table, v12) == P{{0, 1}, {0, 4}, {1, 2}, {1, 4}, {2, 4}} &&
        pairs_for_node(table, v23) == P{{0, 3}, {2, 3}} && pairs_for_node(table, v2) == P{{0, 2}};
    check("vertex <-> pair correspondence", "lattice interpretation", partition);
    const auto level2 = clusters_at_level(table, 2);
    check("level <= 2 cluster {a,b,c,f}", "pairwise linkage at level 2",
          std::find(level2.begin(), level2.end(), ObjectSet{0, 1, 2, 4}) != level2.end());
    check("level <= 3 cluster {a,b,c,e,f}", "pairwise linkage at level 3",
          clusters_at_level(table, 3) == std::vector<ObjectSet>{{0, 1, 2, 3, 4}});
    const bool ace = std::find(level2.begin(), level2.end(), ObjectSet{0, 2, 3}) != level2.end();
    report.notes.push_back(std::string("level <= 2 also lists separate clusters {a,e} and {c,e} in "
                                       "the reference listing; maximal cliques give ") +
                           (ace ? "{a,c,e}" : "no {a,c,e}") + " instead");
  } catch (const std::exception& e) {
    check("boolean lattice", "lattice vertices found", false, e.what());
  }
  return report;
}

std::vector<BenchmarkPoint> benchmark_nn_chain(const std::vector<std::size_t>& sizes,
                                               std::size_t repetitions, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<BenchmarkPoint> out;
  for (std::size_t n : sizes) {
    DataTable data;
    data.values.resize(static_cast<Eigen::Index>(n), 3);
    for (Eigen::Index i = 0; i < data.values.size(); ++i) data.values.data()[i] = unif(rng);
    const DistanceMatrix d = euclidean_matrix(data);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < std::max<std::size_t>(repetitions, 1); ++r) {
      const auto start = std::chrono::steady_clock::now();
      const Dendrogram dend = nn_chain_cluster(d, MergeCriterion::ward);
      const auto stop = std::chrono::steady_clock::now();
      if (dend.n_terminals() != n) throw std::logic_error("benchmark produced a wrong tree");
      best = std::min(best, std::chrono::duration<double>(stop - start).count());
    }
    out.push_back({n, best});
  }
  return out;
}

}  // namespace ultra
