// topostat: command-line front end for the topological statistics library.
//
// Subcommands cover the full pipeline: Rips skeletons and Betti numbers,
// graph-filtration Betti curves, birth-death decomposition, pairwise
// Wasserstein loss matrices, ratio-statistic permutation/transposition
// tests, topological clustering, 1D Morse persistence and the circle
// simulations. All outputs are plot-ready CSV/JSON data files; stochastic
// commands record {seed, parameters, version} in their output.
//
// Exit codes: 0 success, 2 input error, 3 numeric or degeneracy error.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "topostat/clustering.hpp"
#include "topostat/complex.hpp"
#include "topostat/errors.hpp"
#include "topostat/graphfilt.hpp"
#include "topostat/inference.hpp"
#include "topostat/io.hpp"
#include "topostat/morse1d.hpp"
#include "topostat/version.hpp"
#include "topostat/wasserstein.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;
using namespace topostat;

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNumericError = 3;

json make_meta(std::uint64_t seed, const json& parameters) {
    return json{{"seed", seed}, {"version", kVersion}, {"parameters", parameters}};
}

std::vector<std::string> meta_comments(std::uint64_t seed, const std::string& parameters) {
    return {"seed=" + std::to_string(seed), "version=" + std::string(kVersion),
            "parameters=" + parameters};
}

std::vector<WeightedGraph> load_graph_dir(const std::string& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv" &&
            entry.path().filename().string().rfind("labels", 0) != 0)
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw InvalidInput("no graph CSV files in " + dir);
    std::vector<WeightedGraph> graphs;
    graphs.reserve(files.size());
    for (const fs::path& f : files) graphs.emplace_back(io::read_matrix_csv(f.string()));
    return graphs;
}

struct RipsOptions {
    std::string points_path, distances_path, output, boundaries_prefix;
    int max_dim = 2;
    double radius = 0.0;
    std::size_t cap = kDefaultSimplexCap;
};

int run_rips(const RipsOptions& opt) {
    DistanceMatrix distances =
        opt.distances_path.empty()
            ? DistanceMatrix::from_points(PointCloud(io::read_matrix_csv(opt.points_path)))
            : DistanceMatrix(io::read_matrix_csv(opt.distances_path));
    const SimplicialComplex complex = rips_complex(distances, opt.max_dim, opt.radius, opt.cap);
    const std::vector<BoundaryMatrix> boundaries = boundary_matrices(complex);
    const BettiVector betti = betti_from_boundaries(boundaries, complex.node_count());

    if (!opt.output.empty()) io::write_json(opt.output, io::complex_to_json(complex));
    if (!opt.boundaries_prefix.empty())
        for (const BoundaryMatrix& b : boundaries)
            io::write_boundary_coo_csv(opt.boundaries_prefix + "B" + std::to_string(b.dim) + ".csv",
                                       b);

    for (std::size_t dim = 0; dim < complex.skeleton.size(); ++dim)
        std::cout << (dim ? " " : "") << complex.skeleton[dim].size();
    std::cout << " |";
    for (int b : betti.betti) std::cout << " " << b;
    std::cout << "\n";
    return kExitOk;
}

struct BettiOptions {
    std::string graph_path, output, thresholds = "0:0.05:max", direction = "above";
};

int run_betti(const BettiOptions& opt) {
    const WeightedGraph graph(io::read_matrix_csv(opt.graph_path));
    double max_weight = 0.0;
    for (double w : graph.edge_weights()) max_weight = std::max(max_weight, w);
    const std::vector<double> grid = io::parse_threshold_spec(opt.thresholds, max_weight);
    const ThresholdDirection dir =
        opt.direction == "rips" ? ThresholdDirection::Below : ThresholdDirection::Above;
    const BettiCurve curve = betti_curve(graph, grid, dir);
    if (!opt.output.empty())
        io::write_betti_curve_csv(opt.output, curve);
    else
        for (std::size_t i = 0; i < curve.thresholds.size(); ++i)
            std::cout << io::format_double(curve.thresholds[i]) << "," << curve.beta0[i] << ","
                      << curve.beta1[i] << "\n";
    return kExitOk;
}

int run_decompose(const std::string& graph_path, const std::string& output) {
    const WeightedGraph graph(io::read_matrix_csv(graph_path));
    const BirthDeathSets sets = birth_death_decompose(graph);
    const json j = io::birth_death_to_json(sets);
    if (!output.empty())
        io::write_json(output, j);
    else
        std::cout << j.dump(2) << "\n";
    std::cerr << sets.births.size() << " births, " << sets.deaths.size() << " deaths\n";
    return kExitOk;
}

struct PdistOptions {
    std::string graphs_dir, output_prefix, format = "csv";
    double r = 2.0;
    int jobs = 1;
};

int run_pdist(const PdistOptions& opt) {
    const std::vector<WeightedGraph> graphs = load_graph_dir(opt.graphs_dir);
    const LossMatrix loss = pairwise_loss(graphs, opt.r, opt.jobs);
    if (opt.format == "json") {
        io::write_json(opt.output_prefix + "loss.json", io::loss_to_json(loss));
    } else {
        io::write_matrix_csv(opt.output_prefix + "D0.csv", loss.d0);
        io::write_matrix_csv(opt.output_prefix + "D1.csv", loss.d1);
        io::write_matrix_csv(opt.output_prefix + "D01.csv", loss.d01);
    }
    return kExitOk;
}

struct PermtestOptions {
    std::string loss_path, labels_path, output, method = "transposition";
    double steps = 1e6;
    std::int64_t interval = 1000;
    std::uint64_t seed = 0;
};

int run_permtest(const PermtestOptions& opt) {
    const Eigen::MatrixXd loss = io::read_matrix_csv(opt.loss_path);
    const GroupLabels labels(io::read_labels_csv(opt.labels_path));
    const auto steps = static_cast<std::int64_t>(opt.steps);

    RatioResult result;
    if (opt.method == "transposition")
        result = transposition_test(loss, labels, steps, opt.interval, opt.seed);
    else if (opt.method == "permutation")
        result = permutation_test(loss, labels, steps, opt.seed);
    else
        throw InvalidParameter("method must be 'transposition' or 'permutation'");

    // Fixed-width histogram of the null samples, plot-ready.
    constexpr int kBins = 50;
    json histogram = json::array();
    if (!result.null_samples.empty()) {
        const auto [lo_it, hi_it] =
            std::minmax_element(result.null_samples.begin(), result.null_samples.end());
        const double lo = *lo_it, hi = *hi_it;
        const double width = (hi > lo) ? (hi - lo) / kBins : 1.0;
        std::vector<std::int64_t> counts(kBins, 0);
        for (double v : result.null_samples) {
            int bin = static_cast<int>((v - lo) / width);
            counts[std::clamp(bin, 0, kBins - 1)] += 1;
        }
        for (int b = 0; b < kBins; ++b) histogram.push_back({lo + b * width, counts[b]});
    }

    json out;
    out["observed"] = result.observed;
    out["p_value"] = result.p_value;
    out["n_perms"] = result.n_perms;
    out["n_degenerate"] = result.n_degenerate;
    out["null_histogram"] = histogram;
    out["meta"] = make_meta(opt.seed, json{{"method", opt.method},
                                           {"steps", steps},
                                           {"interval", opt.interval},
                                           {"loss", opt.loss_path},
                                           {"labels", opt.labels_path}});
    if (!opt.output.empty())
        io::write_json(opt.output, out);
    else
        std::cout << out.dump(2) << "\n";
    std::cerr << "observed=" << result.observed << " p=" << result.p_value << "\n";
    return kExitOk;
}

struct ClusterOptions {
    std::string graphs_dir, truth_path, output, method = "ws";
    int k = 4;
    int n_seeds = 100;
    int max_iter = 100;
    std::uint64_t seed = 0;
};

int run_cluster(const ClusterOptions& opt) {
    const std::vector<WeightedGraph> graphs = load_graph_dir(opt.graphs_dir);

    std::vector<int> labels;
    json out;
    if (opt.method == "ws") {
        const ClusterState state = ws_kmeans(graphs, opt.k, opt.n_seeds, opt.max_iter, opt.seed);
        labels = state.assignment;
        out["objective"] = state.objective;
    } else if (opt.method == "kmeans") {
        labels = baseline_kmeans(graphs, opt.k, opt.seed, opt.max_iter);
    } else if (opt.method == "hier") {
        labels = baseline_hierarchical(graphs, opt.k);
    } else {
        throw InvalidParameter("method must be 'ws', 'kmeans' or 'hier'");
    }
    out["labels"] = labels;

    if (!opt.truth_path.empty()) {
        const std::vector<int> truth = io::read_labels_csv(opt.truth_path);
        const AccuracyResult acc = cluster_accuracy(truth, labels, opt.k);
        out["accuracy"] = acc.accuracy;
        json confusion = json::array();
        for (int i = 0; i < acc.confusion.counts.rows(); ++i) {
            json row = json::array();
            for (int j = 0; j < acc.confusion.counts.cols(); ++j)
                row.push_back(acc.confusion.counts(i, j));
            confusion.push_back(std::move(row));
        }
        out["confusion"] = confusion;
    }
    out["meta"] = make_meta(opt.seed, json{{"method", opt.method},
                                           {"k", opt.k},
                                           {"seeds", opt.n_seeds},
                                           {"graphs", opt.graphs_dir}});
    if (!opt.output.empty())
        io::write_json(opt.output, out);
    else
        std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct MorseOptions {
    std::string signal_path, output;
    int degree = -1;  // < 0: no smoothing
    double bandwidth = 0.0;
};

int run_morse(const MorseOptions& opt) {
    Signal1D signal = io::read_signal_csv(opt.signal_path);
    if (opt.degree >= 0)
        signal = smooth_cosine(signal, SmoothingParams{opt.degree, opt.bandwidth});
    const PersistencePairs1D pairs = morse_pairs(critical_points(signal));
    if (!opt.output.empty()) {
        io::write_pairs_csv(opt.output, pairs);
    } else {
        std::cout << "birth,death\n";
        for (const auto& [birth, death] : pairs.pairs)
            std::cout << io::format_double(birth) << "," << io::format_double(death) << "\n";
        std::cout << io::format_double(pairs.essential.first) << ",inf\n";
    }
    return kExitOk;
}

struct SimulateOptions {
    std::string pattern = "diff", outdir;
    int nodes = 60;
    double sd = 0.3;
    int per_group = 5;
    std::uint64_t seed = 0;
};

int run_simulate(const SimulateOptions& opt) {
    const PatternFamily family = opt.pattern == "equiv" ? PatternFamily::EquivalentTopology
                                                        : PatternFamily::DifferentTopology;
    if (opt.pattern != "equiv" && opt.pattern != "diff")
        throw InvalidParameter("pattern must be 'equiv' or 'diff'");
    fs::create_directories(opt.outdir);

    Rng master(opt.seed);
    std::vector<int> truth;
    for (int group = 1; group <= 4; ++group) {
        const std::vector<WeightedGraph> graphs =
            simulate_circles(family, group, opt.nodes, opt.sd, opt.per_group, master.fork_seed());
        for (int r = 0; r < opt.per_group; ++r) {
            const std::string name = "graph_g" + std::to_string(group) + "_r" +
                                     std::to_string(r + 1) + ".csv";
            io::write_matrix_csv(
                (fs::path(opt.outdir) / name).string(), graphs[r].w,
                meta_comments(opt.seed, "pattern=" + opt.pattern + " nodes=" +
                                            std::to_string(opt.nodes) + " sd=" +
                                            io::format_double(opt.sd) + " group=" +
                                            std::to_string(group)));
            truth.push_back(group);
        }
    }
    io::write_labels_csv((fs::path(opt.outdir) / "labels.csv").string(), truth);
    std::cerr << "wrote " << truth.size() << " graphs to " << opt.outdir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Statistical inference on persistent homology"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    RipsOptions rips_opt;
    CLI::App* rips = app.add_subcommand("rips", "Rips skeleton, boundary matrices, Betti numbers");
    auto* points_opt = rips->add_option("--points", rips_opt.points_path, "point cloud CSV");
    rips->add_option("--distances", rips_opt.distances_path, "distance matrix CSV")
        ->excludes(points_opt);
    rips->add_option("--max-dim", rips_opt.max_dim, "skeleton dimension cap")->default_val(2);
    rips->add_option("--radius", rips_opt.radius, "Rips radius")->required();
    rips->add_option("--output", rips_opt.output, "complex JSON path");
    rips->add_option("--boundaries", rips_opt.boundaries_prefix, "COO CSV prefix for boundary maps");
    rips->add_option("--cap", rips_opt.cap, "simplex count cap");

    BettiOptions betti_opt;
    CLI::App* betti = app.add_subcommand("betti", "Betti curves of a graph filtration");
    betti->add_option("--graph", betti_opt.graph_path, "square weight matrix CSV")->required();
    betti->add_option("--thresholds", betti_opt.thresholds, "value or start:step:stop (stop may be 'max')");
    betti->add_option("--direction", betti_opt.direction, "'above' (connectivity) or 'rips' (distance)")
        ->check(CLI::IsMember({"above", "rips"}));
    betti->add_option("--output", betti_opt.output, "curve CSV path");

    std::string decompose_graph, decompose_output;
    CLI::App* decompose = app.add_subcommand("decompose", "Birth-death decomposition of edge weights");
    decompose->add_option("--graph", decompose_graph, "square weight matrix CSV")->required();
    decompose->add_option("--output", decompose_output, "JSON path");

    PdistOptions pdist_opt;
    CLI::App* pdist = app.add_subcommand("pdist", "Pairwise Wasserstein loss matrices");
    pdist->add_option("--graphs", pdist_opt.graphs_dir, "directory of graph CSVs")->required();
    pdist->add_option("--output", pdist_opt.output_prefix, "output path prefix");
    pdist->add_option("--format", pdist_opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    pdist->add_option("-r,--order", pdist_opt.r, "Wasserstein order")->default_val(2.0);
    pdist->add_option("--jobs", pdist_opt.jobs, "worker threads")->default_val(1);

    PermtestOptions permtest_opt;
    CLI::App* permtest = app.add_subcommand("permtest", "Ratio-statistic permutation/transposition test");
    permtest->add_option("--loss", permtest_opt.loss_path, "loss matrix CSV")->required();
    permtest->add_option("--labels", permtest_opt.labels_path, "group labels CSV (1/2)")->required();
    permtest->add_option("--method", permtest_opt.method, "'transposition' or 'permutation'")
        ->check(CLI::IsMember({"transposition", "permutation"}));
    permtest->add_option("--steps", permtest_opt.steps, "number of steps (accepts 1e6 notation)");
    permtest->add_option("--interval", permtest_opt.interval, "full permutation interval");
    permtest->add_option("--seed", permtest_opt.seed, "RNG seed")->required();
    permtest->add_option("--output", permtest_opt.output, "result JSON path");

    ClusterOptions cluster_opt;
    CLI::App* cluster = app.add_subcommand("cluster", "Topological clustering of a graph collection");
    cluster->add_option("--graphs", cluster_opt.graphs_dir, "directory of graph CSVs")->required();
    cluster->add_option("--k", cluster_opt.k, "cluster count")->required();
    cluster->add_option("--method", cluster_opt.method, "'ws', 'kmeans' or 'hier'")
        ->check(CLI::IsMember({"ws", "kmeans", "hier"}));
    cluster->add_option("--seeds", cluster_opt.n_seeds, "random restarts")->default_val(100);
    cluster->add_option("--max-iter", cluster_opt.max_iter, "iteration cap")->default_val(100);
    cluster->add_option("--seed", cluster_opt.seed, "RNG seed")->required();
    cluster->add_option("--truth", cluster_opt.truth_path, "true labels CSV for accuracy");
    cluster->add_option("--output", cluster_opt.output, "result JSON path");

    MorseOptions morse_opt;
    CLI::App* morse = app.add_subcommand("morse", "1D Morse persistence pairs");
    morse->add_option("--signal", morse_opt.signal_path, "two-column t,y CSV")->required();
    morse->add_option("--degree", morse_opt.degree, "cosine series degree (omit for no smoothing)");
    morse->add_option("--bandwidth", morse_opt.bandwidth, "heat kernel bandwidth");
    morse->add_option("--output", morse_opt.output, "pairs CSV path");

    SimulateOptions sim_opt;
    CLI::App* simulate = app.add_subcommand("simulate", "Circle-pattern graph collections");
    simulate->add_option("--pattern", sim_opt.pattern, "'equiv' or 'diff'")
        ->check(CLI::IsMember({"equiv", "diff"}));
    simulate->add_option("--nodes", sim_opt.nodes, "nodes per graph")->default_val(60);
    simulate->add_option("--sd", sim_opt.sd, "coordinate noise sd")->default_val(0.3);
    simulate->add_option("--per-group", sim_opt.per_group, "graphs per group")->default_val(5);
    simulate->add_option("--seed", sim_opt.seed, "RNG seed")->required();
    simulate->add_option("--outdir", sim_opt.outdir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (rips->parsed()) {
            if (rips_opt.points_path.empty() && rips_opt.distances_path.empty())
                throw InvalidParameter("provide --points or --distances");
            return run_rips(rips_opt);
        }
        if (betti->parsed()) return run_betti(betti_opt);
        if (decompose->parsed()) return run_decompose(decompose_graph, decompose_output);
        if (pdist->parsed()) return run_pdist(pdist_opt);
        if (permtest->parsed()) return run_permtest(permtest_opt);
        if (cluster->parsed()) return run_cluster(cluster_opt);
        if (morse->parsed()) return run_morse(morse_opt);
        if (simulate->parsed()) return run_simulate(sim_opt);
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const InvalidParameter& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const DegenerateInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const IncompatibleInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const ResourceLimit& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericError;
    }
    return kExitOk;
}
