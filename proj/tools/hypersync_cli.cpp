// hypersync: experiment driver for hypergraph group synchronization.
//
// Subcommands:
//   synth   generate synthetic instances (hypergraph + ground-truth files)
//   run     single pipeline run -> run.csv (+ trace.csv when tracing)
//   sweep   Cartesian (p, q, sigma) x seeds grid -> sweep.csv
//   cycles  dump cycle-hyperedge graph statistics -> cycles.csv
//   verify  noiseless synchronizability check on an instance
//
// Exit codes: 0 success, 1 usage/config error, 2 data error, 3 numerical
// failure. HYPERSYNC_THREADS overrides --threads.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hypersync/chmp.hpp"
#include "hypersync/eval.hpp"
#include "hypersync/io.hpp"
#include "hypersync/model.hpp"
#include "hypersync/recovery.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hypersync;

namespace {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Variant parse_variant(const std::string& s) {
    if (s == "SO2" || s == "so2") return Variant::SO2;
    if (s == "SO3" || s == "so3") return Variant::SO3;
    throw config_error("unknown variant '" + s + "' (expected SO2 or SO3)");
}

struct ExperimentConfig {
    ModelParams model;
    ChmpParams chmp;
    std::string mode = "mst";
    double gcw_beta = -1.0;     // < 0: derive from the CHMP schedule
    bool gcw_symmetrize = true;
    std::vector<double> grid_p, grid_q, grid_sigma;
    std::vector<std::uint64_t> seeds;
    std::string out_dir = ".";
    std::string instance_path, truth_path;
    bool timestamp = true;

    double recovery_beta() const {
        if (gcw_beta >= 0.0) return gcw_beta;
        return chmp.T > 0 ? chmp.beta(chmp.T - 1) : chmp.beta(0);
    }
};

const std::vector<std::string> kModes = {"mst", "gcw", "spectral-baseline", "medoid-cemp"};

template <typename T>
std::vector<T> list_of(const json& j, const std::string& key, std::vector<T> fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_array() || j.at(key).empty())
        throw config_error("config: '" + key + "' must be a non-empty array");
    return j.at(key).get<std::vector<T>>();
}

ExperimentConfig load_config(const std::string& path) {
    ExperimentConfig cfg;
    json j = json::object();
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw config_error("cannot open config file " + path);
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw config_error(std::string("config parse error: ") + e.what());
        }
    }
    try {
        if (j.contains("model")) {
            const json& m = j.at("model");
            cfg.model.n = m.value("n", cfg.model.n);
            cfg.model.m = m.value("m", cfg.model.m);
            cfg.model.p = m.value("p", cfg.model.p);
            cfg.model.q = m.value("q", cfg.model.q);
            cfg.model.sigma = m.value("sigma", cfg.model.sigma);
            cfg.model.seed = m.value("seed", cfg.model.seed);
            if (m.contains("variant")) cfg.model.variant = parse_variant(m.at("variant"));
        }
        if (j.contains("chmp")) {
            const json& c = j.at("chmp");
            cfg.chmp.T = c.value("T", cfg.chmp.T);
            cfg.chmp.beta0 = c.value("beta0", cfg.chmp.beta0);
            cfg.chmp.r = c.value("r", cfg.chmp.r);
            cfg.chmp.keep_trace = c.value("trace", cfg.chmp.keep_trace);
            if (c.contains("beta_schedule"))
                cfg.chmp.beta_schedule = c.at("beta_schedule").get<std::vector<double>>();
        }
        if (j.contains("gcw")) {
            const json& g = j.at("gcw");
            cfg.gcw_beta = g.value("beta", cfg.gcw_beta);
            cfg.gcw_symmetrize = g.value("symmetrize", cfg.gcw_symmetrize);
        }
        cfg.mode = j.value("mode", cfg.mode);
        cfg.out_dir = j.value("out_dir", cfg.out_dir);
        cfg.instance_path = j.value("instance", cfg.instance_path);
        cfg.truth_path = j.value("truth", cfg.truth_path);
        cfg.timestamp = j.value("timestamp", cfg.timestamp);
        const json& sweep = j.contains("sweep") ? j.at("sweep") : json::object();
        cfg.grid_p = list_of<double>(sweep, "p", {cfg.model.p});
        cfg.grid_q = list_of<double>(sweep, "q", {cfg.model.q});
        cfg.grid_sigma = list_of<double>(sweep, "sigma", {cfg.model.sigma});
        cfg.seeds = list_of<std::uint64_t>(sweep, "seeds", {cfg.model.seed});
    } catch (const json::exception& e) {
        throw config_error(std::string("config error: ") + e.what());
    }
    if (std::find(kModes.begin(), kModes.end(), cfg.mode) == kModes.end())
        throw config_error("config: unknown recovery mode '" + cfg.mode + "'");
    cfg.model.validate();
    cfg.chmp.validate();
    return cfg;
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

struct RunResult {
    bool has_errors = false;    // ground truth was available
    double chmp_error = 0.0;
    double chmp_min_error = 0.0;
    double procrustes_error = 0.0;
    double init_time = 0.0;     // CHG construction + consistency
    double iterate_time = 0.0;  // CHMP iterations
    double recover_time = 0.0;  // refinement + recovery
    std::vector<std::vector<double>> trace;
};

// 2-uniform view of a pair graph so the medoid-cemp mode can reuse the n = 2
// cycle machinery (triangle consistency + CHMP) unchanged.
UniformHypergraph pair_graph_to_hypergraph(const WeightedPairGraph& G) {
    UniformHypergraph H2;
    H2.m = G.m;
    H2.n = 2;
    H2.variant = G.variant;
    for (const PairEdge& e : G.edges) {
        H2.hyperedges.push_back({e.i, e.j});
        GroupTuple t;
        t.elements = {e.gamma};
        H2.measurements.push_back(t);
    }
    return H2;
}

VertexPotential run_recovery(const std::string& mode, const WeightedPairGraph& G,
                             const ExperimentConfig& cfg) {
    if (mode == "mst") return recover_mst(G);
    GcwOptions opts;
    opts.symmetrize = cfg.gcw_symmetrize;
    if (mode == "gcw" || mode == "medoid-cemp") opts.beta = cfg.recovery_beta();
    return recover_gcw(G, opts); // spectral-baseline keeps beta = 0
}

RunResult run_pipeline(const UniformHypergraph& H, const GroundTruth* truth,
                       const ExperimentConfig& cfg) {
    RunResult res;
    WeightedPairGraph pairs;
    CorruptionState st;
    bool medoid = cfg.mode == "medoid-cemp";

    double t0 = now_seconds();
    UniformHypergraph H2;
    if (medoid) {
        auto reduced = reduce_two_section_medoid(H);
        H2 = pair_graph_to_hypergraph(reduced);
    }
    const UniformHypergraph& work = medoid ? H2 : H;
    auto chg = enumerate_cycles(work);
    compute_consistency(work, chg);
    double t1 = now_seconds();
    st = chmp_run(chg, cfg.chmp);
    double t2 = now_seconds();
    if (cfg.mode == "spectral-baseline") {
        // the baseline is fully unweighted: refinement must not see the CHMP
        // scores either (ties resolve to the smallest hyperedge id)
        CorruptionState uniform;
        uniform.s.assign(work.num_hyperedges(), 0.0);
        pairs = refine(work, uniform);
    } else {
        pairs = refine(work, st);
    }
    auto potential = run_recovery(cfg.mode, pairs, cfg);
    double t3 = now_seconds();

    res.init_time = t1 - t0;
    res.iterate_time = t2 - t1;
    res.recover_time = t3 - t2;
    res.trace = st.trace;
    if (truth != nullptr) {
        res.has_errors = true;
        if (!medoid) { // pair-level CHMP estimates are incomparable to hyperedge s*
            auto ce = corruption_errors(H, st, *truth);
            res.chmp_error = ce.chmp_error;
            res.chmp_min_error = ce.chmp_min_error;
        }
        res.procrustes_error = align_procrustes(potential, truth->vertex_potential).error;
    }
    return res;
}

std::vector<std::string> run_row(const ExperimentConfig& cfg, std::uint64_t seed, double p,
                                 double q, double sigma, const RunResult& res, bool with_times) {
    std::vector<std::string> row = {std::to_string(seed), format_double(p), format_double(q),
                                    format_double(sigma), cfg.mode};
    bool chmp_cols = res.has_errors && cfg.mode != "medoid-cemp";
    row.push_back(chmp_cols ? format_double(res.chmp_error) : "");
    row.push_back(chmp_cols ? format_double(res.chmp_min_error) : "");
    row.push_back(res.has_errors ? format_double(res.procrustes_error) : "");
    if (with_times) {
        row.push_back(format_double(res.init_time));
        row.push_back(format_double(res.iterate_time));
        row.push_back(format_double(res.recover_time));
        row.push_back(format_double(res.init_time + res.iterate_time + res.recover_time));
    }
    return row;
}

Instance load_or_generate(const ExperimentConfig& cfg, GroundTruth** truth_out) {
    Instance inst;
    *truth_out = nullptr;
    if (!cfg.instance_path.empty()) {
        inst.hypergraph = read_hypergraph_file(cfg.instance_path);
        if (!cfg.truth_path.empty()) {
            inst.truth = read_ground_truth_file(cfg.truth_path, inst.hypergraph);
            *truth_out = &inst.truth;
        }
    } else {
        inst = generate_ucmh(cfg.model);
        *truth_out = &inst.truth;
    }
    return inst;
}

std::string instance_file(const ExperimentConfig& cfg, std::uint64_t seed) {
    return (fs::path(cfg.out_dir) / ("instance_" + std::to_string(seed) + ".txt")).string();
}

std::string truth_file(const ExperimentConfig& cfg, std::uint64_t seed) {
    return (fs::path(cfg.out_dir) / ("truth_" + std::to_string(seed) + ".txt")).string();
}

int cmd_synth(const ExperimentConfig& cfg) {
    fs::create_directories(cfg.out_dir);
    for (std::uint64_t seed : cfg.seeds) {
        ModelParams params = cfg.model;
        params.seed = seed;
        auto inst = generate_ucmh(params);
        write_hypergraph_file(instance_file(cfg, seed), inst.hypergraph);
        write_ground_truth_file(truth_file(cfg, seed), inst.hypergraph, inst.truth);
        std::cout << "synth seed=" << seed << " m=" << params.m
                  << " hyperedges=" << inst.hypergraph.num_hyperedges() << " -> "
                  << instance_file(cfg, seed) << "\n";
    }
    return 0;
}

int cmd_run(const ExperimentConfig& cfg) {
    GroundTruth* truth = nullptr;
    Instance inst = load_or_generate(cfg, &truth);
    auto res = run_pipeline(inst.hypergraph, truth, cfg);

    Csv csv;
    csv.kind = "run";
    csv.columns = {"seed",        "p",          "q",          "sigma",
                   "mode",        "chmp_error", "min_error",  "procrustes_error",
                   "init_time",   "iterate_time", "recover_time", "total_time"};
    csv.rows = {run_row(cfg, cfg.model.seed, cfg.model.p, cfg.model.q, cfg.model.sigma, res, true)};
    fs::create_directories(cfg.out_dir);
    auto out = (fs::path(cfg.out_dir) / "run.csv").string();
    write_csv_file(out, csv, cfg.timestamp);

    if (cfg.chmp.keep_trace && !res.trace.empty()) {
        Csv trace;
        trace.kind = "trace";
        trace.columns = {"t"};
        for (std::size_t h = 0; h < res.trace.front().size(); ++h)
            trace.columns.push_back("s_" + std::to_string(h));
        for (std::size_t t = 0; t < res.trace.size(); ++t) {
            std::vector<std::string> row = {std::to_string(t)};
            for (double v : res.trace[t]) row.push_back(format_double(v));
            trace.rows.push_back(std::move(row));
        }
        write_csv_file((fs::path(cfg.out_dir) / "trace.csv").string(), trace, cfg.timestamp);
    }

    std::cout << "mode=" << cfg.mode;
    if (res.has_errors) {
        if (cfg.mode != "medoid-cemp")
            std::cout << " chmp_error=" << res.chmp_error << " min_error=" << res.chmp_min_error;
        std::cout << " procrustes_error=" << res.procrustes_error;
    }
    std::cout << " init=" << res.init_time << "s iterate=" << res.iterate_time
              << "s recover=" << res.recover_time << "s\n"
              << "wrote " << out << "\n";
    return 0;
}

int cmd_sweep(const ExperimentConfig& cfg) {
    struct Task {
        std::size_t cell;
        std::uint64_t seed;
        bool ok = false;
        std::string reason;
        RunResult res;
    };
    struct Cell {
        double p, q, sigma;
    };
    std::vector<Cell> cells;
    for (double p : cfg.grid_p)
        for (double q : cfg.grid_q)
            for (double sigma : cfg.grid_sigma) cells.push_back({p, q, sigma});

    std::vector<Task> tasks;
    for (std::size_t c = 0; c < cells.size(); ++c)
        for (std::uint64_t seed : cfg.seeds) tasks.push_back({c, seed});

    // (cell, seed) units are independent; rows are assembled afterwards in
    // grid order, so scheduling cannot change the output bytes.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(tasks.size()); ++i) {
        Task& task = tasks[i];
        ModelParams params = cfg.model;
        params.p = cells[task.cell].p;
        params.q = cells[task.cell].q;
        params.sigma = cells[task.cell].sigma;
        params.seed = task.seed;
        try {
            auto inst = generate_ucmh(params);
            task.res = run_pipeline(inst.hypergraph, &inst.truth, cfg);
            task.ok = true;
        } catch (const std::exception& e) {
            task.reason = e.what();
        }
    }

    Csv csv;
    csv.kind = "sweep";
    csv.columns = {"p",     "q",          "sigma",     "mode",
                   "seeds", "chmp_error", "min_error", "procrustes_error",
                   "reason"};
    for (std::size_t c = 0; c < cells.size(); ++c) {
        double chmp = 0.0, min_err = 0.0, proc = 0.0;
        int good = 0;
        std::string reason;
        for (const Task& task : tasks) {
            if (task.cell != c) continue;
            if (!task.ok) {
                if (reason.empty())
                    reason = "seed " + std::to_string(task.seed) + ": " + task.reason;
                continue;
            }
            chmp += task.res.chmp_error;
            min_err += task.res.chmp_min_error;
            proc += task.res.procrustes_error;
            ++good;
        }
        std::vector<std::string> row = {format_double(cells[c].p), format_double(cells[c].q),
                                        format_double(cells[c].sigma), cfg.mode,
                                        std::to_string(cfg.seeds.size())};
        if (!reason.empty() || good == 0) {
            row.insert(row.end(), {"", "", ""});
            if (reason.empty()) reason = "no successful seeds";
        } else if (cfg.mode == "medoid-cemp") {
            row.insert(row.end(), {"", "", format_double(proc / good)});
        } else {
            row.insert(row.end(), {format_double(chmp / good), format_double(min_err / good),
                                   format_double(proc / good)});
        }
        row.push_back(reason);
        csv.rows.push_back(std::move(row));
    }
    fs::create_directories(cfg.out_dir);
    auto out = (fs::path(cfg.out_dir) / "sweep.csv").string();
    write_csv_file(out, csv, cfg.timestamp);
    std::cout << "sweep: " << cells.size() << " cells x " << cfg.seeds.size()
              << " seeds -> " << out << "\n";
    return 0;
}

int cmd_cycles(const ExperimentConfig& cfg) {
    GroundTruth* truth = nullptr;
    Instance inst = load_or_generate(cfg, &truth);
    auto chg = enumerate_cycles(inst.hypergraph);
    compute_consistency(inst.hypergraph, chg);

    int mh = inst.hypergraph.num_hyperedges();
    int min_inc = mh > 0 ? mh * mh : 0, max_inc = 0, uncovered = 0;
    long long total_inc = 0;
    for (const auto& inc : chg.incidence) {
        int k = static_cast<int>(inc.size());
        min_inc = std::min(min_inc, k);
        max_inc = std::max(max_inc, k);
        total_inc += k;
        if (k == 0) ++uncovered;
    }
    double mean_dc = 0.0, max_dc = 0.0;
    for (double d : chg.d_C) {
        mean_dc += d;
        max_dc = std::max(max_dc, d);
    }
    if (!chg.d_C.empty()) mean_dc /= static_cast<double>(chg.d_C.size());

    Csv csv;
    csv.kind = "cycles";
    csv.columns = {"hyperedges", "cycles",    "incidences", "min_incidence", "max_incidence",
                   "uncovered",  "mean_d_c",  "max_d_c"};
    csv.rows = {{std::to_string(mh), std::to_string(chg.num_cycles()), std::to_string(total_inc),
                 std::to_string(mh > 0 ? min_inc : 0), std::to_string(max_inc),
                 std::to_string(uncovered), format_double(mean_dc), format_double(max_dc)}};
    fs::create_directories(cfg.out_dir);
    auto out = (fs::path(cfg.out_dir) / "cycles.csv").string();
    write_csv_file(out, csv, cfg.timestamp);
    std::cout << "hyperedges=" << mh << " cycles=" << chg.num_cycles()
              << " incidences=" << total_inc << " uncovered=" << uncovered
              << " mean_d_C=" << mean_dc << " max_d_C=" << max_dc << "\n"
              << "wrote " << out << "\n";
    return 0;
}

int cmd_verify(const ExperimentConfig& cfg) {
    GroundTruth* truth = nullptr;
    Instance inst = load_or_generate(cfg, &truth);
    auto res = synchronize_noiseless(inst.hypergraph);
    if (res.ok) {
        std::cout << "synchronizable: yes (residual " << res.residual << ")\n";
        return 0;
    }
    std::cout << "synchronizable: no (first inconsistent hyperedge "
              << res.inconsistent_hyperedge << ", residual " << res.residual << ")\n";
    return 2;
}

void apply_threads(int threads) {
    if (const char* env = std::getenv("HYPERSYNC_THREADS")) {
        try {
            threads = std::stoi(env);
        } catch (const std::exception&) {
            throw config_error("HYPERSYNC_THREADS must be an integer");
        }
    }
#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
#else
    (void)threads;
#endif
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypersync: corruption-robust group synchronization on uniform hypergraphs"};
    app.require_subcommand(1);
    app.fallthrough(); // allow global flags after the subcommand name

    std::string config_path, out_dir, mode, instance_path, truth_path;
    std::optional<std::uint64_t> seed;
    int threads = 0;
    bool no_timestamp = false;

    app.add_option("--config", config_path, "JSON experiment config");
    app.add_option("--seed", seed, "override model seed");
    app.add_option("--mode", mode, "recovery mode: mst|gcw|spectral-baseline|medoid-cemp");
    app.add_option("--out-dir", out_dir, "output directory");
    app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp comment from CSV output");
    app.add_option("--threads", threads, "OpenMP thread count (0 = runtime default)");

    auto* synth = app.add_subcommand("synth", "generate instances for the configured seeds");
    auto* run = app.add_subcommand("run", "single pipeline run");
    auto* sweep = app.add_subcommand("sweep", "grid sweep over (p, q, sigma) x seeds");
    auto* cycles = app.add_subcommand("cycles", "cycle-hyperedge graph statistics");
    auto* verify = app.add_subcommand("verify", "noiseless synchronizability check");
    for (CLI::App* sub : {run, cycles, verify}) {
        sub->add_option("--instance", instance_path, "hypergraph instance file");
        sub->add_option("--truth", truth_path, "ground-truth file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        ExperimentConfig cfg = load_config(config_path);
        if (seed) cfg.model.seed = *seed;
        if (!mode.empty()) {
            if (std::find(kModes.begin(), kModes.end(), mode) == kModes.end())
                throw config_error("unknown recovery mode '" + mode + "'");
            cfg.mode = mode;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!instance_path.empty()) cfg.instance_path = instance_path;
        if (!truth_path.empty()) cfg.truth_path = truth_path;
        if (no_timestamp) cfg.timestamp = false;
        apply_threads(threads);

        if (synth->parsed()) return cmd_synth(cfg);
        if (run->parsed()) return cmd_run(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (cycles->parsed()) return cmd_cycles(cfg);
        if (verify->parsed()) return cmd_verify(cfg);
        return 1;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const numeric_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const io_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    }
}
