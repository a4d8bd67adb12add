#include <iostream>
#include <optional>
#include <string>

#include <omp.h>

#include "CLI11.hpp"

#include "blockrip/harness.hpp"
#include "blockrip/results_io.hpp"

using namespace blockrip;

namespace {

struct Globals {
    std::optional<Seed> seed;
    int threads = 0;
    std::string out;
};

// --out wins, then the fallback, then stdout.
std::string destination(const Globals& g, const std::string& fallback = {}) {
    if (!g.out.empty()) return g.out;
    return fallback.empty() ? "-" : fallback;
}

void emit(const CsvTable& table, const std::string& path) {
    write_csv(table, path);
    if (path != "-") std::cerr << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-structured compressed sensing experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "Master seed (overrides the config)");
    app.add_option("--threads", g.threads, "OpenMP worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", g.out, "Output path, '-' for stdout");

    // phase
    auto* phase = app.add_subcommand("phase", "Phase-transition grid from a JSON config or a preset");
    std::string config_path, preset, basis_name, operator_name;
    phase->add_option("--config", config_path, "ExperimentConfig JSON file");
    phase->add_option("--preset", preset, "Built-in grid instead of a config")->check(CLI::IsMember({"reduced", "full"}));
    phase->add_option("--basis", basis_name, "Preset basis")->check(CLI::IsMember({"Canonical", "Fourier", "Generic"}));
    phase->add_option("--operator", operator_name, "Preset operator")->check(CLI::IsMember({"DBD", "RBD"}));
    int max_iters = BpSettings{}.max_iters;
    phase->add_option("--max-iters", max_iters, "Solver iteration cap")->check(CLI::PositiveNumber);

    // coherence-mc
    auto* mc = app.add_subcommand("coherence-mc", "Monte Carlo coherence of Haar bases");
    Index mc_total = 256, mc_blocks = 16, mc_draws = 200;
    double beta_mu = 3.5, beta_gamma = 1.0;
    mc->add_option("--n-total", mc_total, "Basis size")->check(CLI::PositiveNumber);
    mc->add_option("--blocks", mc_blocks, "Number of blocks J")->check(CLI::PositiveNumber);
    mc->add_option("--draws", mc_draws, "Number of Haar draws")->check(CLI::PositiveNumber);
    mc->add_option("--beta-mu", beta_mu, "Coherence threshold constant");
    mc->add_option("--beta-gamma", beta_gamma, "Block-coherence threshold constant");

    // ric-compare
    auto* ric = app.add_subcommand("ric-compare", "Exact RIC under I, F and a generic basis");
    Index ric_total = 16, ric_blocks = 4, ric_s = 2, ric_m = 2, ric_draws = 100;
    std::string ensemble = "gaussian";
    bool orthogonal = false;
    ric->add_option("--n-total", ric_total, "Signal length")->check(CLI::PositiveNumber);
    ric->add_option("--blocks", ric_blocks, "Number of blocks J")->check(CLI::PositiveNumber);
    ric->add_option("--sparsity", ric_s, "Sparsity S")->check(CLI::PositiveNumber);
    ric->add_option("--meas", ric_m, "Measurements per block M")->check(CLI::PositiveNumber);
    ric->add_option("--draws", ric_draws, "Operator draws")->check(CLI::PositiveNumber);
    ric->add_option("--ensemble", ensemble, "Block entries")->check(CLI::IsMember({"gaussian", "rademacher"}));
    ric->add_flag("--orthogonal", orthogonal, "Orthogonal square blocks (requires M = N)");

    // circulant-demo
    auto* circ = app.add_subcommand("circulant-demo", "Partial circulant sensing through the RBD form");
    Index circ_p = 128, circ_j = 64, circ_s = 4, circ_trials = 20;
    double circ_threshold = 1e-2;
    circ->add_option("--P", circ_p, "Signal length P")->check(CLI::PositiveNumber);
    circ->add_option("--J", circ_j, "Measurements J")->check(CLI::PositiveNumber);
    circ->add_option("--sparsity", circ_s, "Sparsity S")->check(CLI::NonNegativeNumber);
    circ->add_option("--trials", circ_trials, "Trials")->check(CLI::PositiveNumber);
    circ->add_option("--threshold", circ_threshold, "Relative-error success threshold");

    // export-gnuplot
    auto* gp = app.add_subcommand("export-gnuplot", "Phase CSV to a gnuplot nonuniform matrix");
    std::string csv_path;
    gp->add_option("csv", csv_path, "Phase-transition CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (g.threads > 0) omp_set_num_threads(g.threads);
        const Seed seed = g.seed.value_or(0);

        if (phase->parsed()) {
            ExperimentConfig config;
            if (!config_path.empty()) {
                if (!preset.empty()) throw Error("phase: give either --config or --preset, not both");
                config = load_config(config_path);
            } else if (!preset.empty()) {
                const BasisLabel b = basis_label_from_string(basis_name.empty() ? "Canonical" : basis_name);
                const OperatorKind op = operator_kind_from_string(operator_name.empty() ? "DBD" : operator_name);
                config = preset == "full" ? full_preset(b, op, seed) : reduced_preset(b, op, seed);
            } else {
                throw Error("phase: --config or --preset is required");
            }
            if (g.seed) config.master_seed = *g.seed;
            BpSettings solver;
            solver.max_iters = max_iters;
            const PhaseGrid grid = run_phase_transition(config, solver);
            emit(phase_grid_table(grid), destination(g, config.output_path));
            std::cerr << "success mass " << grid.success_mass() << " over " << grid.cells.size() << " cells\n";
        } else if (mc->parsed()) {
            if (mc_total % mc_blocks != 0) throw Error("coherence-mc: --n-total must be a multiple of --blocks");
            const auto s = run_coherence_mc(mc_total, mc_blocks, mc_draws, seed, beta_mu, beta_gamma);
            emit(s.to_table(), destination(g));
        } else if (ric->parsed()) {
            if (ric_total % ric_blocks != 0) throw Error("ric-compare: --n-total must be a multiple of --blocks");
            RicCompareOptions opts;
            opts.ensemble = ensemble == "rademacher" ? EnsembleKind::Rademacher : EnsembleKind::Gaussian;
            opts.orthogonal_blocks = orthogonal;
            const auto s = run_ric_compare(ric_total, ric_blocks, ric_total / ric_blocks, ric_s, ric_m, ric_draws,
                                           seed, opts);
            emit(s.to_table(), destination(g));
        } else if (circ->parsed()) {
            const auto s = run_circulant_demo(circ_p, circ_j, circ_s, circ_trials, seed, {}, circ_threshold);
            emit(s.to_table(), destination(g));
        } else if (gp->parsed()) {
            write_text(gnuplot_matrix(read_csv(csv_path)), destination(g));
        }
    } catch (const std::exception& e) {
        std::cerr << "blockrip: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
