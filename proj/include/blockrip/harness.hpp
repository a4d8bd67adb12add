#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "blockrip/bases.hpp"
#include "blockrip/operators.hpp"
#include "blockrip/recovery.hpp"
#include "blockrip/results_io.hpp"

namespace blockrip {

enum class ExperimentKind { PhaseTransition, CoherenceMC, RicCompare, CirculantDemo };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// Inclusive arithmetic range start, start + step, ..., <= stop.
struct IndexRange {
    Index start = 1;
    Index stop = 1;
    Index step = 1;

    std::vector<Index> values() const;
    bool operator==(const IndexRange&) const = default;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::PhaseTransition;
    BlockPartition partition{32, 4, 32};
    BasisLabel basis_label = BasisLabel::Canonical;
    OperatorKind operator_kind = OperatorKind::DBD;
    int n_trials = 20;
    double success_threshold = 1e-2;
    Seed master_seed = 0;
    IndexRange s_range;
    IndexRange m_range;
    std::string output_path;

    /// Throws unless S in [1, n_total], M in [1, N], n_trials >= 1.
    void validate() const;
};

/// The N = 100, J = 10 grid over every (S, M) in [1000] x [100].
ExperimentConfig full_preset(BasisLabel basis, OperatorKind op, Seed seed = 0);
/// N = 32, J = 4 (n_total = 128) on a subsampled grid sized for CI.
ExperimentConfig reduced_preset(BasisLabel basis, OperatorKind op, Seed seed = 0);

/// Parses a JSON config. Unknown keys are rejected.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
std::string config_to_json(const ExperimentConfig& config);

struct PhaseCell {
    Index sparsity = 0;
    Index meas_per_block = 0;
    int successes = 0;
    int trials = 0;

    double fraction() const { return trials ? static_cast<double>(successes) / trials : 0.0; }
};

struct PhaseGrid {
    ExperimentConfig config;
    std::vector<PhaseCell> cells;  ///< ordered by S, then M

    /// (S, M) -> success fraction.
    std::map<std::pair<Index, Index>, double> fractions() const;
    double success_mass() const;
};

/// One master operator with unit-variance N x N blocks; per (S, M) the first
/// M rows of every block are kept and renormalized, n_trials random S-sparse
/// signals in the configured basis are measured and recovered by basis
/// pursuit. A fresh generic basis is drawn per trial for BasisLabel::Generic.
/// Output is independent of the OpenMP thread count.
PhaseGrid run_phase_transition(const ExperimentConfig& config, const BpSettings& solver = {});

CsvTable phase_grid_table(const PhaseGrid& grid);
/// Rebuilds the cell map from a phase-transition CSV.
std::map<std::pair<Index, Index>, double> read_phase_fractions(const std::string& path);
/// gnuplot "nonuniform matrix" layout: first row M values, then one row per S.
std::string gnuplot_matrix(const CsvTable& phase_csv);

struct CoherenceMcSummary {
    Index n_total = 0;
    Index n_blocks = 0;
    Index block_len = 0;
    Index n_draws = 0;
    Seed seed = 0;
    double beta_mu = 3.5;
    double beta_gamma = 1.0;
    double mu_threshold = 0.0;     ///< beta_mu * sqrt(log n_total)
    double gamma_threshold = 0.0;  ///< 1 + sqrt(J/N) + beta_gamma
    std::vector<double> mu_samples;
    std::vector<double> gamma_samples;
    Index mu_exceed = 0;
    Index gamma_exceed = 0;

    /// Nearest-rank empirical quantile.
    static double quantile(std::vector<double> v, double q);
    CsvTable to_table() const;
};

/// Draws n_draws Haar bases and records mu(W), gamma(W) and their exceedance
/// counts. Requires J <= N.
CoherenceMcSummary run_coherence_mc(Index n_total, Index n_blocks, Index n_draws, Seed seed,
                                    double beta_mu = 3.5, double beta_gamma = 1.0);

struct RicCompareRow {
    OperatorKind operator_kind = OperatorKind::DBD;
    BasisLabel basis = BasisLabel::Canonical;
    std::vector<double> deltas;

    double mean() const;
    double standard_error() const;
    double max() const;
};

struct RicCompareSummary {
    Index n_blocks = 0;
    Index block_len = 0;
    Index sparsity = 0;
    Index meas_per_block = 0;
    Index n_ops = 0;
    Seed seed = 0;
    std::vector<RicCompareRow> rows;  ///< DBD then RBD; Canonical, Fourier, Generic

    const RicCompareRow& row(OperatorKind op, BasisLabel basis) const;
    CsvTable to_table() const;
};

struct RicCompareOptions {
    EnsembleKind ensemble = EnsembleKind::Gaussian;
    /// Replace every square block by an orthogonal matrix (requires M = N).
    bool orthogonal_blocks = false;
};

/// Exact delta_S for n_ops operator draws under U in {I, F, Generic}, for
/// DBD and RBD operators alike. Draw k uses streams (seed, k).
RicCompareSummary run_ric_compare(Index n_total, Index n_blocks, Index block_len, Index sparsity,
                                  Index meas_per_block, Index n_ops, Seed seed,
                                  const RicCompareOptions& options = {});

struct CirculantDemoSummary {
    Index P = 0;
    Index J = 0;
    Index sparsity = 0;
    Index n_trials = 0;
    Seed seed = 0;
    double identity_gap = 0.0;        ///< max |Phi_C x - Phi_R x~ / sqrt(J)|
    double representation_gap = 0.0;  ///< max |x~ / sqrt(J) - T beta|
    Index successes = 0;
    double mean_rel_error = 0.0;
    double threshold = 1e-2;

    double success_fraction() const {
        return n_trials ? static_cast<double>(successes) / static_cast<double>(n_trials) : 0.0;
    }
    CsvTable to_table() const;
};

/// Partial circulant sensing through its RBD reformulation: checks the two
/// identities on random dense x, then recovers S-sparse x by basis pursuit on
/// Phi_R T and reads x off the first P coefficients.
CirculantDemoSummary run_circulant_demo(Index P, Index J, Index sparsity, Index n_trials, Seed seed,
                                        const BpSettings& solver = {}, double threshold = 1e-2);

/// Phi_R T as a dense J x PJ matrix, assembled from the J nonzeros of each
/// circulant basis column.
CMatrix circulant_effective_matrix(const BlockOperator& rbd, Index P, Index J);

}  // namespace blockrip
