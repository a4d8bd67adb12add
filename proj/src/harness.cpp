#include "blockrip/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <memory>
#include <numeric>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "blockrip/chaos.hpp"
#include "blockrip/coherence.hpp"
#include "blockrip/kernels.hpp"
#include "blockrip/ric.hpp"

namespace blockrip {

using nlohmann::json;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::PhaseTransition: return "PhaseTransition";
        case ExperimentKind::CoherenceMC: return "CoherenceMC";
        case ExperimentKind::RicCompare: return "RicCompare";
        case ExperimentKind::CirculantDemo: return "CirculantDemo";
    }
    return "PhaseTransition";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    if (name == "PhaseTransition") return ExperimentKind::PhaseTransition;
    if (name == "CoherenceMC") return ExperimentKind::CoherenceMC;
    if (name == "RicCompare") return ExperimentKind::RicCompare;
    if (name == "CirculantDemo") return ExperimentKind::CirculantDemo;
    throw Error("unknown experiment kind '" + name + "'");
}

std::vector<Index> IndexRange::values() const {
    if (step < 1) throw Error("range step must be positive");
    std::vector<Index> out;
    for (Index v = start; v <= stop; v += step) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// Configuration

void ExperimentConfig::validate() const {
    if (n_trials < 1) throw Error("config: n_trials must be at least 1");
    if (!(success_threshold > 0.0)) throw Error("config: success_threshold must be positive");
    if (kind != ExperimentKind::PhaseTransition) return;
    if (s_range.step < 1 || m_range.step < 1) throw Error("config: range steps must be positive");
    if (s_range.start < 1 || s_range.stop > partition.n_total() || s_range.start > s_range.stop) {
        throw Error("config: S_range must lie within [1, " + std::to_string(partition.n_total()) + "]");
    }
    if (m_range.start < 1 || m_range.stop > partition.block_len() || m_range.start > m_range.stop) {
        throw Error("config: M_range must lie within [1, " + std::to_string(partition.block_len()) + "]");
    }
    if (basis_label != BasisLabel::Canonical && basis_label != BasisLabel::Fourier &&
        basis_label != BasisLabel::Generic) {
        throw Error("config: phase transitions support the Canonical, Fourier and Generic bases");
    }
}

ExperimentConfig full_preset(BasisLabel basis, OperatorKind op, Seed seed) {
    ExperimentConfig c;
    c.partition = BlockPartition(100, 10, 100);
    c.basis_label = basis;
    c.operator_kind = op;
    c.master_seed = seed;
    c.s_range = {1, 1000, 1};
    c.m_range = {1, 100, 1};
    return c;
}

ExperimentConfig reduced_preset(BasisLabel basis, OperatorKind op, Seed seed) {
    ExperimentConfig c;
    c.partition = BlockPartition(32, 4, 32);
    c.basis_label = basis;
    c.operator_kind = op;
    c.master_seed = seed;
    c.s_range = {1, 61, 4};
    c.m_range = {2, 32, 2};
    return c;
}

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!obj.is_object()) throw Error("config: " + where + " must be an object");
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* key : allowed) ok = ok || item.key() == key;
        if (!ok) throw Error("config: unknown key '" + item.key() + "' in " + where);
    }
}

IndexRange range_from_json(const json& j, const std::string& where) {
    reject_unknown(j, {"start", "stop", "step"}, where);
    IndexRange r;
    r.start = j.at("start").get<Index>();
    r.stop = j.at("stop").get<Index>();
    r.step = j.value("step", Index{1});
    return r;
}

json range_to_json(const IndexRange& r) { return {{"start", r.start}, {"stop", r.stop}, {"step", r.step}}; }

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw Error(std::string("config: invalid JSON: ") + e.what());
    }
    reject_unknown(j,
                   {"kind", "partition", "basis_label", "operator_kind", "n_trials", "success_threshold",
                    "master_seed", "S_range", "M_range", "output_path"},
                   "config");
    try {
        ExperimentConfig c;
        c.kind = experiment_kind_from_string(j.value("kind", std::string("PhaseTransition")));
        const json& p = j.at("partition");
        reject_unknown(p, {"block_len", "n_blocks", "meas_per_block", "n_total", "meas_total"}, "partition");
        const Index n = p.at("block_len").get<Index>();
        const Index jb = p.at("n_blocks").get<Index>();
        const Index m = p.value("meas_per_block", n);
        c.partition = BlockPartition(n, jb, m);
        if (p.contains("n_total") && p.at("n_total").get<Index>() != c.partition.n_total()) {
            throw Error("config: partition.n_total must equal n_blocks * block_len");
        }
        if (p.contains("meas_total") && p.at("meas_total").get<Index>() != c.partition.meas_total()) {
            throw Error("config: partition.meas_total must equal n_blocks * meas_per_block");
        }
        c.basis_label = basis_label_from_string(j.value("basis_label", std::string("Canonical")));
        c.operator_kind = operator_kind_from_string(j.value("operator_kind", std::string("DBD")));
        c.n_trials = j.value("n_trials", 20);
        c.success_threshold = j.value("success_threshold", 1e-2);
        c.master_seed = j.value("master_seed", Seed{0});
        c.s_range = j.contains("S_range") ? range_from_json(j.at("S_range"), "S_range")
                                          : IndexRange{1, c.partition.n_total(), 1};
        c.m_range = j.contains("M_range") ? range_from_json(j.at("M_range"), "M_range")
                                          : IndexRange{1, c.partition.block_len(), 1};
        c.output_path = j.value("output_path", std::string());
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw Error(std::string("config: ") + e.what());
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config(buf.str());
    } catch (const Error& e) {
        throw Error("'" + path + "': " + e.what());
    }
}

std::string config_to_json(const ExperimentConfig& c) {
    json j;
    j["kind"] = to_string(c.kind);
    j["partition"] = {{"block_len", c.partition.block_len()},
                      {"n_blocks", c.partition.n_blocks()},
                      {"meas_per_block", c.partition.meas_per_block()},
                      {"n_total", c.partition.n_total()},
                      {"meas_total", c.partition.meas_total()}};
    j["basis_label"] = to_string(c.basis_label);
    j["operator_kind"] = to_string(c.operator_kind);
    j["n_trials"] = c.n_trials;
    j["success_threshold"] = c.success_threshold;
    j["master_seed"] = c.master_seed;
    j["S_range"] = range_to_json(c.s_range);
    j["M_range"] = range_to_json(c.m_range);
    j["output_path"] = c.output_path;
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Phase transition

std::map<std::pair<Index, Index>, double> PhaseGrid::fractions() const {
    std::map<std::pair<Index, Index>, double> out;
    for (const auto& c : cells) out[{c.sparsity, c.meas_per_block}] = c.fraction();
    return out;
}

double PhaseGrid::success_mass() const {
    double total = 0.0;
    for (const auto& c : cells) total += c.fraction();
    return total;
}

namespace {

BlockOperator make_master(const ExperimentConfig& config) {
    const Index n = config.partition.block_len();
    const Index j = config.partition.n_blocks();
    const Ensemble unit{EnsembleKind::Gaussian, n, n, 1.0};
    if (config.operator_kind == OperatorKind::RBD) {
        Rng gen = make_stream(config.master_seed, {stream::kMaster, 0});
        return build_rbd(sample_block(unit, gen), j);
    }
    std::vector<RMatrix> blocks;
    for (Index b = 0; b < j; ++b) {
        Rng gen = make_stream(config.master_seed, {stream::kMaster, static_cast<std::uint64_t>(b)});
        blocks.push_back(sample_block(unit, gen));
    }
    return build_dbd(std::move(blocks));
}

Orthobasis fixed_basis(BasisLabel label, const BlockPartition& partition) {
    return label == BasisLabel::Fourier ? fourier_basis(partition) : canonical_basis(partition);
}

}  // namespace

PhaseGrid run_phase_transition(const ExperimentConfig& config, const BpSettings& solver) {
    config.validate();
    solver.validate();
    const std::vector<Index> s_values = config.s_range.values();
    const std::vector<Index> m_values = config.m_range.values();
    const BlockOperator master = make_master(config);
    const bool generic = config.basis_label == BasisLabel::Generic;
    const BlockPartition partition = config.partition;

    std::optional<Orthobasis> basis;
    if (!generic) basis = fixed_basis(config.basis_label, partition);

    const auto n_m = static_cast<Index>(m_values.size());
    std::vector<BlockOperator> ops;
    ops.reserve(m_values.size());
    for (Index m : m_values) ops.push_back(truncate_operator(master, m));

    // With a fixed basis one factorization per M serves every S and trial.
    std::vector<std::unique_ptr<BasisPursuit>> solvers(m_values.size());
    if (!generic) {
#pragma omp parallel for schedule(dynamic)
        for (Index mi = 0; mi < n_m; ++mi) {
            solvers[static_cast<std::size_t>(mi)] =
                std::make_unique<BasisPursuit>(ops[static_cast<std::size_t>(mi)].times_basis(*basis));
        }
    }

    const auto n_s = static_cast<Index>(s_values.size());
    const Index n_trials = config.n_trials;
    const Index n_items = n_s * n_m * n_trials;
    std::vector<unsigned char> success(static_cast<std::size_t>(n_items), 0);

#pragma omp parallel for schedule(dynamic)
    for (Index item = 0; item < n_items; ++item) {
        const Index trial = item % n_trials;
        const Index mi = (item / n_trials) % n_m;
        const Index si = item / (n_trials * n_m);
        const Index s = s_values[static_cast<std::size_t>(si)];
        const Index m = m_values[static_cast<std::size_t>(mi)];
        const BlockOperator& op = ops[static_cast<std::size_t>(mi)];
        const auto key = [&](std::uint64_t tag) {
            return make_stream(config.master_seed, {tag, static_cast<std::uint64_t>(s),
                                                    static_cast<std::uint64_t>(m),
                                                    static_cast<std::uint64_t>(trial)});
        };

        Rng signal_gen = key(stream::kSignal);
        const SparseUnitVector beta = sample_sparse_unit(partition.n_total(), s, signal_gen);

        BpResult result;
        if (generic) {
            Rng basis_gen = key(stream::kBasis);
            const Orthobasis w = generic_basis(partition, basis_gen);
            const CVector y = op.apply(w.entries() * beta.coeffs);
            result = BasisPursuit(op.times_basis(w)).solve(y, solver);
        } else {
            const CVector y = op.apply(basis->entries() * beta.coeffs);
            result = solvers[static_cast<std::size_t>(mi)]->solve(y, solver);
        }
        const bool ok = result.converged &&
                        recovery_success(beta.coeffs, result.beta, config.success_threshold);
        success[static_cast<std::size_t>(item)] = ok ? 1 : 0;
    }

    PhaseGrid grid;
    grid.config = config;
    for (Index si = 0; si < n_s; ++si) {
        for (Index mi = 0; mi < n_m; ++mi) {
            PhaseCell cell;
            cell.sparsity = s_values[static_cast<std::size_t>(si)];
            cell.meas_per_block = m_values[static_cast<std::size_t>(mi)];
            cell.trials = static_cast<int>(n_trials);
            for (Index t = 0; t < n_trials; ++t) {
                cell.successes += success[static_cast<std::size_t>((si * n_m + mi) * n_trials + t)];
            }
            grid.cells.push_back(cell);
        }
    }
    return grid;
}

CsvTable phase_grid_table(const PhaseGrid& grid) {
    CsvTable t;
    t.header = {"S", "M", "J", "N", "operator_kind", "basis", "n_trials", "success_fraction", "master_seed"};
    const auto& c = grid.config;
    for (const auto& cell : grid.cells) {
        t.rows.push_back({std::to_string(cell.sparsity), std::to_string(cell.meas_per_block),
                          std::to_string(c.partition.n_blocks()), std::to_string(c.partition.block_len()),
                          to_string(c.operator_kind), to_string(c.basis_label), std::to_string(cell.trials),
                          format_double(cell.fraction()), std::to_string(c.master_seed)});
    }
    return t;
}

namespace {

std::size_t column_of(const CsvTable& t, const std::string& name) {
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    if (it == t.header.end()) throw Error("CSV is missing column '" + name + "'");
    return static_cast<std::size_t>(it - t.header.begin());
}

}  // namespace

std::map<std::pair<Index, Index>, double> read_phase_fractions(const std::string& path) {
    const CsvTable t = read_csv(path);
    const auto s_col = column_of(t, "S");
    const auto m_col = column_of(t, "M");
    const auto f_col = column_of(t, "success_fraction");
    std::map<std::pair<Index, Index>, double> out;
    for (const auto& row : t.rows) {
        out[{std::stoll(row[s_col]), std::stoll(row[m_col])}] = std::stod(row[f_col]);
    }
    return out;
}

std::string gnuplot_matrix(const CsvTable& t) {
    const auto s_col = column_of(t, "S");
    const auto m_col = column_of(t, "M");
    const auto f_col = column_of(t, "success_fraction");
    std::map<Index, std::map<Index, std::string>> cells;
    std::vector<Index> ms;
    for (const auto& row : t.rows) {
        const Index s = std::stoll(row[s_col]);
        const Index m = std::stoll(row[m_col]);
        cells[s][m] = row[f_col];
        ms.push_back(m);
    }
    std::sort(ms.begin(), ms.end());
    ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

    std::ostringstream out;
    out << "# nonuniform matrix: first row = M values, first column = S values\n";
    out << ms.size();
    for (Index m : ms) out << ' ' << m;
    out << '\n';
    for (const auto& [s, row] : cells) {
        out << s;
        for (Index m : ms) {
            const auto it = row.find(m);
            out << ' ' << (it == row.end() ? std::string("NaN") : it->second);
        }
        out << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Coherence Monte Carlo

double CoherenceMcSummary::quantile(std::vector<double> v, double q) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const auto n = static_cast<double>(v.size());
    auto rank = static_cast<std::size_t>(std::ceil(q * n));
    rank = std::clamp<std::size_t>(rank, 1, v.size());
    return v[rank - 1];
}

CsvTable CoherenceMcSummary::to_table() const {
    CsvTable t;
    t.header = {"n_total", "J", "N", "n_draws", "seed", "mu_q50", "mu_q99", "mu_max", "mu_threshold",
                "mu_exceed", "gamma_q50", "gamma_q99", "gamma_max", "gamma_threshold", "gamma_exceed"};
    t.rows.push_back({std::to_string(n_total), std::to_string(n_blocks), std::to_string(block_len),
                      std::to_string(n_draws), std::to_string(seed), format_double(quantile(mu_samples, 0.5)),
                      format_double(quantile(mu_samples, 0.99)), format_double(quantile(mu_samples, 1.0)),
                      format_double(mu_threshold), std::to_string(mu_exceed),
                      format_double(quantile(gamma_samples, 0.5)), format_double(quantile(gamma_samples, 0.99)),
                      format_double(quantile(gamma_samples, 1.0)), format_double(gamma_threshold),
                      std::to_string(gamma_exceed)});
    return t;
}

CoherenceMcSummary run_coherence_mc(Index n_total, Index n_blocks, Index n_draws, Seed seed, double beta_mu,
                                    double beta_gamma) {
    if (n_blocks < 1 || n_total % n_blocks != 0) {
        throw Error("coherence-mc: n_blocks must divide n_total");
    }
    const Index block_len = n_total / n_blocks;
    if (n_blocks > block_len) throw Error("coherence-mc: the block-coherence check needs J <= N");
    if (n_draws < 1) throw Error("coherence-mc: need at least one draw");
    const BlockPartition partition(block_len, n_blocks);

    CoherenceMcSummary out;
    out.n_total = n_total;
    out.n_blocks = n_blocks;
    out.block_len = block_len;
    out.n_draws = n_draws;
    out.seed = seed;
    out.beta_mu = beta_mu;
    out.beta_gamma = beta_gamma;
    out.mu_threshold = beta_mu * std::sqrt(std::log(static_cast<double>(n_total)));
    out.gamma_threshold =
        1.0 + std::sqrt(static_cast<double>(n_blocks) / static_cast<double>(block_len)) + beta_gamma;
    out.mu_samples.assign(static_cast<std::size_t>(n_draws), 0.0);
    out.gamma_samples.assign(static_cast<std::size_t>(n_draws), 0.0);

#pragma omp parallel for schedule(dynamic)
    for (Index d = 0; d < n_draws; ++d) {
        Rng gen = make_stream(seed, {stream::kBasis, static_cast<std::uint64_t>(d)});
        const Orthobasis w = generic_basis(partition, gen);
        out.mu_samples[static_cast<std::size_t>(d)] = coherence(w);
        out.gamma_samples[static_cast<std::size_t>(d)] = block_coherence(w);
    }
    for (Index d = 0; d < n_draws; ++d) {
        out.mu_exceed += out.mu_samples[static_cast<std::size_t>(d)] > out.mu_threshold;
        out.gamma_exceed += out.gamma_samples[static_cast<std::size_t>(d)] > out.gamma_threshold;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact RIC comparison

double RicCompareRow::mean() const {
    if (deltas.empty()) return 0.0;
    return std::accumulate(deltas.begin(), deltas.end(), 0.0) / static_cast<double>(deltas.size());
}

double RicCompareRow::standard_error() const {
    const auto n = static_cast<double>(deltas.size());
    if (deltas.size() < 2) return 0.0;
    const double mu = mean();
    double ss = 0.0;
    for (double d : deltas) ss += (d - mu) * (d - mu);
    return std::sqrt(ss / (n - 1.0) / n);
}

double RicCompareRow::max() const {
    return deltas.empty() ? 0.0 : *std::max_element(deltas.begin(), deltas.end());
}

const RicCompareRow& RicCompareSummary::row(OperatorKind op, BasisLabel basis) const {
    for (const auto& r : rows) {
        if (r.operator_kind == op && r.basis == basis) return r;
    }
    throw Error("ric-compare: no row for " + to_string(op) + "/" + to_string(basis));
}

CsvTable RicCompareSummary::to_table() const {
    CsvTable t;
    t.header = {"operator_kind", "basis", "n_total", "J", "N", "S", "M", "n_ops", "mean_delta", "stderr_delta",
                "max_delta", "seed"};
    for (const auto& r : rows) {
        t.rows.push_back({to_string(r.operator_kind), to_string(r.basis), std::to_string(n_blocks * block_len),
                          std::to_string(n_blocks), std::to_string(block_len), std::to_string(sparsity),
                          std::to_string(meas_per_block), std::to_string(n_ops), format_double(r.mean()),
                          format_double(r.standard_error()), format_double(r.max()), std::to_string(seed)});
    }
    return t;
}

namespace {

RMatrix orthogonalize(const RMatrix& block) {
    Eigen::HouseholderQR<RMatrix> qr(block);
    RMatrix q = qr.householderQ() * RMatrix::Identity(block.rows(), block.cols());
    return q;
}

}  // namespace

RicCompareSummary run_ric_compare(Index n_total, Index n_blocks, Index block_len, Index sparsity,
                                  Index meas_per_block, Index n_ops, Seed seed,
                                  const RicCompareOptions& options) {
    if (n_blocks * block_len != n_total) throw Error("ric-compare: n_total must equal J * N");
    if (meas_per_block < 1 || meas_per_block > block_len) throw Error("ric-compare: need 1 <= M <= N");
    if (n_ops < 1) throw Error("ric-compare: need at least one operator draw");
    if (options.orthogonal_blocks && meas_per_block != block_len) {
        throw Error("ric-compare: orthogonal blocks require M = N");
    }
    if (kernels::binomial_capped(n_total, sparsity, kDefaultEnumerationCap) > kDefaultEnumerationCap) {
        throw Error("ric-compare: C(n_total, S) exceeds the enumeration cap");
    }
    const BlockPartition partition(block_len, n_blocks, meas_per_block);
    const Orthobasis identity = canonical_basis(partition);
    const Orthobasis fourier = fourier_basis(partition);
    const Ensemble ensemble{options.ensemble, meas_per_block, block_len};

    const std::array<OperatorKind, 2> kinds{OperatorKind::DBD, OperatorKind::RBD};
    const std::array<BasisLabel, 3> labels{BasisLabel::Canonical, BasisLabel::Fourier, BasisLabel::Generic};

    RicCompareSummary out;
    out.n_blocks = n_blocks;
    out.block_len = block_len;
    out.sparsity = sparsity;
    out.meas_per_block = meas_per_block;
    out.n_ops = n_ops;
    out.seed = seed;
    for (auto k : kinds) {
        for (auto l : labels) {
            RicCompareRow row;
            row.operator_kind = k;
            row.basis = l;
            row.deltas.assign(static_cast<std::size_t>(n_ops), 0.0);
            out.rows.push_back(std::move(row));
        }
    }

#pragma omp parallel for schedule(dynamic)
    for (Index k = 0; k < n_ops; ++k) {
        const auto draw = static_cast<std::uint64_t>(k);
        Rng basis_gen = make_stream(seed, {stream::kBasis, draw});
        const Orthobasis generic = generic_basis(partition, basis_gen);

        std::vector<RMatrix> blocks;
        for (Index j = 0; j < n_blocks; ++j) {
            Rng gen = make_stream(seed, {stream::kBlock, draw, static_cast<std::uint64_t>(j)});
            RMatrix b = sample_block(ensemble, gen);
            blocks.push_back(options.orthogonal_blocks ? orthogonalize(b) : b);
        }
        const RMatrix shared = blocks.front();
        const BlockOperator dbd = build_dbd(std::move(blocks));
        const BlockOperator rbd = build_rbd(shared, n_blocks);

        std::size_t idx = 0;
        for (const BlockOperator* op : {&dbd, &rbd}) {
            for (const Orthobasis* u : {&identity, &fourier, &generic}) {
                out.rows[idx].deltas[static_cast<std::size_t>(k)] = exact_ric(*op, *u, sparsity).delta;
                ++idx;
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partial circulant demo

CsvTable CirculantDemoSummary::to_table() const {
    CsvTable t;
    t.header = {"P", "J", "S", "n_trials", "seed", "identity_gap", "representation_gap", "successes",
                "success_fraction", "mean_rel_error", "threshold"};
    t.rows.push_back({std::to_string(P), std::to_string(J), std::to_string(sparsity), std::to_string(n_trials),
                      std::to_string(seed), format_double(identity_gap), format_double(representation_gap),
                      std::to_string(successes), format_double(success_fraction()), format_double(mean_rel_error),
                      format_double(threshold)});
    return t;
}

CMatrix circulant_effective_matrix(const BlockOperator& rbd, Index P, Index J) {
    if (rbd.partition().block_len() != P || rbd.partition().n_blocks() != J) {
        throw Error("circulant_effective_matrix: operator does not match (P, J)");
    }
    const Index m = rbd.partition().meas_per_block();
    CMatrix out = CMatrix::Zero(rbd.partition().meas_total(), P * J);
    for (Index col = 0; col < P * J; ++col) {
        for (const auto& [row, value] : circulant_basis_nonzeros(P, J, col)) {
            const Index j = row / P;
            const Index i = row % P;
            out.col(col).segment(j * m, m) += rbd.block(j).col(i).cast<cplx>() * value;
        }
    }
    return out;
}

CirculantDemoSummary run_circulant_demo(Index P, Index J, Index sparsity, Index n_trials, Seed seed,
                                        const BpSettings& solver, double threshold) {
    if (J < 1 || J > P) throw Error("circulant-demo: need 1 <= J <= P");
    if (sparsity < 0 || sparsity > P) throw Error("circulant-demo: need 0 <= S <= P");
    if (n_trials < 1) throw Error("circulant-demo: need at least one trial");

    CirculantDemoSummary out;
    out.P = P;
    out.J = J;
    out.sparsity = sparsity;
    out.n_trials = n_trials;
    out.seed = seed;
    out.threshold = threshold;
    const double inv_sqrt_j = 1.0 / std::sqrt(static_cast<double>(J));

    std::vector<double> identity_gap(static_cast<std::size_t>(n_trials), 0.0);
    std::vector<double> repr_gap(static_cast<std::size_t>(n_trials), 0.0);
    std::vector<double> rel_error(static_cast<std::size_t>(n_trials), 0.0);
    std::vector<unsigned char> ok(static_cast<std::size_t>(n_trials), 0);

#pragma omp parallel for schedule(dynamic)
    for (Index t = 0; t < n_trials; ++t) {
        const auto trial = static_cast<std::uint64_t>(t);
        Rng r_gen = make_stream(seed, {stream::kBlock, trial});
        std::normal_distribution<double> normal(0.0, 1.0);
        RVector r(P);
        for (Index p = 0; p < P; ++p) r(p) = normal(r_gen);
        const PartialCirculant phi_c(r, J);
        const BlockOperator phi_r = phi_c.rbd_form();

        // (a), (b) on a dense random x.
        Rng x_gen = make_stream(seed, {stream::kTrial, trial});
        CVector dense_x(P);
        for (Index p = 0; p < P; ++p) dense_x(p) = complex_normal(x_gen);
        const CVector extended = extend_signal(dense_x, J) * inv_sqrt_j;
        identity_gap[static_cast<std::size_t>(t)] =
            (phi_c.apply(dense_x) - phi_r.apply(extended)).cwiseAbs().maxCoeff();
        CVector t_beta = CVector::Zero(P * J);
        for (Index p = 0; p < P; ++p) {
            for (const auto& [row, value] : circulant_basis_nonzeros(P, J, p)) t_beta(row) += value * dense_x(p);
        }
        repr_gap[static_cast<std::size_t>(t)] = (extended - t_beta).cwiseAbs().maxCoeff();

        // (c) recover sparse x through Phi_R T.
        Rng s_gen = make_stream(seed, {stream::kSignal, trial});
        const SparseUnitVector x = sample_sparse_unit(P, sparsity, s_gen);
        const CVector y = phi_c.apply(x.coeffs);
        if (sparsity == 0) {
            ok[static_cast<std::size_t>(t)] = y.cwiseAbs().maxCoeff() == 0.0;
            continue;
        }
        const BasisPursuit bp(circulant_effective_matrix(phi_r, P, J));
        const BpResult result = bp.solve(y, solver);
        const CVector x_hat = result.beta.head(P);
        const double err = relative_error(x.coeffs, x_hat);
        rel_error[static_cast<std::size_t>(t)] = err;
        ok[static_cast<std::size_t>(t)] = result.converged && err < threshold;
    }

    for (Index t = 0; t < n_trials; ++t) {
        const auto i = static_cast<std::size_t>(t);
        out.identity_gap = std::max(out.identity_gap, identity_gap[i]);
        out.representation_gap = std::max(out.representation_gap, repr_gap[i]);
        out.successes += ok[i];
        out.mean_rel_error += rel_error[i] / static_cast<double>(n_trials);
    }
    return out;
}

}  // namespace blockrip
