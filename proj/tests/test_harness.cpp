#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <omp.h>

#include "doctest.h"

#include "blockrip/harness.hpp"
#include "blockrip/results_io.hpp"

using namespace blockrip;

namespace {

ExperimentConfig small_config(BasisLabel basis, OperatorKind op) {
    ExperimentConfig c;
    c.partition = BlockPartition(8, 2, 8);
    c.basis_label = basis;
    c.operator_kind = op;
    c.n_trials = 6;
    c.master_seed = 42;
    c.s_range = {1, 7, 3};
    c.m_range = {2, 8, 3};
    return c;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("blockrip_test_" + name)).string();
}

}  // namespace

TEST_CASE("index ranges") {
    CHECK(IndexRange{1, 7, 3}.values() == std::vector<Index>{1, 4, 7});
    CHECK(IndexRange{2, 2, 1}.values() == std::vector<Index>{2});
    CHECK(IndexRange{3, 2, 1}.values().empty());
    CHECK_THROWS_AS((IndexRange{1, 3, 0}.values()), Error);
}

TEST_CASE("config parsing") {
    const std::string text = R"({
        "kind": "PhaseTransition",
        "partition": {"block_len": 16, "n_blocks": 2},
        "basis_label": "Fourier",
        "operator_kind": "RBD",
        "n_trials": 5,
        "master_seed": 9,
        "S_range": {"start": 1, "stop": 9, "step": 4},
        "M_range": {"start": 2, "stop": 16}
    })";
    const auto c = parse_config(text);
    CHECK(c.partition == BlockPartition(16, 2, 16));
    CHECK(c.basis_label == BasisLabel::Fourier);
    CHECK(c.operator_kind == OperatorKind::RBD);
    CHECK(c.n_trials == 5);
    CHECK(c.master_seed == 9);
    CHECK(c.s_range == IndexRange{1, 9, 4});
    CHECK(c.m_range == IndexRange{2, 16, 1});

    const auto again = parse_config(config_to_json(c));
    CHECK(config_to_json(again) == config_to_json(c));

    CHECK_THROWS_AS(parse_config(R"({"partition": {"block_len": 4, "n_blocks": 2}, "bogus": 1})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"partition": {"block_len": 4, "n_blocks": 2, "extra": 1}})"), Error);
    CHECK_THROWS_AS(parse_config(R"({"partition": {"block_len": 4, "n_blocks": 2, "n_total": 9}})"), Error);
    CHECK_THROWS_AS(
        parse_config(R"({"partition": {"block_len": 4, "n_blocks": 2}, "S_range": {"start": 1, "stop": 9}})"),
        Error);
    CHECK_THROWS_AS(
        parse_config(R"({"partition": {"block_len": 4, "n_blocks": 2}, "M_range": {"start": 0, "stop": 2}})"),
        Error);
    CHECK_THROWS_AS(parse_config(R"({"partition": {"block_len": 4, "n_blocks": 2}, "basis_label": "Circulant"})"),
                    Error);
    CHECK_THROWS_AS(parse_config("{not json"), Error);
    CHECK_THROWS_AS(load_config(temp_path("does_not_exist.json")), Error);
}

TEST_CASE("presets") {
    const auto full = full_preset(BasisLabel::Generic, OperatorKind::DBD, 3);
    CHECK(full.partition.n_total() == 1000);
    CHECK(full.partition.n_blocks() == 10);
    CHECK(full.s_range.values().size() == 1000);
    CHECK(full.m_range.values().size() == 100);
    CHECK_NOTHROW(full.validate());
    const auto reduced = reduced_preset(BasisLabel::Fourier, OperatorKind::RBD, 3);
    CHECK(reduced.partition.n_total() == 128);
    CHECK(reduced.partition.n_blocks() == 4);
    CHECK(reduced.n_trials == 20);
    CHECK(reduced.success_threshold == 1e-2);
    CHECK_NOTHROW(reduced.validate());
}

TEST_CASE("phase grid basics") {
    SUBCASE("S = 1 with full square blocks always succeeds") {
        auto c = small_config(BasisLabel::Canonical, OperatorKind::DBD);
        c.s_range = {1, 1, 1};
        c.m_range = {8, 8, 1};
        const auto g = run_phase_transition(c);
        REQUIRE(g.cells.size() == 1);
        CHECK(g.cells[0].fraction() == 1.0);
    }
    SUBCASE("M = 1 with S near the measurement count fails") {
        auto c = small_config(BasisLabel::Canonical, OperatorKind::DBD);
        c.s_range = {2, 2, 1};
        c.m_range = {1, 1, 1};
        c.n_trials = 10;
        const auto g = run_phase_transition(c);
        CHECK(g.cells[0].fraction() <= 0.2);
    }
    SUBCASE("fractions are multiples of 1/n_trials") {
        const auto g = run_phase_transition(small_config(BasisLabel::Generic, OperatorKind::RBD));
        CHECK(g.cells.size() == 9);
        for (const auto& cell : g.cells) {
            const double scaled = cell.fraction() * cell.trials;
            CHECK(std::abs(scaled - std::round(scaled)) <= 1e-12);
            CHECK(cell.trials == 6);
        }
    }
}

TEST_CASE("phase grid is independent of the thread count") {
    for (auto basis : {BasisLabel::Canonical, BasisLabel::Generic}) {
        const auto c = small_config(basis, OperatorKind::DBD);
        const int saved = omp_get_max_threads();
        omp_set_num_threads(1);
        const std::string one = phase_grid_table(run_phase_transition(c)).to_string();
        omp_set_num_threads(3);
        const std::string three = phase_grid_table(run_phase_transition(c)).to_string();
        omp_set_num_threads(saved);
        CHECK(one == three);
    }
}

TEST_CASE("success trend in M") {
    ExperimentConfig c;
    c.partition = BlockPartition(16, 2, 16);
    c.basis_label = BasisLabel::Fourier;
    c.operator_kind = OperatorKind::DBD;
    c.n_trials = 20;
    c.master_seed = 5;
    c.s_range = {3, 3, 1};
    c.m_range = {1, 16, 1};
    const auto g = run_phase_transition(c);
    std::vector<double> f;
    for (const auto& cell : g.cells) f.push_back(cell.fraction());
    std::vector<double> smooth;
    for (std::size_t i = 1; i + 1 < f.size(); ++i) smooth.push_back((f[i - 1] + f[i] + f[i + 1]) / 3.0);
    for (std::size_t i = 1; i < smooth.size(); ++i) CHECK(smooth[i] >= smooth[i - 1] - 0.1);
    CHECK(smooth.back() > smooth.front());
}

TEST_CASE("csv output") {
    SUBCASE("empty grid is header-only") {
        PhaseGrid g;
        g.config = small_config(BasisLabel::Canonical, OperatorKind::DBD);
        CHECK(phase_grid_table(g).to_string() ==
              "S,M,J,N,operator_kind,basis,n_trials,success_fraction,master_seed\n");
    }
    SUBCASE("two cells and round trip") {
        PhaseGrid g;
        g.config = small_config(BasisLabel::Fourier, OperatorKind::RBD);
        g.cells = {PhaseCell{1, 2, 3, 6}, PhaseCell{4, 2, 1, 6}};
        const auto t = phase_grid_table(g);
        CHECK(t.rows.size() == 2);
        CHECK(t.rows[0] == std::vector<std::string>{"1", "2", "2", "8", "RBD", "Fourier", "6", "0.5", "42"});
        const std::string path = temp_path("grid.csv");
        write_csv(t, path);
        const auto back = read_phase_fractions(path);
        CHECK(back == g.fractions());
        std::ifstream in(path);
        const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        CHECK(bytes == t.to_string());
        std::remove(path.c_str());
    }
    SUBCASE("lossless doubles") {
        for (double v : {0.1, 1.0 / 3.0, 2.0 / 7.0, 1e-300, 12345.678901234567}) {
            CHECK(std::stod(format_double(v)) == v);
        }
    }
    SUBCASE("parse errors") {
        CHECK_THROWS_AS(parse_csv("a,b\n1,2,3\n"), Error);
        CHECK_THROWS_AS(read_csv(temp_path("missing.csv")), Error);
        CHECK_THROWS_AS(write_csv(CsvTable{{"a"}, {}}, "/nonexistent_dir/x.csv"), Error);
    }
    SUBCASE("gnuplot matrix") {
        const auto t = parse_csv("S,M,success_fraction\n1,2,0.5\n1,4,1\n3,2,0\n");
        CHECK(gnuplot_matrix(t) ==
              "# nonuniform matrix: first row = M values, first column = S values\n2 2 4\n1 0.5 1\n3 0 NaN\n");
    }
}

TEST_CASE("coherence monte carlo") {
    SUBCASE("J = 1 gives gamma = 1") {
        const auto s = run_coherence_mc(16, 1, 10, 3);
        for (double g : s.gamma_samples) CHECK(std::abs(g - 1.0) <= 1e-12);
    }
    SUBCASE("quantiles and determinism") {
        CHECK(CoherenceMcSummary::quantile({3, 1, 2, 4}, 0.5) == 2.0);
        CHECK(CoherenceMcSummary::quantile({3, 1, 2, 4}, 1.0) == 4.0);
        const auto a = run_coherence_mc(32, 4, 8, 11);
        const auto b = run_coherence_mc(32, 4, 8, 11);
        CHECK(a.to_table().to_string() == b.to_table().to_string());
        CHECK(a.mu_samples.size() == 8);
    }
    CHECK_THROWS_AS(run_coherence_mc(16, 8, 2, 1), Error);
}

TEST_CASE("ric comparison") {
    SUBCASE("orthogonal square blocks are isometries") {
        RicCompareOptions opts;
        opts.orthogonal_blocks = true;
        const auto s = run_ric_compare(16, 4, 4, 2, 4, 3, 7, opts);
        for (const auto& row : s.rows) CHECK(row.max() <= 1e-10);
    }
    SUBCASE("table shape") {
        const auto s = run_ric_compare(8, 2, 4, 2, 2, 4, 7);
        CHECK(s.rows.size() == 6);
        CHECK(s.to_table().rows.size() == 6);
        CHECK(s.row(OperatorKind::RBD, BasisLabel::Fourier).deltas.size() == 4);
    }
    CHECK_THROWS_AS(run_ric_compare(40, 2, 20, 10, 2, 1, 1), Error);
}

TEST_CASE("circulant demo") {
    SUBCASE("small identity check") {
        const auto s = run_circulant_demo(3, 2, 1, 5, 1);
        CHECK(s.identity_gap <= 1e-12);
        CHECK(s.representation_gap <= 1e-12);
    }
    SUBCASE("zero signal") {
        const auto s = run_circulant_demo(6, 3, 0, 4, 1);
        CHECK(s.successes == 4);
        CHECK(s.mean_rel_error == 0.0);
    }
    SUBCASE("moderate size recovers") {
        const auto s = run_circulant_demo(32, 16, 2, 10, 1);
        CHECK(s.success_fraction() >= 0.8);
    }
    CHECK_THROWS_AS(run_circulant_demo(3, 4, 1, 1, 1), Error);
}
