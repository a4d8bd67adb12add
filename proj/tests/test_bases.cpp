#include <cmath>
#include <numbers>

#include "doctest.h"

#include "blockrip/bases.hpp"
#include "blockrip/coherence.hpp"
#include "test_util.hpp"

using namespace blockrip;
using blockrip::testing::random_permutation;

TEST_CASE("partition bookkeeping") {
    const BlockPartition p(16, 4, 3);
    CHECK(p.n_total() == 64);
    CHECK(p.meas_total() == 12);
    CHECK_THROWS_AS(BlockPartition(0, 4), Error);
    CHECK_THROWS_AS(BlockPartition(4, 0), Error);
    CHECK_THROWS_AS(BlockPartition(4, 2, 0), Error);
}

TEST_CASE("canonical basis is the identity") {
    const auto u = canonical_basis(BlockPartition(2, 2));
    CHECK(u.entries().isApprox(CMatrix::Identity(4, 4)));
    CHECK(u.label() == BasisLabel::Canonical);
    CHECK(coherence(canonical_basis(BlockPartition(4, 4))) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(block_coherence(canonical_basis(BlockPartition(4, 4))) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fourier basis") {
    SUBCASE("two-point DFT") {
        const auto f = fourier_basis(BlockPartition(1, 2));
        const double h = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(f.entries()(0, 0) - cplx(h, 0)) < 1e-15);
        CHECK(std::abs(f.entries()(0, 1) - cplx(h, 0)) < 1e-15);
        CHECK(std::abs(f.entries()(1, 0) - cplx(h, 0)) < 1e-15);
        CHECK(std::abs(f.entries()(1, 1) - cplx(-h, 0)) < 1e-15);
    }
    SUBCASE("flat magnitudes, first column constant") {
        const auto f = fourier_basis(BlockPartition(8, 8));
        const double expected = 1.0 / 8.0;
        CHECK((f.entries().cwiseAbs().array() - expected).abs().maxCoeff() <= 1e-12);
        for (Index p = 0; p < f.size(); ++p) CHECK(std::abs(f.entries()(p, 0) - cplx(expected, 0)) < 1e-15);
        CHECK(f.orthonormality_defect() <= 1e-10);
    }
    SUBCASE("coherence values") {
        CHECK(std::abs(coherence(fourier_basis(BlockPartition(8, 8))) - 1.0) <= 1e-10);
        CHECK(std::abs(block_coherence(fourier_basis(BlockPartition(8, 8))) - std::sqrt(8.0)) <= 1e-10);
    }
}

TEST_CASE("generic basis: orthogonal, real, deterministic") {
    const BlockPartition p(8, 4);
    const auto a = generic_basis(p, Seed{17});
    const auto b = generic_basis(p, Seed{17});
    const auto c = generic_basis(p, Seed{18});
    CHECK(a.orthonormality_defect() <= 1e-10);
    CHECK(a.entries().imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.entries() == b.entries());
    CHECK(a.entries() != c.entries());
    CHECK(a.label() == BasisLabel::Generic);
    for (Index j = 0; j < a.size(); ++j) CHECK(std::abs(a.entries().col(j).norm() - 1.0) <= 1e-10);
}

TEST_CASE("generic basis sign convention gives Haar first-column statistics") {
    // Under Haar measure E[W(0,0)] = 0; plain Householder QR without the sign
    // fix biases the diagonal of Q negative.
    const BlockPartition p(3, 1);
    double sum = 0.0;
    const int draws = 4000;
    for (int d = 0; d < draws; ++d) sum += generic_basis(p, Seed(d)).entries()(0, 0).real();
    const double mean = sum / draws;
    // Var[W(0,0)] = 1/3, so the standard error is about 0.0091.
    CHECK(std::abs(mean) < 4.0 * std::sqrt(1.0 / 3.0 / draws));
}

TEST_CASE("circulant basis") {
    SUBCASE("P = J = 5 matches the shifted Kronecker construction") {
        const Index P = 5, J = 5;
        const auto t = circulant_basis(P, J);
        const auto f = fourier_basis(BlockPartition(J, 1));
        // T' = kron(F_J, I_P); block j of T is block j of T' shifted up j times.
        CMatrix t_prime = CMatrix::Zero(P * J, P * J);
        for (Index a = 0; a < J; ++a)
            for (Index b = 0; b < J; ++b)
                for (Index i = 0; i < P; ++i) t_prime(a * P + i, b * P + i) = f.entries()(a, b);
        CMatrix expected(P * J, P * J);
        for (Index j = 0; j < J; ++j)
            for (Index i = 0; i < P; ++i) expected.row(j * P + i) = t_prime.row(j * P + (i + j) % P);
        CHECK(blockrip::testing::max_abs(t.entries() - expected) <= 1e-15);
    }
    SUBCASE("unitary with unit block-coherence") {
        for (auto [P, J] : {std::pair<Index, Index>{4, 2}, {6, 3}, {7, 7}, {9, 1}}) {
            const auto t = circulant_basis(P, J);
            CHECK(t.orthonormality_defect() <= 1e-10);
            CHECK(std::abs(block_coherence(t) - 1.0) <= 1e-10);
        }
    }
    SUBCASE("each reshaped column is a scaled partial permutation") {
        const Index P = 6, J = 3;
        const auto t = circulant_basis(P, J);
        const double mag = 1.0 / std::sqrt(static_cast<double>(J));
        for (Index n = 0; n < t.size(); ++n) {
            const CMatrix x = reshape_basis_column(t, n);
            REQUIRE(x.rows() == P);
            REQUIRE(x.cols() == J);
            for (Index c = 0; c < J; ++c) {
                int nnz = 0;
                for (Index r = 0; r < P; ++r) {
                    if (std::abs(x(r, c)) > 1e-14) {
                        ++nnz;
                        CHECK(std::abs(std::abs(x(r, c)) - mag) <= 1e-12);
                    }
                }
                CHECK(nnz == 1);
            }
            for (Index r = 0; r < P; ++r) {
                int nnz = 0;
                for (Index c = 0; c < J; ++c) nnz += std::abs(x(r, c)) > 1e-14;
                CHECK(nnz <= 1);
            }
        }
    }
    SUBCASE("rejects J > P") {
        CHECK_THROWS_AS(circulant_basis(3, 4), Error);
        CHECK_THROWS_AS(circulant_basis(3, 0), Error);
    }
}

TEST_CASE("permute_basis") {
    Rng gen(3);
    const auto f = fourier_basis(BlockPartition(4, 2));
    std::vector<Index> identity(8);
    for (Index i = 0; i < 8; ++i) identity[static_cast<std::size_t>(i)] = i;
    CHECK(permute_basis(f, identity).entries() == f.entries());

    std::vector<Index> reversal(identity.rbegin(), identity.rend());
    CHECK(std::abs(coherence(permute_basis(f, reversal)) - 1.0) <= 1e-12);

    const auto c = canonical_basis(BlockPartition(4, 4));
    const auto pc = permute_basis(c, random_permutation(16, gen));
    CHECK(coherence(pc) == doctest::Approx(4.0));
    CHECK(pc.orthonormality_defect() == 0.0);

    CHECK_THROWS_AS(permute_basis(f, {0, 1, 2}), Error);
    CHECK_THROWS_AS(permute_basis(f, {0, 0, 1, 2, 3, 4, 5, 6}), Error);
    CHECK_THROWS_AS(permute_basis(f, {0, 1, 2, 3, 4, 5, 6, 8}), Error);
}

TEST_CASE("from_matrix validates") {
    const BlockPartition p(2, 1);
    CMatrix good(2, 2);
    good << cplx(0, 1), 0, 0, 1;
    CHECK_NOTHROW(Orthobasis::from_matrix(good, p));
    CMatrix bad = good * 1.01;
    CHECK_THROWS_AS(Orthobasis::from_matrix(bad, p), Error);
    CHECK_THROWS_AS(Orthobasis::from_matrix(CMatrix::Identity(3, 3), p), Error);
}
