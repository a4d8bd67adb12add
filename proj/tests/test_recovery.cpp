#include <cmath>
#include <fstream>

#include "json.hpp"

#include "doctest.h"

#include "blockrip/chaos.hpp"
#include "blockrip/recovery.hpp"
#include "test_util.hpp"

using namespace blockrip;
using testing::random_cvector;

namespace {

CMatrix gaussian(Index rows, Index cols, Rng& gen) {
    return testing::random_rmatrix(rows, cols, gen).cast<cplx>() / std::sqrt(static_cast<double>(rows));
}

CVector complex_array(const nlohmann::json& re, const nlohmann::json& im) {
    CVector v(static_cast<Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Index>(i)) = cplx(re[i].get<double>(), im[i].get<double>());
    return v;
}

}  // namespace

TEST_CASE("shrink") {
    CHECK(shrink(cplx(3, 4), 1.0) == cplx(3, 4) * 0.8);
    CHECK(shrink(cplx(0.3, 0.4), 0.5) == cplx(0.0));
    CHECK(shrink(cplx(0.3, 0.4), 0.6) == cplx(0.0));
    Rng gen(1);
    for (int t = 0; t < 100; ++t) {
        const cplx z = complex_normal(gen) * 3.0;
        const double th = std::abs(complex_normal(gen));
        const cplx s = shrink(z, th);
        CHECK(std::abs(s) == doctest::Approx(std::max(std::abs(z) - th, 0.0)));
        if (s != cplx(0.0)) CHECK(std::abs(std::arg(s) - std::arg(z)) <= 1e-12);
    }
}

TEST_CASE("settings validation") {
    BpSettings s;
    CHECK_NOTHROW(s.validate());
    s.penalty = 0.0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = BpSettings{};
    s.max_iters = 0;
    CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("trivial instances") {
    Rng gen(2);
    SUBCASE("identity pins the solution") {
        const BasisPursuit bp(CMatrix::Identity(6, 6));
        const CVector y = random_cvector(6, gen);
        const auto r = bp.solve(y);
        CHECK(r.converged);
        CHECK((r.beta - y).norm() <= 1e-8 * y.norm());
    }
    SUBCASE("zero data") {
        const BasisPursuit bp(gaussian(4, 10, gen));
        const auto r = bp.solve(CVector::Zero(4));
        CHECK(r.converged);
        CHECK(r.beta.norm() == 0.0);
    }
    SUBCASE("wrong length") {
        const BasisPursuit bp(gaussian(4, 10, gen));
        CHECK_THROWS_AS(bp.solve(CVector::Zero(5)), Error);
    }
    SUBCASE("projection lands on the constraint set") {
        const CMatrix a = gaussian(5, 12, gen);
        const BasisPursuit bp(a);
        const CVector y = random_cvector(5, gen);
        CHECK((a * bp.project(random_cvector(12, gen), y) - y).norm() <= 1e-10);
    }
}

TEST_CASE("scale equivariance") {
    Rng gen(3);
    const CMatrix a = gaussian(20, 60, gen);
    const BasisPursuit bp(a);
    const auto beta = sample_sparse_unit(60, 4, gen);
    const CVector y = a * beta.coeffs;
    const auto base = bp.solve(y);
    for (double c : {1e-3, 7.5, 1e4}) {
        const auto scaled = bp.solve(y * c);
        CHECK((scaled.beta - base.beta * c).norm() <= 1e-9 * c);
    }
}

TEST_CASE("polished results agree with the plain iteration") {
    Rng gen(4);
    const CMatrix a = gaussian(30, 100, gen);
    const BasisPursuit bp(a);
    BpSettings plain;
    plain.polish = false;
    plain.tol_primal = plain.tol_dual = 1e-9;
    plain.max_iters = 50000;
    int certified = 0;
    for (int t = 0; t < 8; ++t) {
        const auto beta = sample_sparse_unit(100, 5, gen);
        const CVector y = a * beta.coeffs;
        const auto fast = bp.solve(y);
        const auto slow = bp.solve(y, plain);
        REQUIRE(slow.converged);
        if (!fast.converged) continue;
        CHECK((fast.beta - slow.beta).norm() <= 1e-4);
        if (fast.certified) {
            ++certified;
            // A certified point is an exact minimizer.
            CHECK(fast.beta.cwiseAbs().sum() <= slow.beta.cwiseAbs().sum() + 1e-9);
            CHECK((a * fast.beta - y).norm() <= 1e-10);
            CHECK((fast.beta - slow.beta).norm() <= 1e-6);
        }
    }
    CHECK(certified >= 4);
}

TEST_CASE("certify rejects a wrong support") {
    Rng gen(5);
    const CMatrix a = gaussian(15, 40, gen);
    const BasisPursuit bp(a);
    const auto beta = sample_sparse_unit(40, 3, gen);
    const CVector y = a * beta.coeffs;
    CHECK(bp.certify(beta.support, y).has_value());
    std::vector<Index> wrong = beta.support;
    wrong.front() = (wrong.front() + 1) % 40;
    if (std::find(beta.support.begin(), beta.support.end(), wrong.front()) == beta.support.end()) {
        CHECK_FALSE(bp.certify(wrong, y).has_value());
    }
    CHECK_FALSE(bp.certify({}, y).has_value());
}

TEST_CASE("matrix-free entry point") {
    Rng gen(6);
    const CMatrix a = gaussian(12, 30, gen);
    const auto beta = sample_sparse_unit(30, 2, gen);
    const CVector y = a * beta.coeffs;
    const LinearMap fwd = [&](const CVector& v) -> CVector { return a * v; };
    const LinearMap adj = [&](const CVector& w) -> CVector { return a.adjoint() * w; };
    const auto r = basis_pursuit(fwd, adj, y);
    CHECK(r.converged);
    CHECK(relative_error(beta.coeffs, r.beta) < 1e-6);

    const LinearMap bad_adj = [&](const CVector& w) -> CVector { return a.transpose() * w * cplx(0, 1); };
    CHECK_THROWS_AS(basis_pursuit(fwd, bad_adj, y), Error);
}

TEST_CASE("recovery_success") {
    CVector b(3);
    b << 1, cplx(0, 2), -1;
    CHECK(recovery_success(b, b));
    CHECK_FALSE(recovery_success(b, CVector::Zero(3)));
    CHECK(relative_error(b, CVector::Zero(3)) == doctest::Approx(1.0));
    CHECK(recovery_success(b, b * 1.005, 1e-2));
    CHECK_FALSE(recovery_success(b, b * 1.005, 1e-3));
    CHECK_THROWS_AS(recovery_success(CVector::Zero(3), b), Error);
    CHECK_THROWS_AS(recovery_success(b, CVector::Zero(2)), Error);
}

TEST_CASE("dense gaussian recovery rate") {
    Rng gen(7);
    int ok = 0;
    for (int t = 0; t < 50; ++t) {
        const CMatrix a = gaussian(30, 128, gen);
        const auto beta = sample_sparse_unit(128, 5, gen);
        const auto r = BasisPursuit(a).solve(a * beta.coeffs);
        ok += r.converged && relative_error(beta.coeffs, r.beta) < 1e-4;
    }
    CHECK(ok >= 48);
}

TEST_CASE("agreement with a conic-solver oracle") {
    std::ifstream in(BLOCKRIP_TEST_DATA_DIR "/bp_oracle.json");
    REQUIRE(in.good());
    const auto doc = nlohmann::json::parse(in);
    const auto& instances = doc.at("instances");
    REQUIRE(instances.size() == 10);
    for (const auto& inst : instances) {
        const Index rows = inst.at("rows").get<Index>(), cols = inst.at("cols").get<Index>();
        const auto& flat = inst.at("a");
        CMatrix a(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index k = 0; k < cols; ++k) a(i, k) = flat[static_cast<std::size_t>(i * cols + k)].get<double>();
        const CVector y = complex_array(inst.at("y_re"), inst.at("y_im"));
        const CVector want = complex_array(inst.at("solution_re"), inst.at("solution_im"));
        const auto got = BasisPursuit(a).solve(y);
        CHECK(got.converged);
        CHECK((got.beta - want).cwiseAbs().maxCoeff() <= 1e-4);
        CHECK(std::abs(got.beta.cwiseAbs().sum() - inst.at("objective").get<double>()) <= 1e-4);
    }
}
