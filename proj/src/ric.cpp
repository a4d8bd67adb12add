#include "blockrip/ric.hpp"

#include <algorithm>
#include <numeric>

#include "blockrip/kernels.hpp"

namespace blockrip {

namespace {

CMatrix effective_matrix(const CMatrix& a, const Orthobasis& basis) {
    if (a.cols() != basis.size()) {
        throw Error("RIC: operator has " + std::to_string(a.cols()) + " columns, basis has size " +
                    std::to_string(basis.size()));
    }
    return a * basis.entries();
}

void check_support(const std::vector<Index>& support, Index n) {
    if (support.empty()) throw Error("support_extremes: empty support");
    for (Index i : support) {
        if (i < 0 || i >= n) throw Error("support_extremes: index out of range");
    }
    std::vector<Index> sorted = support;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error("support_extremes: repeated index");
    }
}

std::pair<double, double> extremes_from_effective(const CMatrix& eff, const std::vector<Index>& support) {
    check_support(support, eff.cols());
    CMatrix cols(eff.rows(), static_cast<Index>(support.size()));
    for (std::size_t i = 0; i < support.size(); ++i) cols.col(static_cast<Index>(i)) = eff.col(support[i]);
    const CMatrix gram = cols.adjoint() * cols;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
    return {eig.eigenvalues()(0), eig.eigenvalues()(gram.rows() - 1)};
}

RicEstimate exact_from_effective(const CMatrix& eff, Index sparsity, long long cap) {
    const Index n = eff.cols();
    if (sparsity < 1 || sparsity > n) {
        throw Error("exact_ric: S = " + std::to_string(sparsity) + " outside [1, " + std::to_string(n) + "]");
    }
    const long long count = kernels::binomial_capped(n, sparsity, cap);
    if (count > cap) {
        throw Error("exact_ric: C(" + std::to_string(n) + ", " + std::to_string(sparsity) +
                    ") exceeds the enumeration cap of " + std::to_string(cap) +
                    "; use monte_carlo_ric for a lower bound");
    }
    const CMatrix gram = eff.adjoint() * eff;
    const auto scan = kernels::scan_all_supports(gram, sparsity);
    return {scan.delta, scan.support, scan.lambda_min, scan.lambda_max, true, scan.supports_scanned};
}

RicEstimate monte_carlo_from_effective(const CMatrix& eff, Index sparsity, Index n_trials, Seed seed) {
    const Index n = eff.cols();
    if (sparsity < 1 || sparsity > n) throw Error("monte_carlo_ric: S out of range");
    if (n_trials < 1) throw Error("monte_carlo_ric: need at least one trial");
    std::vector<std::vector<Index>> supports(static_cast<std::size_t>(n_trials));
    for (Index t = 0; t < n_trials; ++t) {
        Rng gen = make_stream(seed, {stream::kTrial, static_cast<std::uint64_t>(t)});
        std::vector<Index> pool(static_cast<std::size_t>(n));
        std::iota(pool.begin(), pool.end(), Index{0});
        for (Index i = 0; i < sparsity; ++i) {
            std::uniform_int_distribution<Index> pick(i, n - 1);
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(gen))]);
        }
        auto& s = supports[static_cast<std::size_t>(t)];
        s.assign(pool.begin(), pool.begin() + sparsity);
        std::sort(s.begin(), s.end());
    }
    const CMatrix gram = eff.adjoint() * eff;
    const auto scan = kernels::scan_supports(gram, supports);
    return {scan.delta, scan.support, scan.lambda_min, scan.lambda_max, false, scan.supports_scanned};
}

}  // namespace

std::pair<double, double> support_extremes(const CMatrix& a, const Orthobasis& basis,
                                           const std::vector<Index>& support) {
    return extremes_from_effective(effective_matrix(a, basis), support);
}

std::pair<double, double> support_extremes(const BlockOperator& a, const Orthobasis& basis,
                                           const std::vector<Index>& support) {
    return extremes_from_effective(a.times_basis(basis), support);
}

RicEstimate exact_ric(const CMatrix& a, const Orthobasis& basis, Index sparsity, long long cap) {
    return exact_from_effective(effective_matrix(a, basis), sparsity, cap);
}

RicEstimate exact_ric(const BlockOperator& a, const Orthobasis& basis, Index sparsity, long long cap) {
    return exact_from_effective(a.times_basis(basis), sparsity, cap);
}

RicEstimate monte_carlo_ric(const CMatrix& a, const Orthobasis& basis, Index sparsity, Index n_trials,
                            Seed seed) {
    return monte_carlo_from_effective(effective_matrix(a, basis), sparsity, n_trials, seed);
}

RicEstimate monte_carlo_ric(const BlockOperator& a, const Orthobasis& basis, Index sparsity,
                            Index n_trials, Seed seed) {
    return monte_carlo_from_effective(a.times_basis(basis), sparsity, n_trials, seed);
}

}  // namespace blockrip
