#include "blockrip/kernels.hpp"

#include <algorithm>
#include <limits>

#include <omp.h>

#include "blockrip/coherence.hpp"

namespace blockrip::kernels {

namespace {

// Exact binomial; callers only use it below the enumeration cap.
long long binom(Index n, Index k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (Index i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Lexicographic rank -> combination of size s from [0, n).
std::vector<Index> unrank_combination(long long rank, Index n, Index s) {
    std::vector<Index> out(static_cast<std::size_t>(s));
    Index next = 0;
    for (Index slot = 0; slot < s; ++slot) {
        for (Index v = next;; ++v) {
            const long long count = binom(n - v - 1, s - slot - 1);
            if (rank < count) {
                out[static_cast<std::size_t>(slot)] = v;
                next = v + 1;
                break;
            }
            rank -= count;
        }
    }
    return out;
}

bool next_combination(std::vector<Index>& c, Index n) {
    const auto s = static_cast<Index>(c.size());
    Index i = s - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - s + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < s; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

double deviation(double lmin, double lmax) { return std::max(lmax - 1.0, 1.0 - lmin); }

struct Candidate {
    double delta = -1.0;
    long long order = std::numeric_limits<long long>::max();
    double lmin = 1.0;
    double lmax = 1.0;
    std::vector<Index> support;

    void offer(double d, long long o, double lo, double hi, const std::vector<Index>& t) {
        if (d > delta || (d == delta && o < order)) {
            delta = d;
            order = o;
            lmin = lo;
            lmax = hi;
            support = t;
        }
    }
    void merge(const Candidate& other) {
        if (other.order == std::numeric_limits<long long>::max()) return;
        offer(other.delta, other.order, other.lmin, other.lmax, other.support);
    }
};

SupportScan to_scan(const Candidate& best, long long scanned) {
    SupportScan out;
    out.delta = std::max(best.delta, 0.0);
    out.lambda_min = best.lmin;
    out.lambda_max = best.lmax;
    out.support = best.support;
    out.supports_scanned = scanned;
    return out;
}

}  // namespace

long long binomial_capped(Index n, Index s, long long cap) {
    if (s < 0 || s > n) return 0;
    s = std::min(s, n - s);
    // r * (n-s+i) / i stays exact; stop as soon as the cap is crossed.
    long double r = 1.0L;
    long long exact = 1;
    for (Index i = 1; i <= s; ++i) {
        r = r * static_cast<long double>(n - s + i) / static_cast<long double>(i);
        if (r > static_cast<long double>(cap)) return cap + 1;
        exact = exact * (n - s + i) / i;
    }
    return exact;
}

std::pair<double, double> principal_extremes(const CMatrix& gram, const std::vector<Index>& support) {
    const auto s = static_cast<Index>(support.size());
    CMatrix sub(s, s);
    for (Index a = 0; a < s; ++a) {
        for (Index b = 0; b < s; ++b) {
            sub(a, b) = gram(support[static_cast<std::size_t>(a)], support[static_cast<std::size_t>(b)]);
        }
    }
    if (s == 1) {
        const double v = sub(0, 0).real();
        return {v, v};
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(sub, Eigen::EigenvaluesOnly);
    return {eig.eigenvalues()(0), eig.eigenvalues()(s - 1)};
}

ColumnNormMax max_reshaped_column_norm(const Orthobasis& basis) {
    const Index n = basis.size();
    std::vector<double> norms(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
    for (Index col = 0; col < n; ++col) {
        norms[static_cast<std::size_t>(col)] = spectral_norm(reshape_basis_column(basis, col));
    }
    ColumnNormMax best{norms[0], 0};
    for (Index col = 1; col < n; ++col) {
        if (norms[static_cast<std::size_t>(col)] > best.value) best = {norms[static_cast<std::size_t>(col)], col};
    }
    return best;
}

SupportScan scan_all_supports(const CMatrix& gram, Index s) {
    const Index n = gram.rows();
    if (s < 1 || s > n) throw Error("scan_all_supports: support size out of range");
    const long long total = binom(n, s);

    Candidate best;
#pragma omp parallel
    {
        const int nt = omp_get_num_threads();
        const int tid = omp_get_thread_num();
        const long long lo = total * tid / nt;
        const long long hi = total * (tid + 1) / nt;
        Candidate local;
        if (lo < hi) {
            std::vector<Index> support = unrank_combination(lo, n, s);
            for (long long r = lo; r < hi; ++r) {
                const auto [lmin, lmax] = principal_extremes(gram, support);
                local.offer(deviation(lmin, lmax), r, lmin, lmax, support);
                next_combination(support, n);
            }
        }
#pragma omp critical(blockrip_scan_merge)
        best.merge(local);
    }
    return to_scan(best, total);
}

SupportScan scan_supports(const CMatrix& gram, const std::vector<std::vector<Index>>& supports) {
    const auto total = static_cast<long long>(supports.size());
    if (total == 0) throw Error("scan_supports: empty support list");
    Candidate best;
#pragma omp parallel
    {
        Candidate local;
#pragma omp for schedule(static)
        for (long long r = 0; r < total; ++r) {
            const auto& t = supports[static_cast<std::size_t>(r)];
            const auto [lmin, lmax] = principal_extremes(gram, t);
            local.offer(deviation(lmin, lmax), r, lmin, lmax, t);
        }
#pragma omp critical(blockrip_scan_merge)
        best.merge(local);
    }
    return to_scan(best, total);
}

namespace serial {

ColumnNormMax max_reshaped_column_norm(const Orthobasis& basis) {
    ColumnNormMax best{-1.0, 0};
    for (Index col = 0; col < basis.size(); ++col) {
        const double v = spectral_norm(reshape_basis_column(basis, col));
        if (v > best.value) best = {v, col};
    }
    return best;
}

SupportScan scan_all_supports(const CMatrix& effective, Index s) {
    const Index n = effective.cols();
    if (s < 1 || s > n) throw Error("scan_all_supports: support size out of range");
    std::vector<Index> support(static_cast<std::size_t>(s));
    for (Index i = 0; i < s; ++i) support[static_cast<std::size_t>(i)] = i;
    Candidate best;
    long long r = 0;
    do {
        CMatrix cols(effective.rows(), s);
        for (Index i = 0; i < s; ++i) cols.col(i) = effective.col(support[static_cast<std::size_t>(i)]);
        const CMatrix g = cols.adjoint() * cols;
        Eigen::SelfAdjointEigenSolver<CMatrix> eig(g, Eigen::EigenvaluesOnly);
        const double lmin = eig.eigenvalues()(0);
        const double lmax = eig.eigenvalues()(s - 1);
        best.offer(deviation(lmin, lmax), r, lmin, lmax, support);
        ++r;
    } while (next_combination(support, n));
    return to_scan(best, r);
}

}  // namespace serial

}  // namespace blockrip::kernels
