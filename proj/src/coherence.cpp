#include "blockrip/coherence.hpp"

#include <algorithm>
#include <cmath>

#include "blockrip/kernels.hpp"

namespace blockrip {

double spectral_norm(const CMatrix& m) {
    if (m.size() == 0) return 0.0;
    if (m.cols() == 1) return m.col(0).norm();
    if (m.rows() == 1) return m.row(0).norm();
    Eigen::JacobiSVD<CMatrix> svd(m);
    return svd.singularValues()(0);
}

namespace {

std::pair<double, std::pair<Index, Index>> max_entry(const Orthobasis& basis) {
    const CMatrix& u = basis.entries();
    double best = -1.0;
    std::pair<Index, Index> where{0, 0};
    for (Index p = 0; p < u.rows(); ++p) {
        for (Index q = 0; q < u.cols(); ++q) {
            const double v = std::abs(u(p, q));
            if (v > best) {
                best = v;
                where = {p, q};
            }
        }
    }
    return {best, where};
}

}  // namespace

double coherence(const Orthobasis& basis) {
    return std::sqrt(static_cast<double>(basis.size())) * max_entry(basis).first;
}

CMatrix reshape_column(const CVector& alpha, const Orthobasis& basis) {
    if (alpha.size() != basis.size()) {
        throw Error("reshape_column: alpha has length " + std::to_string(alpha.size()) +
                    ", expected " + std::to_string(basis.size()));
    }
    const Index n = basis.partition().block_len();
    const Index j = basis.partition().n_blocks();
    const CVector x = basis.entries() * alpha;
    return Eigen::Map<const CMatrix>(x.data(), n, j);
}

CMatrix reshape_basis_column(const Orthobasis& basis, Index n) {
    const Index len = basis.partition().block_len();
    const Index j = basis.partition().n_blocks();
    return Eigen::Map<const CMatrix>(basis.entries().col(n).data(), len, j);
}

double block_coherence(const Orthobasis& basis) {
    const double j = static_cast<double>(basis.partition().n_blocks());
    return std::sqrt(j) * kernels::max_reshaped_column_norm(basis).value;
}

double modified_coherence(const Orthobasis& basis) {
    const double j = static_cast<double>(basis.partition().n_blocks());
    return std::min(std::sqrt(j), coherence(basis));
}

CoherenceReport coherence_report(const Orthobasis& basis) {
    CoherenceReport report;
    const auto [entry, where] = max_entry(basis);
    const double sqrt_j = std::sqrt(static_cast<double>(basis.partition().n_blocks()));
    report.mu = std::sqrt(static_cast<double>(basis.size())) * entry;
    report.argmax_entry = where;
    report.mu_tilde = std::min(sqrt_j, report.mu);
    const auto col = kernels::max_reshaped_column_norm(basis);
    report.gamma = sqrt_j * col.value;
    report.argmax_column = col.column;
    return report;
}

double required_measurements(double delta, double sparsity, double n_total, double coherence_factor) {
    if (!(delta > 0.0 && delta <= 1.0)) {
        throw Error("required_measurements: delta must lie in (0, 1], got " + std::to_string(delta));
    }
    if (!(sparsity >= 2.0)) throw Error("required_measurements: need S >= 2");
    if (!(n_total > 1.0)) throw Error("required_measurements: need n_total > 1");
    const double log_s = std::log(sparsity);
    const double log_n = std::log(n_total);
    return coherence_factor * coherence_factor * sparsity * log_s * log_s * log_n * log_n /
           (delta * delta);
}

}  // namespace blockrip
