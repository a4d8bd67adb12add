#include "blockrip/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "blockrip/coherence.hpp"

namespace blockrip {

SparseUnitVector sample_sparse_unit(Index n_total, Index sparsity, Rng& gen, CoeffDist dist) {
    if (sparsity < 0 || sparsity > n_total) {
        throw Error("sample_sparse_unit: S = " + std::to_string(sparsity) + " outside [0, " +
                    std::to_string(n_total) + "]");
    }
    // Partial Fisher-Yates: the first S slots form a uniform random S-subset.
    std::vector<Index> pool(static_cast<std::size_t>(n_total));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index i = 0; i < sparsity; ++i) {
        std::uniform_int_distribution<Index> pick(i, n_total - 1);
        std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(pick(gen))]);
    }
    SparseUnitVector out;
    out.support.assign(pool.begin(), pool.begin() + sparsity);
    std::sort(out.support.begin(), out.support.end());
    out.coeffs = CVector::Zero(n_total);
    if (sparsity == 0) return out;

    std::normal_distribution<double> normal(0.0, 1.0);
    std::bernoulli_distribution coin(0.5);
    for (Index idx : out.support) {
        cplx v;
        switch (dist) {
            case CoeffDist::ComplexGaussian: v = complex_normal(gen); break;
            case CoeffDist::RealGaussian: v = normal(gen); break;
            case CoeffDist::Rademacher: v = coin(gen) ? 1.0 : -1.0; break;
        }
        out.coeffs(idx) = v;
    }
    const double norm = out.coeffs.norm();
    if (norm == 0.0) {
        // Measure-zero event for continuous draws; keep the unit-norm contract.
        out.coeffs(out.support.front()) = 1.0;
    } else {
        out.coeffs /= norm;
    }
    return out;
}

SparseUnitVector sample_sparse_unit(Index n_total, Index sparsity, Seed seed, CoeffDist dist) {
    Rng gen = make_stream(seed, {stream::kSignal});
    return sample_sparse_unit(n_total, sparsity, gen, dist);
}

ChaosMap::ChaosMap(OperatorKind variant, CVector alpha, const Orthobasis& basis)
    : variant_(variant),
      alpha_(std::move(alpha)),
      reshaped_(reshape_column(alpha_, basis)),
      meas_per_block_(basis.partition().meas_per_block()) {}

double ChaosMap::frobenius_norm() const {
    // Each x_j^* (or X_R^*) appears M times, scaled by 1/sqrt(M).
    return reshaped_.norm();
}

double ChaosMap::spectral_norm() const {
    const double inv_sqrt_m = 1.0 / std::sqrt(static_cast<double>(meas_per_block_));
    if (variant_ == OperatorKind::DBD) {
        return reshaped_.colwise().norm().maxCoeff() * inv_sqrt_m;
    }
    return blockrip::spectral_norm(reshaped_) * inv_sqrt_m;
}

double ChaosMap::quadratic_form(const RVector& xi) const {
    const Index n = reshaped_.rows();
    const Index j_blocks = reshaped_.cols();
    const Index m = meas_per_block_;
    double total = 0.0;
    if (variant_ == OperatorKind::DBD) {
        if (xi.size() != j_blocks * m * n) throw Error("ChaosMap::quadratic_form: length mismatch");
        for (Index j = 0; j < j_blocks; ++j) {
            for (Index r = 0; r < m; ++r) {
                const auto seg = xi.segment((j * m + r) * n, n);
                total += std::norm(reshaped_.col(j).dot(seg.cast<cplx>()));
            }
        }
    } else {
        if (xi.size() != m * n) throw Error("ChaosMap::quadratic_form: length mismatch");
        for (Index r = 0; r < m; ++r) {
            const CVector seg = xi.segment(r * n, n).cast<cplx>();
            total += (reshaped_.adjoint() * seg).squaredNorm();
        }
    }
    return total / static_cast<double>(m);
}

double norm_AD(const CVector& alpha, const Orthobasis& basis) {
    return ChaosMap(OperatorKind::DBD, alpha, basis).spectral_norm();
}

double norm_AR(const CVector& alpha, const Orthobasis& basis) {
    return ChaosMap(OperatorKind::RBD, alpha, basis).spectral_norm();
}

std::pair<double, double> chaos_equivalence_dbd(const std::vector<RMatrix>& blocks,
                                                const CVector& alpha, const Orthobasis& basis) {
    const BlockOperator op = build_dbd(blocks);
    if (op.partition().n_total() != basis.size() ||
        op.partition().block_len() != basis.partition().block_len()) {
        throw Error("chaos_equivalence_dbd: blocks do not match the basis partition");
    }
    if (alpha.size() != basis.size()) throw Error("chaos_equivalence_dbd: alpha length mismatch");
    const double direct = op.apply(basis.entries() * alpha).squaredNorm();

    // X_{D,j}(alpha) vec(Phi_j^*): row r of X_{D,j} holds x_j^* in columns
    // r*N ... r*N + N - 1, and vec stacks the columns of Phi_j^* (= rows of Phi_j).
    const Index n = op.partition().block_len();
    const Index m = op.partition().meas_per_block();
    const CMatrix reshaped = reshape_column(alpha, basis);
    double chaos = 0.0;
    for (Index j = 0; j < op.partition().n_blocks(); ++j) {
        const RMatrix& phi = blocks[static_cast<std::size_t>(j)];
        std::vector<cplx> vec_phi_adj(static_cast<std::size_t>(m * n));
        for (Index col = 0; col < m; ++col)
            for (Index row = 0; row < n; ++row)
                vec_phi_adj[static_cast<std::size_t>(col * n + row)] = phi(col, row);
        for (Index r = 0; r < m; ++r) {
            cplx acc = 0.0;
            for (Index k = 0; k < n; ++k) {
                acc += std::conj(reshaped(k, j)) * vec_phi_adj[static_cast<std::size_t>(r * n + k)];
            }
            chaos += std::norm(acc);
        }
    }
    return {direct, chaos};
}

std::pair<double, double> chaos_equivalence_rbd(const RMatrix& block, const CVector& alpha,
                                                const Orthobasis& basis) {
    if (block.cols() != basis.partition().block_len()) {
        throw Error("chaos_equivalence_rbd: block width does not match the basis partition");
    }
    if (alpha.size() != basis.size()) throw Error("chaos_equivalence_rbd: alpha length mismatch");
    const BlockOperator op = build_rbd(block, basis.partition().n_blocks());
    const double direct = op.apply(basis.entries() * alpha).squaredNorm();
    const CMatrix reshaped = reshape_column(alpha, basis);
    const double chaos = (reshaped.adjoint() * block.transpose().cast<cplx>()).squaredNorm();
    return {direct, chaos};
}

DQuantities d_quantities(OperatorKind variant, const Orthobasis& basis, Index sparsity,
                         Index n_samples, Seed seed) {
    if (sparsity < 1 || sparsity > basis.size()) throw Error("d_quantities: S out of range");
    DQuantities out;
    const double m_total = static_cast<double>(basis.partition().meas_total());
    const double factor = variant == OperatorKind::DBD ? modified_coherence(basis) : block_coherence(basis);
    out.d_spectral_bound = factor * std::sqrt(static_cast<double>(sparsity) / m_total);
    for (Index i = 0; i < n_samples; ++i) {
        Rng gen = make_stream(seed, {stream::kSignal, static_cast<std::uint64_t>(i)});
        const SparseUnitVector alpha = sample_sparse_unit(basis.size(), sparsity, gen);
        const ChaosMap map(variant, alpha.coeffs, basis);
        out.d_frobenius = std::max(out.d_frobenius, map.frobenius_norm());
        out.d_spectral = std::max(out.d_spectral, map.spectral_norm());
    }
    return out;
}

}  // namespace blockrip
