#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "blockrip/bases.hpp"
#include "blockrip/operators.hpp"

namespace blockrip::testing {

inline CVector random_cvector(Index n, Rng& gen) {
    CVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = complex_normal(gen);
    return v;
}

inline RMatrix random_rmatrix(Index rows, Index cols, Rng& gen) {
    std::normal_distribution<double> normal;
    RMatrix m(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) m(i, j) = normal(gen);
    return m;
}

inline std::vector<Index> random_permutation(Index n, Rng& gen) {
    std::vector<Index> p(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    std::shuffle(p.begin(), p.end(), gen);
    return p;
}

/// Block-diagonal matrix assembled entry by entry from a block list.
inline RMatrix assemble_block_diagonal(const std::vector<RMatrix>& blocks) {
    Index rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    RMatrix out = RMatrix::Zero(rows, cols);
    Index r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (Index i = 0; i < b.rows(); ++i)
            for (Index j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

inline double max_abs(const CMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double rel_gap(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

/// A random orthobasis of mixed construction: Haar, Fourier or canonical,
/// optionally with permuted rows and columns and random column phases.
inline Orthobasis random_mixed_basis(const BlockPartition& partition, Rng& gen) {
    std::uniform_int_distribution<int> pick(0, 3);
    const int kind = pick(gen);
    Orthobasis u = kind == 0   ? canonical_basis(partition)
                   : kind == 1 ? fourier_basis(partition)
                               : generic_basis(partition, gen);
    if (kind == 3) {
        u = permute_basis(u, random_permutation(u.size(), gen));
        u = permute_basis_columns(u, random_permutation(u.size(), gen));
    }
    return u;
}

}  // namespace blockrip::testing
