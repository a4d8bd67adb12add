#pragma once

// Hot loops shared by the coherence, RIC and experiment code. The default
// entry points are OpenMP-parallel; the kernels::serial namespace holds
// straightforward single-threaded references that the tests compare against.

#include <vector>

#include "blockrip/bases.hpp"

namespace blockrip::kernels {

struct ColumnNormMax {
    double value = 0.0;
    Index column = 0;
};

/// max_n ||X_R(e_n, U)||_2 with the lowest maximizing column.
ColumnNormMax max_reshaped_column_norm(const Orthobasis& basis);

struct SupportScan {
    double delta = 0.0;
    double lambda_min = 1.0;
    double lambda_max = 1.0;
    std::vector<Index> support;
    long long supports_scanned = 0;
};

/// Enumerates every size-s support of [0, n) in lexicographic order and
/// returns the one maximizing max(lambda_max - 1, 1 - lambda_min) of the
/// principal submatrix gram(T, T). Ties resolve to the earliest support.
SupportScan scan_all_supports(const CMatrix& gram, Index s);

/// Same reduction over an explicit list of supports (each sorted, size s).
/// Ties resolve to the earliest entry of the list.
SupportScan scan_supports(const CMatrix& gram, const std::vector<std::vector<Index>>& supports);

/// Extreme eigenvalues of the principal submatrix gram(T, T).
std::pair<double, double> principal_extremes(const CMatrix& gram, const std::vector<Index>& support);

/// Number of size-s subsets of an n-set, saturating at `cap + 1`.
long long binomial_capped(Index n, Index s, long long cap);

namespace serial {

ColumnNormMax max_reshaped_column_norm(const Orthobasis& basis);

/// Reference enumeration: forms (A U_T)^*(A U_T) from the columns of
/// `effective` = A U for every support instead of slicing a cached Gram.
SupportScan scan_all_supports(const CMatrix& effective, Index s);

}  // namespace serial

}  // namespace blockrip::kernels
