#pragma once

#include <vector>

#include "blockrip/operators.hpp"

namespace blockrip {

struct RicEstimate {
    double delta = 0.0;
    std::vector<Index> worst_support;
    double lambda_min = 1.0;
    double lambda_max = 1.0;
    bool exact = false;
    long long supports_examined = 0;
};

inline constexpr long long kDefaultEnumerationCap = 1'000'000;

/// Extreme eigenvalues (lambda_min, lambda_max) of (A U_T)^*(A U_T).
std::pair<double, double> support_extremes(const CMatrix& a, const Orthobasis& basis,
                                           const std::vector<Index>& support);
std::pair<double, double> support_extremes(const BlockOperator& a, const Orthobasis& basis,
                                           const std::vector<Index>& support);

/// delta_S of A with respect to U by enumerating every size-S support.
/// Throws when C(n_total, S) exceeds the cap; use monte_carlo_ric instead.
RicEstimate exact_ric(const CMatrix& a, const Orthobasis& basis, Index sparsity,
                      long long enumeration_cap = kDefaultEnumerationCap);
RicEstimate exact_ric(const BlockOperator& a, const Orthobasis& basis, Index sparsity,
                      long long enumeration_cap = kDefaultEnumerationCap);

/// Lower bound on delta_S from n_trials uniformly drawn supports. Trial t
/// uses stream (seed, t), so a run with more trials examines a superset of
/// the supports of a shorter run with the same seed.
RicEstimate monte_carlo_ric(const CMatrix& a, const Orthobasis& basis, Index sparsity,
                            Index n_trials, Seed seed);
RicEstimate monte_carlo_ric(const BlockOperator& a, const Orthobasis& basis, Index sparsity,
                            Index n_trials, Seed seed);

}  // namespace blockrip
