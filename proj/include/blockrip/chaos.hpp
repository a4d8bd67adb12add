#pragma once

#include <utility>
#include <vector>

#include "blockrip/operators.hpp"

namespace blockrip {

/// Unit-norm vector with at most S nonzeros (an element of Omega_S).
struct SparseUnitVector {
    CVector coeffs;
    std::vector<Index> support;  ///< sorted
};

enum class CoeffDist { ComplexGaussian, RealGaussian, Rademacher };

/// Uniformly random support of size S, nonzeros drawn from `dist` and the
/// whole vector scaled to unit l2 norm.
SparseUnitVector sample_sparse_unit(Index n_total, Index sparsity, Rng& gen,
                                    CoeffDist dist = CoeffDist::ComplexGaussian);
SparseUnitVector sample_sparse_unit(Index n_total, Index sparsity, Seed seed,
                                    CoeffDist dist = CoeffDist::ComplexGaussian);

/// The linear map alpha -> A_D(alpha) or A_R(alpha), evaluated through the
/// closed forms of its norms rather than as a dense matrix.
///
/// A_D(alpha) = blockdiag(X_{D,1}, ..., X_{D,J}) / sqrt(M) with
/// X_{D,j} = I_M (x) x_j^*, and A_R(alpha) = I_M (x) X_R^*(alpha) / sqrt(M).
class ChaosMap {
public:
    ChaosMap(OperatorKind variant, CVector alpha, const Orthobasis& basis);

    OperatorKind variant() const { return variant_; }
    const CVector& alpha() const { return alpha_; }

    /// ||A(alpha)||_F; equals ||alpha||_2 for an orthobasis.
    double frobenius_norm() const;
    /// ||A(alpha)||_2: max_j ||U_j alpha|| / sqrt(M) (DBD) or ||X_R(alpha)||_2 / sqrt(M) (RBD).
    double spectral_norm() const;

    /// ||A(alpha) * xi||_2^2 for a coefficient vector xi of length J*M*N (DBD)
    /// or M*N (RBD), evaluated blockwise.
    double quadratic_form(const RVector& xi) const;

private:
    OperatorKind variant_;
    CVector alpha_;
    CMatrix reshaped_;  // N x J, column j = U_j alpha
    Index meas_per_block_;
};

/// ||alpha||_{A_D} = max_j ||U_j alpha||_2 / sqrt(M).
double norm_AD(const CVector& alpha, const Orthobasis& basis);

/// ||alpha||_{A_R} = ||X_R(alpha, U)||_2 / sqrt(M).
double norm_AR(const CVector& alpha, const Orthobasis& basis);

/// (||Phi_D x(alpha)||^2, sum_j ||X_{D,j}(alpha) vec(Phi_j^*)||^2).
std::pair<double, double> chaos_equivalence_dbd(const std::vector<RMatrix>& blocks,
                                                const CVector& alpha, const Orthobasis& basis);

/// (||Phi_R x(alpha)||^2, ||X_R^*(alpha) Phi^*||_F^2).
std::pair<double, double> chaos_equivalence_rbd(const RMatrix& block, const CVector& alpha,
                                                const Orthobasis& basis);

struct DQuantities {
    double d_frobenius = 0.0;  ///< sup of ||A(alpha)||_F over the samples
    double d_spectral = 0.0;   ///< sup of ||A(alpha)||_2 over the samples
    double d_spectral_bound = 0.0;  ///< mu_tilde sqrt(S/M~) (DBD) or gamma sqrt(S/M~) (RBD)
};

/// Empirical d_F / d_2 of {A(alpha) : alpha in Omega_S} from n_samples draws.
/// The basis partition supplies M.
DQuantities d_quantities(OperatorKind variant, const Orthobasis& basis, Index sparsity,
                         Index n_samples, Seed seed);

}  // namespace blockrip
