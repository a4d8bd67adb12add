#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "blockrip/types.hpp"

namespace blockrip {

struct BpSettings {
    double penalty = 1.0;     ///< augmented-Lagrangian weight rho
    double tol_primal = 1e-6;
    double tol_dual = 1e-6;
    int max_iters = 5000;
    /// Rebalance rho whenever the primal and dual residuals drift more than
    /// a factor of 10 apart.
    bool adaptive_penalty = true;
    /// Periodically solve least squares on the current support and stop as
    /// soon as a dual certificate proves that point optimal.
    bool polish = true;
    int polish_every = 10;

    void validate() const;
};

struct BpResult {
    CVector beta;
    int iters = 0;
    bool converged = false;
    bool certified = false;  ///< optimality proven by a dual certificate
    double primal_residual = 0.0;  ///< ||A beta - y|| / ||y||
};

struct RecoveryOutcome {
    CVector beta_hat;
    double rel_error = 0.0;
    bool success = false;
    int iters = 0;
};

/// Entrywise complex soft threshold: z * max(1 - t / |z|, 0).
cplx shrink(cplx z, double t);
void shrink_inplace(CVector& v, double t);

/// Basis pursuit min ||beta||_1 s.t. A beta = y over complex beta, by ADMM on
/// the split beta = z. The projection onto {A beta = y} uses a factorization
/// of A A^* computed once per instance, so one instance serves many right-hand
/// sides. solve() is const and may be called concurrently.
class BasisPursuit {
public:
    explicit BasisPursuit(CMatrix a);

    const CMatrix& matrix() const { return a_; }
    BpResult solve(const CVector& y, const BpSettings& settings = {}) const;

    /// Least-squares projection of v onto {beta : A beta = y}.
    CVector project(const CVector& v, const CVector& y) const;

    /// Least squares on `support`; returns the solution only when it is
    /// feasible and some lambda with A_T^* lambda = sign(beta_T) satisfies
    /// |A^* lambda| <= 1 off the support, which proves l1 optimality.
    /// Candidates: the minimum-norm lambda, and (if `subgradient` is given)
    /// its projection onto range(A^*) corrected on the support.
    std::optional<CVector> certify(const std::vector<Index>& support, const CVector& y,
                                   const CVector& subgradient = {}) const;

private:
    CMatrix a_;
    CMatrix pinv_;  // A^* (A A^*)^+
};

using LinearMap = std::function<CVector(const CVector&)>;

/// Matrix-free entry point. The maps are sampled into a dense matrix and
/// checked for adjointness on random pairs (relative error 1e-8); a mismatch
/// throws. Non-convergence is reported through BpResult::converged.
BpResult basis_pursuit(const LinearMap& measure, const LinearMap& adjoint, const CVector& y,
                       const BpSettings& settings = {});

/// ||beta_hat - beta|| / ||beta|| < threshold. Throws for beta = 0.
bool recovery_success(const CVector& beta, const CVector& beta_hat, double threshold = 1e-2);
double relative_error(const CVector& beta, const CVector& beta_hat);

}  // namespace blockrip
