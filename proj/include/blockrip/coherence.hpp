#pragma once

#include <utility>

#include "blockrip/bases.hpp"

namespace blockrip {

struct CoherenceReport {
    double mu = 0.0;        ///< sqrt(n_total) * max |U(p,q)|
    double gamma = 0.0;     ///< sqrt(J) * max_n ||X_R(e_n, U)||_2
    double mu_tilde = 0.0;  ///< min(sqrt(J), mu)
    std::pair<Index, Index> argmax_entry{0, 0};  ///< (row, col) of the largest entry
    Index argmax_column = 0;                     ///< column achieving gamma
};

/// sqrt(n_total) times the largest entry magnitude of U. Ties resolve to the
/// lowest (row, col) in row-major order.
double coherence(const Orthobasis& basis);

/// N x J matrix whose column j is U_j * alpha.
CMatrix reshape_column(const CVector& alpha, const Orthobasis& basis);

/// Reshape of the n-th column of U, i.e. X_R(e_n, U).
CMatrix reshape_basis_column(const Orthobasis& basis, Index n);

double block_coherence(const Orthobasis& basis);

/// min(sqrt(J), mu(U)).
double modified_coherence(const Orthobasis& basis);

CoherenceReport coherence_report(const Orthobasis& basis);

/// delta^-2 * factor^2 * S * log^2(S) * log^2(n_total), natural logs, with the
/// unnamed absolute constant set to 1. Pass mu_tilde for DBD operators and
/// gamma for RBD operators. The result is a comparable index across bases,
/// not a calibrated row count.
double required_measurements(double delta, double sparsity, double n_total, double coherence_factor);

/// Largest singular value of a dense matrix.
double spectral_norm(const CMatrix& m);

}  // namespace blockrip
