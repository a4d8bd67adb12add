#pragma once

#include <string>
#include <utility>
#include <vector>

#include "blockrip/rng.hpp"
#include "blockrip/types.hpp"

namespace blockrip {

enum class BasisLabel { Canonical, Fourier, Generic, Circulant, Custom };

std::string to_string(BasisLabel label);
BasisLabel basis_label_from_string(const std::string& name);

/// A unitary n_total x n_total matrix together with its row-block partition
/// U = [U_1; ...; U_J], where U_j holds rows j*N ... (j+1)*N - 1.
class Orthobasis {
public:
    /// Wraps an arbitrary matrix; throws unless it is square, matches the
    /// partition and satisfies ||U*U - I||_max <= tol.
    static Orthobasis from_matrix(CMatrix entries, BlockPartition partition,
                                  BasisLabel label = BasisLabel::Custom, double tol = 1e-10);

    const CMatrix& entries() const { return entries_; }
    const BlockPartition& partition() const { return partition_; }
    BasisLabel label() const { return label_; }
    Index size() const { return entries_.rows(); }

    /// Row block U_j (N x n_total), 0-based j.
    auto block(Index j) const {
        return entries_.middleRows(j * partition_.block_len(), partition_.block_len());
    }

    /// ||U*U - I||_max.
    double orthonormality_defect() const;

    /// Same matrix viewed with a different number of measurements per block.
    Orthobasis with_partition(const BlockPartition& partition) const;

private:
    friend Orthobasis make_basis_unchecked(CMatrix, BlockPartition, BasisLabel);
    Orthobasis(CMatrix entries, BlockPartition partition, BasisLabel label)
        : entries_(std::move(entries)), partition_(partition), label_(label) {}

    CMatrix entries_;
    BlockPartition partition_;
    BasisLabel label_;
};

Orthobasis canonical_basis(const BlockPartition& partition);

/// Unitary DFT: U(p, q) = exp(-2 pi i p q / n) / sqrt(n).
Orthobasis fourier_basis(const BlockPartition& partition);

/// Haar-distributed real orthogonal matrix (Gaussian QR with the sign of
/// diag(R) folded into Q), stored with zero imaginary parts.
Orthobasis generic_basis(const BlockPartition& partition, Seed seed);
Orthobasis generic_basis(const BlockPartition& partition, Rng& gen);

/// The J nonzeros (row, value) of column `col` of the circulant basis T,
/// one per row block.
std::vector<std::pair<Index, cplx>> circulant_basis_nonzeros(Index P, Index J, Index col);

/// Column `col` of the circulant basis T as a dense vector of length P*J.
CVector circulant_basis_column(Index P, Index J, Index col);

/// The PJ x PJ basis T obtained from kron(F_J, I_P) by shifting the rows of
/// its j-th P x PJ row block (0-based) upward j times. Partition N = P, J blocks.
Orthobasis circulant_basis(Index P, Index J);

/// Rows reordered so that row i of the result is row perm[i] of U.
Orthobasis permute_basis(const Orthobasis& basis, const std::vector<Index>& row_perm);

/// Columns reordered so that column i of the result is column perm[i] of U.
Orthobasis permute_basis_columns(const Orthobasis& basis, const std::vector<Index>& col_perm);

/// Throws unless perm is a bijection on [0, n).
void check_permutation(const std::vector<Index>& perm, Index n);

}  // namespace blockrip
