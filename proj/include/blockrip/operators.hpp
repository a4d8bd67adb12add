#pragma once

#include <vector>

#include "blockrip/bases.hpp"

namespace blockrip {

enum class EnsembleKind { Gaussian, Rademacher };
enum class OperatorKind { DBD, RBD };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

/// i.i.d. mean-zero entries with standard deviation `scale` (1/sqrt(rows)
/// unless given explicitly).
struct Ensemble {
    EnsembleKind kind = EnsembleKind::Gaussian;
    Index rows = 1;
    Index cols = 1;
    double scale = -1.0;

    double entry_std() const;
};

RMatrix sample_block(const Ensemble& ensemble, Seed seed);
RMatrix sample_block(const Ensemble& ensemble, Rng& gen);

/// Block-diagonal measurement operator held as its diagonal blocks.
/// DBD stores J independent blocks; RBD stores one block reused for every j.
/// Real blocks act on complex signals through the real and imaginary parts.
class BlockOperator {
public:
    OperatorKind kind() const { return kind_; }
    const BlockPartition& partition() const { return partition_; }
    Index n_stored_blocks() const { return static_cast<Index>(blocks_.size()); }

    /// Block acting on signal chunk j (the shared block for RBD).
    const RMatrix& block(Index j) const {
        return kind_ == OperatorKind::RBD ? blocks_.front() : blocks_[static_cast<std::size_t>(j)];
    }

    CVector apply(const CVector& x) const;
    CVector apply_adjoint(const CVector& y) const;

    /// A * U as a dense meas_total x n_total matrix.
    CMatrix times_basis(const Orthobasis& basis) const;

    /// Dense meas_total x n_total assembly; for tests and small problems.
    RMatrix dense() const;

private:
    friend BlockOperator build_dbd(std::vector<RMatrix> blocks);
    friend BlockOperator build_rbd(RMatrix block, Index n_blocks);
    BlockOperator(OperatorKind kind, std::vector<RMatrix> blocks, BlockPartition partition)
        : kind_(kind), blocks_(std::move(blocks)), partition_(partition) {}

    OperatorKind kind_;
    std::vector<RMatrix> blocks_;
    BlockPartition partition_;
};

BlockOperator build_dbd(std::vector<RMatrix> blocks);
BlockOperator build_rbd(RMatrix block, Index n_blocks);

/// J independent blocks drawn from `ensemble`, block j from stream (seed, j).
BlockOperator sample_dbd(const Ensemble& ensemble, Index n_blocks, Seed seed);
BlockOperator sample_rbd(const Ensemble& ensemble, Index n_blocks, Seed seed);

/// Keep the first m rows of every block of a square, unit-variance master
/// operator, rescaled by 1/sqrt(m).
BlockOperator truncate_operator(const BlockOperator& master, Index m);

/// First J rows of the circulant matrix generated by r, scaled by 1/sqrt(J):
/// entry (k, p) = r[(p - k) mod P] / sqrt(J), 0-based.
class PartialCirculant {
public:
    PartialCirculant(RVector r, Index rows);

    Index rows() const { return rows_; }
    Index cols() const { return r_.size(); }
    const RVector& generator() const { return r_; }

    double entry(Index k, Index p) const;
    RMatrix dense() const;
    CVector apply(const CVector& x) const;

    /// The J x PJ RBD operator with the single 1 x P block r^T. Applied to
    /// the extended signal and divided by sqrt(J) it reproduces apply().
    BlockOperator rbd_form() const;

private:
    RVector r_;
    Index rows_;
};

PartialCirculant partial_circulant(const RVector& r, Index rows);

/// [S^0 x; S^1 x; ...; S^{J-1} x] with S the cyclic shift-up (S x)_i = x_{i+1}.
CVector extend_signal(const CVector& x, Index n_blocks);

}  // namespace blockrip
