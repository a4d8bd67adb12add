#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace blockrip {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Thrown for violated preconditions and dimension mismatches.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dimensional bookkeeping of a block-diagonal measurement model.
///
/// A signal of length n_total is split into n_blocks consecutive chunks of
/// block_len entries; each chunk is measured by its own block of
/// meas_per_block rows, for meas_total rows overall.
class BlockPartition {
public:
    BlockPartition(Index block_len, Index n_blocks, Index meas_per_block = 1);

    Index n_total() const { return block_len_ * n_blocks_; }
    Index block_len() const { return block_len_; }
    Index n_blocks() const { return n_blocks_; }
    Index meas_per_block() const { return meas_per_block_; }
    Index meas_total() const { return meas_per_block_ * n_blocks_; }

    BlockPartition with_measurements(Index meas_per_block) const {
        return BlockPartition(block_len_, n_blocks_, meas_per_block);
    }

    bool operator==(const BlockPartition&) const = default;

private:
    Index block_len_;
    Index n_blocks_;
    Index meas_per_block_;
};

inline BlockPartition::BlockPartition(Index block_len, Index n_blocks, Index meas_per_block)
    : block_len_(block_len), n_blocks_(n_blocks), meas_per_block_(meas_per_block) {
    if (block_len < 1 || n_blocks < 1 || meas_per_block < 1) {
        throw Error("BlockPartition: block_len, n_blocks and meas_per_block must be positive (got " +
                    std::to_string(block_len) + ", " + std::to_string(n_blocks) + ", " +
                    std::to_string(meas_per_block) + ")");
    }
}

}  // namespace blockrip
