#include "blockrip/operators.hpp"

#include <cmath>

namespace blockrip {

std::string to_string(OperatorKind kind) { return kind == OperatorKind::DBD ? "DBD" : "RBD"; }

OperatorKind operator_kind_from_string(const std::string& name) {
    if (name == "DBD") return OperatorKind::DBD;
    if (name == "RBD") return OperatorKind::RBD;
    throw Error("unknown operator kind '" + name + "'");
}

double Ensemble::entry_std() const {
    return scale > 0.0 ? scale : 1.0 / std::sqrt(static_cast<double>(rows));
}

RMatrix sample_block(const Ensemble& ensemble, Rng& gen) {
    if (ensemble.rows < 1 || ensemble.cols < 1) throw Error("sample_block: empty ensemble");
    const double s = ensemble.entry_std();
    RMatrix out(ensemble.rows, ensemble.cols);
    if (ensemble.kind == EnsembleKind::Gaussian) {
        std::normal_distribution<double> normal(0.0, s);
        for (Index j = 0; j < out.cols(); ++j)
            for (Index i = 0; i < out.rows(); ++i) out(i, j) = normal(gen);
    } else {
        std::bernoulli_distribution coin(0.5);
        for (Index j = 0; j < out.cols(); ++j)
            for (Index i = 0; i < out.rows(); ++i) out(i, j) = coin(gen) ? s : -s;
    }
    return out;
}

RMatrix sample_block(const Ensemble& ensemble, Seed seed) {
    Rng gen = make_stream(seed, {stream::kBlock});
    return sample_block(ensemble, gen);
}

BlockOperator build_dbd(std::vector<RMatrix> blocks) {
    if (blocks.empty()) throw Error("build_dbd: no blocks");
    const Index m = blocks.front().rows();
    const Index n = blocks.front().cols();
    for (const auto& b : blocks) {
        if (b.rows() != m || b.cols() != n) throw Error("build_dbd: blocks have ragged dimensions");
    }
    const BlockPartition partition(n, static_cast<Index>(blocks.size()), m);
    return BlockOperator(OperatorKind::DBD, std::move(blocks), partition);
}

BlockOperator build_rbd(RMatrix block, Index n_blocks) {
    if (n_blocks < 1) throw Error("build_rbd: need at least one block");
    const BlockPartition partition(block.cols(), n_blocks, block.rows());
    std::vector<RMatrix> blocks;
    blocks.push_back(std::move(block));
    return BlockOperator(OperatorKind::RBD, std::move(blocks), partition);
}

BlockOperator sample_dbd(const Ensemble& ensemble, Index n_blocks, Seed seed) {
    std::vector<RMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(n_blocks));
    for (Index j = 0; j < n_blocks; ++j) {
        Rng gen = make_stream(seed, {stream::kBlock, static_cast<std::uint64_t>(j)});
        blocks.push_back(sample_block(ensemble, gen));
    }
    return build_dbd(std::move(blocks));
}

BlockOperator sample_rbd(const Ensemble& ensemble, Index n_blocks, Seed seed) {
    Rng gen = make_stream(seed, {stream::kBlock, 0});
    return build_rbd(sample_block(ensemble, gen), n_blocks);
}

CVector BlockOperator::apply(const CVector& x) const {
    const Index n = partition_.block_len();
    const Index m = partition_.meas_per_block();
    if (x.size() != partition_.n_total()) {
        throw Error("BlockOperator::apply: signal has length " + std::to_string(x.size()) +
                    ", expected " + std::to_string(partition_.n_total()));
    }
    CVector y(partition_.meas_total());
    for (Index j = 0; j < partition_.n_blocks(); ++j) {
        const RMatrix& phi = block(j);
        const auto chunk = x.segment(j * n, n);
        const RVector re = phi * chunk.real();
        const RVector im = phi * chunk.imag();
        for (Index i = 0; i < m; ++i) y(j * m + i) = cplx(re(i), im(i));
    }
    return y;
}

CVector BlockOperator::apply_adjoint(const CVector& y) const {
    const Index n = partition_.block_len();
    const Index m = partition_.meas_per_block();
    if (y.size() != partition_.meas_total()) {
        throw Error("BlockOperator::apply_adjoint: measurement vector has length " +
                    std::to_string(y.size()) + ", expected " + std::to_string(partition_.meas_total()));
    }
    CVector x(partition_.n_total());
    for (Index j = 0; j < partition_.n_blocks(); ++j) {
        const RMatrix& phi = block(j);
        const auto chunk = y.segment(j * m, m);
        const RVector re = phi.transpose() * chunk.real();
        const RVector im = phi.transpose() * chunk.imag();
        for (Index i = 0; i < n; ++i) x(j * n + i) = cplx(re(i), im(i));
    }
    return x;
}

CMatrix BlockOperator::times_basis(const Orthobasis& basis) const {
    if (basis.size() != partition_.n_total()) throw Error("BlockOperator::times_basis: size mismatch");
    const Index m = partition_.meas_per_block();
    const Index n = partition_.block_len();
    CMatrix out(partition_.meas_total(), basis.size());
    for (Index j = 0; j < partition_.n_blocks(); ++j) {
        const auto u_j = basis.entries().middleRows(j * n, n);
        const RMatrix& phi = block(j);
        out.middleRows(j * m, m).real() = phi * u_j.real();
        out.middleRows(j * m, m).imag() = phi * u_j.imag();
    }
    return out;
}

RMatrix BlockOperator::dense() const {
    const Index m = partition_.meas_per_block();
    const Index n = partition_.block_len();
    RMatrix out = RMatrix::Zero(partition_.meas_total(), partition_.n_total());
    for (Index j = 0; j < partition_.n_blocks(); ++j) out.block(j * m, j * n, m, n) = block(j);
    return out;
}

BlockOperator truncate_operator(const BlockOperator& master, Index m) {
    const Index n = master.partition().block_len();
    if (master.partition().meas_per_block() != n) {
        throw Error("truncate_operator: master blocks must be square");
    }
    if (m < 1 || m > n) {
        throw Error("truncate_operator: m = " + std::to_string(m) + " outside [1, " +
                    std::to_string(n) + "]");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    if (master.kind() == OperatorKind::RBD) {
        return build_rbd(master.block(0).topRows(m) * scale, master.partition().n_blocks());
    }
    std::vector<RMatrix> blocks;
    blocks.reserve(static_cast<std::size_t>(master.partition().n_blocks()));
    for (Index j = 0; j < master.partition().n_blocks(); ++j) {
        blocks.emplace_back(master.block(j).topRows(m) * scale);
    }
    return build_dbd(std::move(blocks));
}

PartialCirculant::PartialCirculant(RVector r, Index rows) : r_(std::move(r)), rows_(rows) {
    if (r_.size() < 1) throw Error("partial_circulant: empty generator");
    if (rows < 1 || rows > r_.size()) {
        throw Error("partial_circulant: need 1 <= J <= P (got J=" + std::to_string(rows) +
                    ", P=" + std::to_string(r_.size()) + ")");
    }
}

double PartialCirculant::entry(Index k, Index p) const {
    const Index n = r_.size();
    return r_(((p - k) % n + n) % n) / std::sqrt(static_cast<double>(rows_));
}

RMatrix PartialCirculant::dense() const {
    RMatrix out(rows_, cols());
    for (Index k = 0; k < rows_; ++k)
        for (Index p = 0; p < cols(); ++p) out(k, p) = entry(k, p);
    return out;
}

CVector PartialCirculant::apply(const CVector& x) const {
    if (x.size() != cols()) throw Error("PartialCirculant::apply: dimension mismatch");
    return dense().cast<cplx>() * x;
}

BlockOperator PartialCirculant::rbd_form() const {
    return build_rbd(r_.transpose(), rows_);
}

PartialCirculant partial_circulant(const RVector& r, Index rows) { return PartialCirculant(r, rows); }

CVector extend_signal(const CVector& x, Index n_blocks) {
    const Index p = x.size();
    if (n_blocks < 1 || n_blocks > p) {
        throw Error("extend_signal: need 1 <= J <= P (got J=" + std::to_string(n_blocks) +
                    ", P=" + std::to_string(p) + ")");
    }
    CVector out(p * n_blocks);
    for (Index j = 0; j < n_blocks; ++j)
        for (Index i = 0; i < p; ++i) out(j * p + i) = x((i + j) % p);
    return out;
}

}  // namespace blockrip
