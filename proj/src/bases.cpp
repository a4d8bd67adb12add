#include "blockrip/bases.hpp"

#include <cmath>
#include <numbers>

namespace blockrip {

Orthobasis make_basis_unchecked(CMatrix entries, BlockPartition partition, BasisLabel label) {
    return Orthobasis(std::move(entries), partition, label);
}

std::string to_string(BasisLabel label) {
    switch (label) {
        case BasisLabel::Canonical: return "Canonical";
        case BasisLabel::Fourier: return "Fourier";
        case BasisLabel::Generic: return "Generic";
        case BasisLabel::Circulant: return "Circulant";
        case BasisLabel::Custom: return "Custom";
    }
    return "Custom";
}

BasisLabel basis_label_from_string(const std::string& name) {
    if (name == "Canonical") return BasisLabel::Canonical;
    if (name == "Fourier") return BasisLabel::Fourier;
    if (name == "Generic") return BasisLabel::Generic;
    if (name == "Circulant") return BasisLabel::Circulant;
    if (name == "Custom") return BasisLabel::Custom;
    throw Error("unknown basis label '" + name + "'");
}

Orthobasis Orthobasis::from_matrix(CMatrix entries, BlockPartition partition, BasisLabel label,
                                   double tol) {
    if (entries.rows() != entries.cols() || entries.rows() != partition.n_total()) {
        throw Error("Orthobasis: expected a " + std::to_string(partition.n_total()) + "x" +
                    std::to_string(partition.n_total()) + " matrix, got " +
                    std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
    }
    Orthobasis basis(std::move(entries), partition, label);
    const double defect = basis.orthonormality_defect();
    if (!(defect <= tol)) {
        throw Error("Orthobasis: matrix is not unitary (||U*U - I||_max = " +
                    std::to_string(defect) + ")");
    }
    return basis;
}

double Orthobasis::orthonormality_defect() const {
    CMatrix gram = entries_.adjoint() * entries_;
    gram.diagonal().array() -= 1.0;
    return gram.cwiseAbs().maxCoeff();
}

Orthobasis Orthobasis::with_partition(const BlockPartition& partition) const {
    if (partition.n_total() != size()) {
        throw Error("Orthobasis::with_partition: size mismatch");
    }
    return Orthobasis(entries_, partition, label_);
}

Orthobasis canonical_basis(const BlockPartition& partition) {
    const Index n = partition.n_total();
    return make_basis_unchecked(CMatrix::Identity(n, n), partition, BasisLabel::Canonical);
}

Orthobasis fourier_basis(const BlockPartition& partition) {
    const Index n = partition.n_total();
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    CMatrix f(n, n);
    for (Index q = 0; q < n; ++q) {
        for (Index p = 0; p < n; ++p) {
            // Reduce p*q mod n first so the phase stays accurate for large n.
            const auto k = static_cast<double>((p * q) % n);
            const double phase = -2.0 * std::numbers::pi * k / static_cast<double>(n);
            f(p, q) = std::polar(scale, phase);
        }
    }
    return make_basis_unchecked(std::move(f), partition, BasisLabel::Fourier);
}

Orthobasis generic_basis(const BlockPartition& partition, Rng& gen) {
    const Index n = partition.n_total();
    std::normal_distribution<double> normal(0.0, 1.0);
    RMatrix g(n, n);
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) g(i, j) = normal(gen);
    }
    Eigen::HouseholderQR<RMatrix> qr(g);
    RMatrix q = qr.householderQ() * RMatrix::Identity(n, n);
    const RMatrix& r = qr.matrixQR();
    for (Index j = 0; j < n; ++j) {
        if (r(j, j) < 0.0) q.col(j) = -q.col(j);
    }
    return make_basis_unchecked(q.cast<cplx>(), partition, BasisLabel::Generic);
}

Orthobasis generic_basis(const BlockPartition& partition, Seed seed) {
    Rng gen = make_stream(seed, {stream::kBasis});
    return generic_basis(partition, gen);
}

namespace {

void check_circulant_dims(Index P, Index J) {
    if (J < 1 || P < 1 || J > P) {
        throw Error("circulant_basis: need 1 <= J <= P (got P=" + std::to_string(P) +
                    ", J=" + std::to_string(J) + ")");
    }
}

}  // namespace

std::vector<std::pair<Index, cplx>> circulant_basis_nonzeros(Index P, Index J, Index col) {
    check_circulant_dims(P, J);
    if (col < 0 || col >= P * J) throw Error("circulant_basis: column out of range");
    // Column (b, p) of kron(F_J, I_P) is F_J(:, b) placed at offset p of every
    // row block; shifting block a up by a rows moves that entry to (p - a) mod P.
    const Index b = col / P;
    const Index p = col % P;
    const double scale = 1.0 / std::sqrt(static_cast<double>(J));
    std::vector<std::pair<Index, cplx>> out;
    out.reserve(static_cast<std::size_t>(J));
    for (Index a = 0; a < J; ++a) {
        const Index row = ((p - a) % P + P) % P;
        const double phase =
            -2.0 * std::numbers::pi * static_cast<double>((a * b) % J) / static_cast<double>(J);
        out.emplace_back(a * P + row, std::polar(scale, phase));
    }
    return out;
}

CVector circulant_basis_column(Index P, Index J, Index col) {
    CVector column = CVector::Zero(P * J);
    for (const auto& [row, value] : circulant_basis_nonzeros(P, J, col)) column(row) = value;
    return column;
}

Orthobasis circulant_basis(Index P, Index J) {
    check_circulant_dims(P, J);
    const Index n = P * J;
    CMatrix t(n, n);
    for (Index col = 0; col < n; ++col) t.col(col) = circulant_basis_column(P, J, col);
    return make_basis_unchecked(std::move(t), BlockPartition(P, J), BasisLabel::Circulant);
}

void check_permutation(const std::vector<Index>& perm, Index n) {
    if (static_cast<Index>(perm.size()) != n) {
        throw Error("permutation has length " + std::to_string(perm.size()) + ", expected " +
                    std::to_string(n));
    }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (Index v : perm) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw Error("permutation is not a bijection on [0, " + std::to_string(n) + ")");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Orthobasis permute_basis(const Orthobasis& basis, const std::vector<Index>& row_perm) {
    const Index n = basis.size();
    check_permutation(row_perm, n);
    CMatrix out(n, n);
    for (Index i = 0; i < n; ++i) out.row(i) = basis.entries().row(row_perm[static_cast<std::size_t>(i)]);
    return make_basis_unchecked(std::move(out), basis.partition(), basis.label());
}

Orthobasis permute_basis_columns(const Orthobasis& basis, const std::vector<Index>& col_perm) {
    const Index n = basis.size();
    check_permutation(col_perm, n);
    CMatrix out(n, n);
    for (Index i = 0; i < n; ++i) out.col(i) = basis.entries().col(col_perm[static_cast<std::size_t>(i)]);
    return make_basis_unchecked(std::move(out), basis.partition(), basis.label());
}

}  // namespace blockrip
