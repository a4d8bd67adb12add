#include "blockrip/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "blockrip/rng.hpp"

namespace blockrip {

namespace {
constexpr double kBalance = 10.0;
constexpr double kStep = 2.0;
constexpr double kCertTol = 1e-9;
constexpr double kPruneRel = 1e-3;

// Indices with |v_i| above kPruneRel times the largest magnitude.
void significant_support(const CVector& v, std::vector<Index>& out) {
    out.clear();
    const double top = v.size() ? v.cwiseAbs().maxCoeff() : 0.0;
    if (top == 0.0) return;
    for (Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > kPruneRel * top) out.push_back(i);
}
}  // namespace

void BpSettings::validate() const {
    if (!(penalty > 0.0) || !(tol_primal > 0.0) || !(tol_dual > 0.0) || max_iters < 1 || polish_every < 1) {
        throw Error("BpSettings: penalty, tolerances, max_iters and polish_every must be positive");
    }
}

cplx shrink(cplx z, double t) {
    const double mag = std::abs(z);
    if (mag <= t) return 0.0;
    return z * (1.0 - t / mag);
}

void shrink_inplace(CVector& v, double t) {
    for (Index i = 0; i < v.size(); ++i) v(i) = shrink(v(i), t);
}

BasisPursuit::BasisPursuit(CMatrix a) : a_(std::move(a)) {
    if (a_.rows() < 1 || a_.cols() < 1) throw Error("BasisPursuit: empty matrix");
    const CMatrix aat = a_ * a_.adjoint();
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(aat);
    const RVector& lambda = eig.eigenvalues();
    const double cutoff = std::max(lambda.maxCoeff(), 0.0) * 1e-12 * static_cast<double>(aat.rows());
    RVector inv(lambda.size());
    for (Index i = 0; i < lambda.size(); ++i) inv(i) = lambda(i) > cutoff ? 1.0 / lambda(i) : 0.0;
    const CMatrix& v = eig.eigenvectors();
    pinv_ = a_.adjoint() * (v * inv.asDiagonal() * v.adjoint());
}

CVector BasisPursuit::project(const CVector& v, const CVector& y) const {
    return v - pinv_ * (a_ * v - y);
}

std::optional<CVector> BasisPursuit::certify(const std::vector<Index>& support, const CVector& y,
                                             const CVector& subgradient) const {
    const Index k = static_cast<Index>(support.size());
    if (k < 1 || k > a_.rows()) return std::nullopt;
    CMatrix a_t(a_.rows(), k);
    for (Index i = 0; i < k; ++i) a_t.col(i) = a_.col(support[static_cast<std::size_t>(i)]);
    const Eigen::ColPivHouseholderQR<CMatrix> qr(a_t);
    if (qr.rank() < k) return std::nullopt;
    const CVector b = qr.solve(y);
    if ((a_t * b - y).norm() > kCertTol * std::max(y.norm(), 1.0)) return std::nullopt;

    CVector sign(k);
    for (Index i = 0; i < k; ++i) {
        const double mag = std::abs(b(i));
        if (mag == 0.0) return std::nullopt;
        sign(i) = b(i) / mag;
    }
    const auto gram = (a_t.adjoint() * a_t).eval().ldlt();
    auto certifies = [&](const CVector& lambda0) {
        const CVector lambda = lambda0 + a_t * gram.solve(sign - a_t.adjoint() * lambda0);
        if ((a_t.adjoint() * lambda - sign).cwiseAbs().maxCoeff() > kCertTol) return false;
        return (a_.adjoint() * lambda).cwiseAbs().maxCoeff() <= 1.0 + kCertTol;
    };
    const bool hinted = subgradient.size() == a_.cols() && certifies(pinv_.adjoint() * subgradient);
    if (!hinted && !certifies(CVector::Zero(a_.rows()))) return std::nullopt;

    CVector beta = CVector::Zero(a_.cols());
    for (Index i = 0; i < k; ++i) beta(support[static_cast<std::size_t>(i)]) = b(i);
    return beta;
}

BpResult BasisPursuit::solve(const CVector& y, const BpSettings& settings) const {
    settings.validate();
    if (y.size() != a_.rows()) {
        throw Error("basis_pursuit: measurement vector has length " + std::to_string(y.size()) +
                    ", expected " + std::to_string(a_.rows()));
    }
    const Index n = a_.cols();
    BpResult result;
    const double y_norm = y.norm();
    if (y_norm == 0.0) {
        result.beta = CVector::Zero(n);
        result.converged = true;
        return result;
    }

    // Work with unit-norm data so the penalty has a scale-free meaning.
    const CVector y_unit = y / y_norm;
    double rho = settings.penalty;

    CVector beta = pinv_ * y_unit;
    CVector z = beta;
    shrink_inplace(z, 1.0 / rho);
    CVector u = beta - z;
    CVector v(n);
    CVector residual(a_.rows());
    std::vector<Index> support, prev_support, rejected;

    // Certifies the least-squares point on the significant part of z's
    // support, falling back to the full support.
    auto try_polish = [&](const CVector& zz, const CVector& yu, double scale, BpResult& out) {
        std::vector<Index> full, pruned;
        significant_support(zz, pruned);
        for (Index i = 0; i < zz.size(); ++i)
            if (zz(i) != cplx(0.0)) full.push_back(i);
        for (const auto* cand : {&pruned, &full}) {
            if (cand == &full && full == pruned) break;
            if (auto polished = certify(*cand, yu, rho * u)) {
                out.beta = *polished * scale;
                out.converged = true;
                out.certified = true;
                out.primal_residual = (a_ * *polished - yu).norm();
                return true;
            }
        }
        return false;
    };

    for (int it = 1; it <= settings.max_iters; ++it) {
        v = z - u;
        residual.noalias() = a_ * v;
        residual -= y_unit;
        beta = v;
        beta.noalias() -= pinv_ * residual;

        // Fused z- and u-updates with the residual bookkeeping.
        const double t = 1.0 / rho;
        double r2 = 0.0, s2 = 0.0, beta2 = 0.0, z2 = 0.0, u2 = 0.0;
        for (Index i = 0; i < n; ++i) {
            const cplx w = beta(i) + u(i);
            const double mag = std::sqrt(std::norm(w));
            const cplx z_new = mag <= t ? cplx(0.0) : w * (1.0 - t / mag);
            const cplx u_new = w - z_new;
            r2 += std::norm(beta(i) - z_new);
            s2 += std::norm(z_new - z(i));
            beta2 += std::norm(beta(i));
            z2 += std::norm(z_new);
            u2 += std::norm(u_new);
            z(i) = z_new;
            u(i) = u_new;
        }
        const double r = std::sqrt(r2);
        const double s = rho * std::sqrt(s2);
        const double scale_p = std::max({std::sqrt(beta2), std::sqrt(z2), 1e-300});
        const double scale_d = std::max(rho * std::sqrt(u2), 1e-300);
        result.iters = it;
        if (r <= settings.tol_primal * scale_p && s <= settings.tol_dual * scale_d) {
            result.converged = true;
            if (settings.polish && try_polish(z, y_unit, y_norm, result)) return result;
            break;
        }
        // Try a certified polish once the support has held still for one
        // check interval.
        if (settings.polish && it % settings.polish_every == 0) {
            significant_support(z, support);
            if (support == prev_support && support != rejected) {
                if (try_polish(z, y_unit, y_norm, result)) return result;
                rejected = support;
            }
            prev_support.swap(support);
        }
        // Residual balancing. The projection does not depend on rho, so
        // rescaling costs nothing; u is the scaled dual and moves inversely.
        if (settings.adaptive_penalty) {
            if (r > kBalance * s) {
                rho *= kStep;
                u /= kStep;
            } else if (s > kBalance * r) {
                rho /= kStep;
                u *= kStep;
            }
        }
    }

    result.beta = beta * y_norm;
    result.primal_residual = (a_ * beta - y_unit).norm();
    return result;
}

BpResult basis_pursuit(const LinearMap& measure, const LinearMap& adjoint, const CVector& y,
                       const BpSettings& settings) {
    const Index m = y.size();
    const Index n = adjoint(CVector::Zero(m)).size();
    CMatrix a(m, n);
    for (Index k = 0; k < n; ++k) {
        const CVector col = measure(CVector::Unit(n, k));
        if (col.size() != m) throw Error("basis_pursuit: measure output has the wrong length");
        a.col(k) = col;
    }

    Rng gen = make_stream(0x61646a6f696e74ULL, {});
    for (int trial = 0; trial < 3; ++trial) {
        CVector x(n), w(m);
        for (Index i = 0; i < n; ++i) x(i) = complex_normal(gen);
        for (Index i = 0; i < m; ++i) w(i) = complex_normal(gen);
        const CVector ax = measure(x);
        const CVector atw = adjoint(w);
        if (atw.size() != n) throw Error("basis_pursuit: adjoint output has the wrong length");
        const cplx lhs = w.dot(ax);   // <A x, w>
        const cplx rhs = atw.dot(x);  // <x, A^* w>
        const double scale = std::max(ax.norm() * w.norm(), x.norm() * atw.norm());
        if (std::abs(lhs - rhs) > 1e-8 * std::max(scale, 1e-300)) {
            throw Error("basis_pursuit: measure and adjoint are not mutual adjoints");
        }
    }
    return BasisPursuit(std::move(a)).solve(y, settings);
}

double relative_error(const CVector& beta, const CVector& beta_hat) {
    const double ref = beta.norm();
    if (ref == 0.0) throw Error("recovery_success: reference signal is zero");
    if (beta.size() != beta_hat.size()) throw Error("recovery_success: length mismatch");
    return (beta_hat - beta).norm() / ref;
}

bool recovery_success(const CVector& beta, const CVector& beta_hat, double threshold) {
    return relative_error(beta, beta_hat) < threshold;
}

}  // namespace blockrip
