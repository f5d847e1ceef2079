#ifndef COSLAW_EIG_HPP
#define COSLAW_EIG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "coslaw/complex_matrix.hpp"
#include "coslaw/norms.hpp"

namespace coslaw {

/// Unitary eigendecomposition M = V diag(values) V*.
/// Columns of `vectors` are the eigenvectors, ordered to match `values`.
struct EigenDecomposition {
    std::vector<cplx> values;
    DenseMatrix vectors;
};

namespace detail {

/// Top eigenvector of a real symmetric PSD 3x3 matrix, by power iteration
/// started from the dominant column. Plenty for rotation selection: any
/// vector of the top eigenspace gives a valid descent rotation.
inline std::array<double, 3> top_eigvec3(const std::array<std::array<double, 3>, 3>& G) {
    std::array<double, 3> v{1.0, 0.0, 0.0};
    double bestcol = -1.0;
    for (int j = 0; j < 3; ++j) {
        const double c = G[0][j] * G[0][j] + G[1][j] * G[1][j] + G[2][j] * G[2][j];
        if (c > bestcol) {
            bestcol = c;
            v = {G[0][j], G[1][j], G[2][j]};
        }
    }
    if (bestcol <= 0.0) return {1.0, 0.0, 0.0};
    for (int it = 0; it < 64; ++it) {
        std::array<double, 3> w{};
        for (int i = 0; i < 3; ++i)
            w[i] = G[i][0] * v[0] + G[i][1] * v[1] + G[i][2] * v[2];
        const double n = std::sqrt(w[0] * w[0] + w[1] * w[1] + w[2] * w[2]);
        if (n == 0.0) break;
        for (int i = 0; i < 3; ++i) v[i] = w[i] / n;
    }
    return v;
}

/// Squared off-diagonal Frobenius mass of a matrix.
inline double offdiag_sq(const DenseMatrix& A) {
    double acc = 0.0;
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t j = 0; j < A.dim(); ++j)
            if (i != j) acc += std::norm(A(i, j));
    return acc;
}

/// One joint-Jacobi rotation zeroing the (p,q) mass of two Hermitian
/// matrices as far as a single unitary Givens rotation allows.
/// The angle comes from the top eigenvector of a 3x3 Gram matrix built
/// from both inputs (Cardoso-Souloumiac angles); for a single matrix this
/// reduces to the classical Hermitian Jacobi choice.
/// Returns false when the pair is already negligible.
inline bool joint_rotation(DenseMatrix& H, DenseMatrix& K, DenseMatrix& V, std::size_t p,
                           std::size_t q, double skip_tol) {
    const double mass = std::sqrt(std::norm(H(p, q)) + std::norm(K(p, q)));
    if (mass <= skip_tol) return false;

    std::array<std::array<double, 3>, 3> G{};
    for (const DenseMatrix* Aptr : {&H, &K}) {
        const DenseMatrix& A = *Aptr;
        const double g0 = A(p, p).real() - A(q, q).real();
        const double g1 = 2.0 * A(p, q).real();
        const double g2 = 2.0 * A(p, q).imag();
        const double g[3] = {g0, g1, g2};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) G[i][j] += g[i] * g[j];
    }
    auto v = top_eigvec3(G);
    if (v[0] < 0.0)
        for (auto& x : v) x = -x;
    const double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    // Only a vanishing (y, z) part makes the rotation diagonal. Do not test
    // r - x: it cancels to zero for small angles that still matter.
    if (r == 0.0 || (v[1] == 0.0 && v[2] == 0.0)) return false;

    const double c = std::sqrt((v[0] + r) / (2.0 * r));
    const cplx s = cplx(v[1], -v[2]) / std::sqrt(2.0 * r * (v[0] + r));

    // Two-sided update A <- W A W* with W = [[c, conj(s)], [-s, c]] on (p,q),
    // accumulated into V as V <- V W* so that A_in = V A_out V*.
    const std::size_t n = H.dim();
    for (DenseMatrix* Aptr : {&H, &K}) {
        DenseMatrix& A = *Aptr;
        for (std::size_t j = 0; j < n; ++j) { // rows p,q
            const cplx ap = A(p, j), aq = A(q, j);
            A(p, j) = c * ap + std::conj(s) * aq;
            A(q, j) = -s * ap + c * aq;
        }
        for (std::size_t i = 0; i < n; ++i) { // cols p,q
            const cplx ap = A(i, p), aq = A(i, q);
            A(i, p) = c * ap + s * aq;
            A(i, q) = -std::conj(s) * ap + c * aq;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const cplx vp = V(i, p), vq = V(i, q);
        V(i, p) = c * vp + s * vq;
        V(i, q) = -std::conj(s) * vp + c * vq;
    }
    return true;
}

} // namespace detail

/// Unitary diagonalization of a normal matrix.
///
/// Splits M = H + iK into commuting Hermitian parts and drives the pair to
/// joint diagonal form with cyclic Jacobi sweeps; the per-pair rotation
/// minimises the combined off-diagonal mass of both parts, so Hermitian,
/// skew-Hermitian, unitary and general normal inputs all take the same path.
///
/// Throws NotNormalError when ||MM* - M*M|| > 1e-10 * ||M||^2 and
/// NoConvergenceError when the sweep budget runs out or the reconstruction
/// residual exceeds 1e-10 * max(1, ||M||).
inline EigenDecomposition eig_normal(const DenseMatrix& M) {
    require_finite(M, "eig_normal");
    const std::size_t n = M.dim();
    const double nm = operator_norm(M);

    const DenseMatrix Ms = M.adjoint();
    {
        const double comm = operator_norm(M * Ms - Ms * M);
        if (comm > 1e-10 * nm * nm)
            throw NotNormalError("eig_normal: commutator norm " + std::to_string(comm) +
                                 " exceeds normality tolerance");
    }

    DenseMatrix H = M, K = M;
    H += Ms;
    H *= cplx(0.5);
    K -= Ms;
    K *= cplx(0.0, -0.5); // K = (M - M*) / (2i)

    DenseMatrix V = DenseMatrix::identity(n);
    const double scale = std::max(H.frobenius_norm(), K.frobenius_norm());
    const double target = 1e-13 * std::max(scale, 1e-300);
    const double skip = target / (static_cast<double>(n) * static_cast<double>(n));

    bool converged = (n == 1);
    for (int sweep = 0; sweep < 60 && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                rotated |= detail::joint_rotation(H, K, V, p, q, skip);
        const double off = std::sqrt(detail::offdiag_sq(H) + detail::offdiag_sq(K));
        if (off <= target || !rotated) {
            converged = off <= 10.0 * target;
            break;
        }
    }
    if (!converged)
        throw NoConvergenceError("eig_normal: joint Jacobi sweeps did not reach tolerance");

    EigenDecomposition out{std::vector<cplx>(n), std::move(V)};
    for (std::size_t i = 0; i < n; ++i) out.values[i] = cplx(H(i, i).real(), K(i, i).real());

    // Deterministic order: descending real part, then descending imaginary.
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
        const cplx za = out.values[a], zb = out.values[b];
        if (za.real() != zb.real()) return za.real() > zb.real();
        return za.imag() > zb.imag();
    });
    std::vector<cplx> sorted_vals(n);
    DenseMatrix sorted_vecs(n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_vals[j] = out.values[perm[j]];
        for (std::size_t i = 0; i < n; ++i) sorted_vecs(i, j) = out.vectors(i, perm[j]);
    }
    out.values = std::move(sorted_vals);
    out.vectors = std::move(sorted_vecs);

    // Certify the decomposition before handing it out.
    DenseMatrix R(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += out.vectors(i, k) * out.values[k] * std::conj(out.vectors(j, k));
            R(i, j) = acc;
        }
    if (operator_norm(R - M) > 1e-10 * std::max(1.0, nm))
        throw NoConvergenceError("eig_normal: reconstruction residual above tolerance");
    return out;
}

} // namespace coslaw

#endif
