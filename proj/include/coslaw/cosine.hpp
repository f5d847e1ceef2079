#ifndef COSLAW_COSINE_HPP
#define COSLAW_COSINE_HPP

#include <cmath>
#include <optional>
#include <variant>
#include <vector>

#include "coslaw/complex_matrix.hpp"
#include "coslaw/eig.hpp"
#include "coslaw/norms.hpp"

namespace coslaw {

/// Values are clamped to this magnitude; the overflow flag records clamping.
constexpr double overflow_magnitude_cap = 1e300;

struct ScalarSample {
    cplx value;
    bool overflowed = false;
};

struct MatrixSample {
    DenseMatrix value;
    bool overflowed = false;
};

/// cos(a t) through the exponential splitting (e^{iz} + e^{-iz}) / 2.
///
/// For |Im(a t)| large the true magnitude exceeds double range; the result
/// keeps the asymptotic direction e^{-i Re(z) sign(Im z)} and is clamped.
inline ScalarSample eval_scalar(cplx a, double t) {
    const cplx z = a * t;
    const double y = z.imag();
    ScalarSample out;
    if (std::abs(y) <= 700.0) {
        out.value = 0.5 * (std::exp(cplx(0.0, 1.0) * z) + std::exp(cplx(0.0, -1.0) * z));
        const double mag = std::abs(out.value);
        if (!finite(out.value) || mag > overflow_magnitude_cap) {
            out.overflowed = true;
            if (finite(out.value) && mag > 0.0)
                out.value *= overflow_magnitude_cap / mag;
            else
                out.value = overflow_magnitude_cap;
        }
        return out;
    }
    // Dominant branch: cos z ~ e^{|y|} / 2 * (cos x - i sign(y) sin x).
    const double x = z.real();
    out.value = overflow_magnitude_cap * cplx(std::cos(x), -(y > 0 ? 1.0 : -1.0) * std::sin(x));
    out.overflowed = true;
    return out;
}

/// Scalar family t -> cos(a t); immutable.
class ScalarCosineFamily {
public:
    explicit ScalarCosineFamily(cplx a) : a_(a) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw DomainError("ScalarCosineFamily: parameter must be finite");
    }

    cplx parameter() const { return a_; }

    ScalarSample operator()(double t) const { return eval_scalar(a_, t); }

private:
    cplx a_;
};

enum class CosineStrategy { Spectral, SeriesDoubling };

/// Matrix family t -> cos(t B); immutable, with the generator norm (and for
/// the spectral strategy the eigendecomposition) computed once up front.
///
/// Spectral path: V diag(cos(t lambda_i)) V*; requires a normal generator.
/// Series path: Taylor sum at t / 2^k with ||B|| |t| / 2^k <= 1/2, followed
/// by k double-angle steps C(2u) = 2 C(u)^2 - I; works for any generator
/// while ||B|| |t| <= 100.
class MatrixCosineFamily {
public:
    MatrixCosineFamily(DenseMatrix B, CosineStrategy strategy)
        : B_(std::move(B)), strategy_(strategy), norm_B_(operator_norm(B_)) {
        if (strategy_ == CosineStrategy::Spectral) eig_ = eig_normal(B_);
    }

    const DenseMatrix& generator() const { return B_; }
    double generator_norm() const { return norm_B_; }
    CosineStrategy strategy() const { return strategy_; }
    const std::optional<EigenDecomposition>& decomposition() const { return eig_; }

    MatrixSample operator()(double t) const;

private:
    DenseMatrix B_;
    CosineStrategy strategy_;
    double norm_B_;
    std::optional<EigenDecomposition> eig_;
};

/// cos(t B) = V diag(cos(t lambda_i)) V* from the family's decomposition.
inline MatrixSample eval_matrix_spectral(const MatrixCosineFamily& fam, double t) {
    const EigenDecomposition& ed =
        fam.decomposition() ? *fam.decomposition() : eig_normal(fam.generator());
    const std::size_t n = fam.generator().dim();
    std::vector<cplx> d(n);
    bool overflowed = false;
    for (std::size_t i = 0; i < n; ++i) {
        const ScalarSample s = eval_scalar(ed.values[i], t);
        d[i] = s.value;
        overflowed |= s.overflowed;
    }
    const DenseMatrix& V = ed.vectors;
    MatrixSample out{DenseMatrix(n), overflowed};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) acc += V(i, k) * d[k] * std::conj(V(j, k));
            out.value(i, j) = acc;
        }
    return out;
}

/// cos(t B) by scaled Taylor summation plus double-angle reconstruction.
inline MatrixSample eval_matrix_series_doubling(const MatrixCosineFamily& fam, double t) {
    const double z = fam.generator_norm() * std::abs(t);
    if (z > 100.0)
        throw DomainError("eval_matrix_series_doubling: ||B|| |t| = " + std::to_string(z) +
                          " exceeds the supported range 100");
    int k = 0;
    double zs = z;
    while (zs > 0.5) {
        zs *= 0.5;
        ++k;
    }
    const std::size_t n = fam.generator().dim();
    const double u = t / std::pow(2.0, k);

    DenseMatrix X = fam.generator();
    X *= cplx(u);
    const DenseMatrix X2 = X * X;

    // cos(X) = sum_m (-1)^m X^{2m} / (2m)!; with ||X|| <= 1/2 the terms
    // collapse far faster than the 1e-18 cutoff.
    DenseMatrix sum = DenseMatrix::identity(n);
    DenseMatrix term = DenseMatrix::identity(n);
    for (int m = 1; m <= 64; ++m) {
        term = term * X2;
        term *= cplx(-1.0 / ((2.0 * m - 1.0) * (2.0 * m)));
        sum += term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < k; ++i) {
        sum = sum * sum;
        sum *= cplx(2.0);
        sum -= DenseMatrix::identity(n);
    }
    return {std::move(sum), false};
}

inline MatrixSample MatrixCosineFamily::operator()(double t) const {
    return strategy_ == CosineStrategy::Spectral ? eval_matrix_spectral(*this, t)
                                                 : eval_matrix_series_doubling(*this, t);
}

/// Defect of the cosine functional equation at (t, s):
/// residual = ||C(t+s) + C(t-s) - 2 C(t) C(s)||.
/// `scale()` is the natural comparison magnitude 1 + ||C(t)|| ||C(s)||.
struct ResidualReport {
    double residual = 0.0;
    double norm_t = 0.0;
    double norm_s = 0.0;
    bool overflowed = false;

    double scale() const { return 1.0 + norm_t * norm_s; }
};

inline ResidualReport dalembert_residual(const ScalarCosineFamily& fam, double t, double s) {
    const ScalarSample cts = fam(t + s), cmt = fam(t - s), ct = fam(t), cs = fam(s);
    ResidualReport r;
    r.overflowed = cts.overflowed || cmt.overflowed || ct.overflowed || cs.overflowed;
    r.residual = std::abs(cts.value + cmt.value - 2.0 * ct.value * cs.value);
    r.norm_t = std::abs(ct.value);
    r.norm_s = std::abs(cs.value);
    return r;
}

inline ResidualReport dalembert_residual(const MatrixCosineFamily& fam, double t, double s) {
    const MatrixSample cts = fam(t + s), cmt = fam(t - s), ct = fam(t), cs = fam(s);
    ResidualReport r;
    r.overflowed = cts.overflowed || cmt.overflowed || ct.overflowed || cs.overflowed;
    DenseMatrix defect = ct.value * cs.value;
    defect *= cplx(-2.0);
    defect += cts.value;
    defect += cmt.value;
    r.residual = operator_norm(defect);
    r.norm_t = operator_norm(ct.value);
    r.norm_s = operator_norm(cs.value);
    return r;
}

/// Either flavour of cosine family, with a uniform matrix-valued view.
class CosineFamily {
public:
    CosineFamily(ScalarCosineFamily f) : fam_(std::move(f)) {}
    CosineFamily(MatrixCosineFamily f) : fam_(std::move(f)) {}

    std::size_t dim() const {
        if (const auto* m = std::get_if<MatrixCosineFamily>(&fam_)) return m->generator().dim();
        return 1;
    }

    bool is_scalar() const { return std::holds_alternative<ScalarCosineFamily>(fam_); }

    const ScalarCosineFamily* scalar() const { return std::get_if<ScalarCosineFamily>(&fam_); }
    const MatrixCosineFamily* matrix() const { return std::get_if<MatrixCosineFamily>(&fam_); }

    /// Evaluate as a matrix sample (scalars become 1x1 matrices).
    MatrixSample operator()(double t) const {
        if (const auto* s = std::get_if<ScalarCosineFamily>(&fam_)) {
            const ScalarSample v = (*s)(t);
            MatrixSample out{DenseMatrix(1), v.overflowed};
            out.value(0, 0) = v.value;
            return out;
        }
        return (*std::get_if<MatrixCosineFamily>(&fam_))(t);
    }

    /// Norm of the generator: |a| for scalars, ||B|| for matrices.
    double generator_norm() const {
        if (const auto* s = std::get_if<ScalarCosineFamily>(&fam_)) return std::abs(s->parameter());
        return std::get_if<MatrixCosineFamily>(&fam_)->generator_norm();
    }

    /// Generator spectrum when available: {a} for scalars, eigenvalues for
    /// spectral-strategy matrix families, nothing otherwise.
    std::optional<std::vector<cplx>> spectrum() const {
        if (const auto* s = std::get_if<ScalarCosineFamily>(&fam_))
            return std::vector<cplx>{s->parameter()};
        const auto* m = std::get_if<MatrixCosineFamily>(&fam_);
        if (m->decomposition()) return m->decomposition()->values;
        return std::nullopt;
    }

private:
    std::variant<ScalarCosineFamily, MatrixCosineFamily> fam_;
};

} // namespace coslaw

#endif
