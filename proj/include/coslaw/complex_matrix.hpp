#ifndef COSLAW_COMPLEX_MATRIX_HPP
#define COSLAW_COMPLEX_MATRIX_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "coslaw/errors.hpp"

namespace coslaw {

using cplx = std::complex<double>;

inline bool finite(const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Square complex matrix, row-major, dimension 1..256.
///
/// This is the value type every operator-level computation in the library
/// runs on. It stays deliberately small: storage, element access, the ring
/// operations, adjoint, and two cheap norms. Induced norms and spectral
/// data live in norms.hpp / eig.hpp.
class DenseMatrix {
public:
    static constexpr std::size_t max_dim = 256;

    explicit DenseMatrix(std::size_t dim) : dim_(dim), a_(check_dim(dim) * dim) {}

    static DenseMatrix identity(std::size_t dim) {
        DenseMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const std::vector<cplx>& data() const { return a_; }
    std::vector<cplx>& data() { return a_; }

    DenseMatrix& operator+=(const DenseMatrix& rhs) {
        check_same_dim(rhs);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
        return *this;
    }

    DenseMatrix& operator-=(const DenseMatrix& rhs) {
        check_same_dim(rhs);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
        return *this;
    }

    DenseMatrix& operator*=(const cplx& s) {
        for (auto& z : a_) z *= s;
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
    friend DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
    friend DenseMatrix operator*(DenseMatrix lhs, const cplx& s) { return lhs *= s; }
    friend DenseMatrix operator*(const cplx& s, DenseMatrix rhs) { return rhs *= s; }

    friend DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
        lhs.check_same_dim(rhs);
        const std::size_t n = lhs.dim_;
        DenseMatrix out(n);
        // i-k-j loop order keeps the inner pass contiguous in both operands.
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = lhs(i, k);
                if (aik == cplx(0.0)) continue;
                const cplx* rrow = &rhs.a_[k * n];
                cplx* orow = &out.a_[i * n];
                for (std::size_t j = 0; j < n; ++j) orow[j] += aik * rrow[j];
            }
        }
        return out;
    }

    DenseMatrix adjoint() const {
        DenseMatrix out(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    bool is_finite() const {
        for (const auto& z : a_)
            if (!finite(z)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& z : a_) m = std::max(m, std::abs(z));
        return m;
    }

    double frobenius_norm() const {
        // Scaled accumulation so entries near the overflow cap stay representable.
        const double s = max_abs();
        if (s == 0.0) return 0.0;
        double acc = 0.0;
        for (const auto& z : a_) {
            const double r = z.real() / s, i = z.imag() / s;
            acc += r * r + i * i;
        }
        return s * std::sqrt(acc);
    }

private:
    static std::size_t check_dim(std::size_t dim) {
        if (dim == 0 || dim > max_dim)
            throw InvalidMatrixError("matrix dimension must be in [1, " +
                                     std::to_string(max_dim) + "], got " + std::to_string(dim));
        return dim;
    }

    void check_same_dim(const DenseMatrix& rhs) const {
        if (dim_ != rhs.dim_)
            throw InvalidMatrixError("dimension mismatch: " + std::to_string(dim_) + " vs " +
                                     std::to_string(rhs.dim_));
    }

    std::size_t dim_;
    std::vector<cplx> a_;
};

/// Throws InvalidMatrixError when any entry is NaN or infinite.
inline void require_finite(const DenseMatrix& m, const char* who) {
    if (!m.is_finite()) throw InvalidMatrixError(std::string(who) + ": non-finite matrix entry");
}

} // namespace coslaw

#endif
