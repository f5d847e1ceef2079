#ifndef COSLAW_TESTS_SUPPORT_HPP
#define COSLAW_TESTS_SUPPORT_HPP

#include <cstddef>

#include "coslaw/coslaw.hpp"

namespace testsupport {

using coslaw::cplx;
using coslaw::DenseMatrix;

inline DenseMatrix random_matrix(coslaw::Rng& rng, std::size_t dim) {
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(i, j) = rng.complex_gaussian();
    return m;
}

inline DenseMatrix random_hermitian(coslaw::Rng& rng, std::size_t dim) {
    DenseMatrix g = random_matrix(rng, dim);
    DenseMatrix h = g.adjoint();
    h += g;
    h *= cplx(0.5);
    return h;
}

/// Rescale to an exact target operator norm; gaussian draws are never the
/// zero matrix in practice, but guard anyway.
inline DenseMatrix scaled_to_norm(DenseMatrix m, double target) {
    const double nm = coslaw::operator_norm(m);
    if (nm == 0.0) {
        m(0, 0) = target;
        return m;
    }
    m *= cplx(target / nm);
    return m;
}

inline DenseMatrix scalar1x1(cplx z) {
    DenseMatrix m(1);
    m(0, 0) = z;
    return m;
}

} // namespace testsupport

#endif
