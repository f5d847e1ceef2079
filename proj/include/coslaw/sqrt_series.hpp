#ifndef COSLAW_SQRT_SERIES_HPP
#define COSLAW_SQRT_SERIES_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "coslaw/complex_matrix.hpp"
#include "coslaw/norms.hpp"

namespace coslaw {

/// Coefficients of sqrt(1 - z) = sum_n (-1)^n alpha_n z^n, generated by
/// alpha_0 = 1, alpha_n = alpha_{n-1} (3/2 - n) / n.
/// So alpha_1 = 1/2, alpha_2 = -1/8, alpha_3 = 1/16, alpha_4 = -5/128, and
/// for n >= 1 the sign alternates as (-1)^(n-1).
inline std::vector<double> binom_sqrt_coeffs(std::size_t count) {
    std::vector<double> alpha(count);
    if (count == 0) return alpha;
    alpha[0] = 1.0;
    for (std::size_t n = 1; n < count; ++n)
        alpha[n] = alpha[n - 1] * (1.5 - static_cast<double>(n)) / static_cast<double>(n);
    return alpha;
}

/// Outcome of a truncated series evaluation. `tail_bound` is the certified
/// remainder of the scalar majorant sum_{n>N} |alpha_n| ||x||^n, which
/// telescopes exactly to (1 - sqrt(1-r)) - sum_{n<=N} |alpha_n| r^n.
struct SeriesResult {
    DenseMatrix value;
    std::size_t terms_used = 0;
    double tail_bound = 0.0;
};

namespace detail {

/// Number of series terms needed to push the scalar majorant tail at radius
/// r below `tail_target`. Kahan summation keeps the partial sums accurate
/// enough that the subtraction against 1 - sqrt(1-r) stays meaningful.
/// Returns the pair (terms N, achieved tail), or nothing if the budget runs
/// out, which only happens within ~1e-4 of the boundary of the disk.
inline std::optional<std::pair<std::size_t, double>> majorant_terms(double r,
                                                                    double tail_target) {
    const double total = 1.0 - std::sqrt(1.0 - r); // sum_{n>=1} |alpha_n| r^n
    double alpha = 1.0;                            // alpha_n along the recurrence
    double rn = 1.0;                               // r^n
    double partial = 0.0, comp = 0.0;
    constexpr std::size_t budget = 2'000'000;
    for (std::size_t n = 1; n <= budget; ++n) {
        alpha *= (1.5 - static_cast<double>(n)) / static_cast<double>(n);
        rn *= r;
        const double term = std::abs(alpha) * rn - comp;
        const double next = partial + term;
        comp = (next - partial) - term;
        partial = next;
        const double tail = total - partial;
        if (tail < tail_target) return std::make_pair(n, std::max(tail, 0.0));
    }
    return std::nullopt;
}

} // namespace detail

/// sqrt(I - x) by the binomial series, valid on ||x|| <= 1 - margin.
///
/// The term count is fixed up front from the scalar majorant at r = ||x||,
/// so the reported tail_bound < 1e-14 is a certified truncation bound. The
/// result is the principal square root: Y^2 = I - x with ||Y^2-(I-x)||
/// <= 1e-10, enforced before returning.
inline SeriesResult sqrt_one_minus(const DenseMatrix& x, double margin = 1e-6) {
    if (!(margin >= 1e-6) || margin >= 1.0)
        throw DomainError("sqrt_one_minus: margin must lie in [1e-6, 1)");
    require_finite(x, "sqrt_one_minus");
    const double r = operator_norm(x);
    if (r > 1.0 - margin)
        throw OutsideDiskError("sqrt_one_minus: ||x|| = " + std::to_string(r) +
                               " exceeds 1 - margin = " + std::to_string(1.0 - margin));

    const auto plan = detail::majorant_terms(r, 1e-14);
    if (!plan)
        throw OutsideDiskError(
            "sqrt_one_minus: ||x|| = " + std::to_string(r) +
            " is too close to the unit disk boundary for the series budget");
    const auto [last_n, tail] = *plan;

    const std::size_t n = x.dim();
    DenseMatrix sum = DenseMatrix::identity(n);
    DenseMatrix term = DenseMatrix::identity(n); // (-1)^m alpha_m x^m
    for (std::size_t m = 1; m <= last_n; ++m) {
        term = term * x;
        // (-1)^m alpha_m / ((-1)^(m-1) alpha_(m-1)) = (m - 3/2) / m
        term *= cplx((static_cast<double>(m) - 1.5) / static_cast<double>(m));
        sum += term;
    }

    DenseMatrix check = sum * sum;
    check += x;
    check -= DenseMatrix::identity(n);
    if (operator_norm(check) > 1e-10)
        throw NoConvergenceError("sqrt_one_minus: square residual above 1e-10");

    return {std::move(sum), last_n + 1, tail};
}

/// Two sides of the square-root defect inequality
///   ||I - sqrt(I - x)|| <= 1 - sqrt(1 - ||x||),
/// with equality when x is a nonnegative multiple of the identity.
struct SqrtBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

inline SqrtBoundCheck verify_sqrt_bound(const DenseMatrix& x, double margin = 1e-6) {
    const SeriesResult y = sqrt_one_minus(x, margin);
    SqrtBoundCheck out;
    out.lhs = operator_norm(DenseMatrix::identity(x.dim()) - y.value);
    out.rhs = 1.0 - std::sqrt(1.0 - operator_norm(x));
    out.holds = out.lhs <= out.rhs + 1e-10;
    return out;
}

/// Cosine halving: given C(2s) with ||C(2s) - I|| <= 2 (1 - margin), the
/// element C(s) = sqrt(I - (I - C(2s)) / 2) satisfies the double-angle
/// identity 2 C(s)^2 - I = C(2s) up to twice the square residual.
inline SeriesResult halve(const DenseMatrix& c2s, double margin = 1e-6) {
    DenseMatrix x = DenseMatrix::identity(c2s.dim());
    x -= c2s;
    x *= cplx(0.5);
    return sqrt_one_minus(x, margin);
}

/// Repeated halving C(1) -> C(1/2) -> ... -> C(2^-depth).
/// stages[j] holds C(2^-(j+1)); on an out-of-disk failure the stages built
/// so far are returned together with the index that failed.
struct DyadicReconstruction {
    std::vector<DenseMatrix> stages;
    std::optional<std::size_t> failed_stage;
};

inline DyadicReconstruction dyadic_reconstruct(const DenseMatrix& c1, std::size_t depth,
                                               double margin = 1e-6) {
    DyadicReconstruction out;
    DenseMatrix cur = c1;
    for (std::size_t j = 0; j < depth; ++j) {
        try {
            SeriesResult half = halve(cur, margin);
            cur = half.value;
            out.stages.push_back(cur);
        } catch (const OutsideDiskError&) {
            out.failed_stage = j;
            return out;
        }
    }
    return out;
}

} // namespace coslaw

#endif
