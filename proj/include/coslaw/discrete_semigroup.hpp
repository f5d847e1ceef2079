#ifndef COSLAW_DISCRETE_SEMIGROUP_HPP
#define COSLAW_DISCRETE_SEMIGROUP_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <vector>

#include "coslaw/cosine.hpp"
#include "coslaw/laws.hpp"
#include "coslaw/norms.hpp"

namespace coslaw {

namespace detail {

/// Saturate entries at the overflow cap; returns whether anything clamped.
/// Non-finite entries (inf - inf artifacts) become the cap with direction
/// lost; values past the first clamp are placeholders, the flag is the data.
inline bool clamp_entries(DenseMatrix& m) {
    bool clamped = false;
    const std::size_t n = m.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx& z = m(i, j);
            if (!finite(z)) {
                z = cplx(overflow_magnitude_cap, 0.0);
                clamped = true;
                continue;
            }
            const double mag = std::abs(z);
            if (mag > overflow_magnitude_cap) {
                z *= overflow_magnitude_cap / mag;
                clamped = true;
            }
        }
    return clamped;
}

/// Tail summary over integer-indexed norms with `blocks` equal windows.
/// limsup_estimate is the exact max over the tail [N/2, N] (integer scans
/// afford exactness; no windowed heuristic needed), +inf after overflow.
inline TailEstimate integer_tail_evidence(const std::vector<double>& norms, long long N,
                                          bool overflowed, int last_windows) {
    constexpr int blocks = 16;
    TailEstimate e;
    e.overflowed = overflowed;
    const auto have = static_cast<long long>(norms.size()); // norms[k] is index k
    const double width = static_cast<double>(N + 1) / blocks;
    for (int b = 0; b < blocks; ++b) {
        const auto lo = static_cast<long long>(std::floor(width * b));
        auto hi = static_cast<long long>(std::floor(width * (b + 1)));
        if (b == blocks - 1) hi = N + 1;
        if (lo >= have) break;
        double sup = 0.0;
        for (long long k = lo; k < std::min(hi, have); ++k) sup = std::max(sup, norms[k]);
        e.window_sups.push_back({static_cast<double>(lo), sup});
    }
    if (overflowed) {
        e.limsup_estimate = std::numeric_limits<double>::infinity();
    } else {
        double tail = 0.0;
        for (long long k = (N + 1) / 2; k < have; ++k) tail = std::max(tail, norms[k]);
        e.limsup_estimate = tail;
    }
    e.trend = trend_of(e.window_sups, last_windows, overflowed);
    return e;
}

} // namespace detail

/// Integer-argument cosine sequence C(n) from C(1) = X via the three-term
/// recurrence C(n+1) = 2 X C(n) - C(n-1), with C(0) = I and C(-n) = C(n).
/// Values are cached append-only up to a memory budget and streamed beyond
/// it; entries saturate at the overflow cap with a sticky per-index flag.
class DiscreteCosineSequence {
public:
    static constexpr long long max_index = 1'000'000;

    explicit DiscreteCosineSequence(DenseMatrix x) : x_(std::move(x)) {
        require_finite(x_, "DiscreteCosineSequence");
        cache_limit_ = std::max<std::size_t>(2, 4'000'000 / (x_.dim() * x_.dim()));
        cache_.push_back(DenseMatrix::identity(x_.dim()));
        cache_.push_back(x_);
    }

    std::size_t dim() const { return x_.dim(); }
    const DenseMatrix& step_element() const { return x_; }

    /// C(|n|); the overflow flag covers every index at or past the first
    /// saturation.
    MatrixSample at(long long n) const {
        if (n == std::numeric_limits<long long>::min() || std::abs(n) > max_index)
            throw DomainError("DiscreteCosineSequence: |n| must not exceed 1e6");
        const auto idx = static_cast<std::size_t>(std::abs(n));
        std::lock_guard<std::mutex> lock(mu_);
        if (idx < cache_.size()) return {cache_[idx], overflowed_at(idx)};

        DenseMatrix prev = cache_[cache_.size() - 2];
        DenseMatrix cur = cache_.back();
        for (std::size_t k = cache_.size(); k <= idx; ++k) {
            DenseMatrix next = x_ * cur;
            next *= cplx(2.0);
            next -= prev;
            if (detail::clamp_entries(next) && !first_overflow_) first_overflow_ = k;
            prev = std::move(cur);
            cur = std::move(next);
            if (cache_.size() < cache_limit_) cache_.push_back(cur);
        }
        return {cur, overflowed_at(idx)};
    }

private:
    bool overflowed_at(std::size_t idx) const {
        return first_overflow_.has_value() && idx >= *first_overflow_;
    }

    DenseMatrix x_;
    std::size_t cache_limit_;
    mutable std::mutex mu_;
    mutable std::vector<DenseMatrix> cache_;
    mutable std::optional<std::size_t> first_overflow_;
};

inline MatrixSample discrete_eval(const DiscreteCosineSequence& seq, long long n) {
    return seq.at(n);
}

/// Integer form of the limsup law: tail control below r on [N/2, N] should
/// force the whole sequence to sit at the identity. The guarantee zone is
/// r <= 3/2; the scalar X = -1/2 cycle attains tail max 3/2 exactly.
inline LawVerdict discrete_law_check(const DiscreteCosineSequence& seq, double r, long long N,
                                     double tol_zero = 1e-9) {
    if (!(r > 0.0) || r > 1.5)
        throw DomainError("discrete_law_check: threshold must lie in (0, 3/2]");
    if (N < 100) throw DomainError("discrete_law_check: N must be at least 100");

    const std::size_t dim = seq.dim();
    const DenseMatrix eye = DenseMatrix::identity(dim);
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>(N) + 1);
    bool overflowed = false;
    LawVerdict v;
    v.threshold_r = r;
    bool all_zero = true;
    for (long long k = 0; k <= N; ++k) {
        const MatrixSample s = seq.at(k);
        if (s.overflowed) {
            overflowed = true;
            break;
        }
        DenseMatrix d = s.value;
        d -= eye;
        const double nrm = operator_norm(d);
        norms.push_back(nrm);
        if (nrm > v.worst_norm) {
            v.worst_norm = nrm;
            v.worst_t = static_cast<double>(k);
        }
        all_zero = all_zero && nrm <= tol_zero;
    }
    v.evidence = detail::integer_tail_evidence(norms, N, overflowed, 3);
    v.premise_holds = !overflowed && v.evidence.limsup_estimate < r;

    DenseMatrix x_dev = seq.step_element();
    x_dev -= eye;
    v.conclusion_holds = !overflowed && all_zero && operator_norm(x_dev) <= tol_zero;
    return v;
}

/// Powers T, T^2, ... of a fixed algebra element.
class PowerSemigroup {
public:
    explicit PowerSemigroup(DenseMatrix t) : t_(std::move(t)) {
        require_finite(t_, "PowerSemigroup");
    }

    std::size_t dim() const { return t_.dim(); }
    const DenseMatrix& element() const { return t_; }

    /// T^n by binary exponentiation, n >= 1; entries saturate at the cap.
    MatrixSample power(long long n) const {
        if (n < 1) throw DomainError("PowerSemigroup: exponent must be at least 1");
        MatrixSample out{DenseMatrix::identity(t_.dim()), false};
        DenseMatrix base = t_;
        bool base_over = false;
        while (n > 0) {
            if (n & 1) {
                out.value = out.value * base;
                out.overflowed |= base_over | detail::clamp_entries(out.value);
            }
            n >>= 1;
            if (n > 0) {
                base = base * base;
                base_over |= detail::clamp_entries(base);
            }
        }
        return out;
    }

private:
    DenseMatrix t_;
};

inline MatrixSample semigroup_eval(const PowerSemigroup& sg, long long n) {
    return sg.power(n);
}

/// Cesaro averages A_n = (1/n) sum_{j<=n} ||T^j - I|| and their tail
/// minimum. A tail liminf below 1 is the semigroup trivial-family criterion;
/// small-n averages are also recorded since A_1 = ||T - I|| can undercut the
/// tail for contractive T.
struct CesaroResult {
    double liminf_estimate = 0.0; ///< min of A_n over n in [N/2, N]; +inf on overflow
    bool overflowed = false;
    std::vector<double> averages; ///< A_1 .. A_N (truncated at overflow)
};

inline CesaroResult cesaro_wallen(const PowerSemigroup& sg, long long N) {
    if (N < 10) throw DomainError("cesaro_wallen: N must be at least 10");
    const DenseMatrix eye = DenseMatrix::identity(sg.dim());
    CesaroResult out;
    out.averages.reserve(static_cast<std::size_t>(N));
    DenseMatrix p = eye;
    double sum = 0.0;
    for (long long j = 1; j <= N; ++j) {
        p = p * sg.element();
        if (detail::clamp_entries(p)) {
            out.overflowed = true;
            break;
        }
        DenseMatrix d = p;
        d -= eye;
        sum += operator_norm(d);
        out.averages.push_back(sum / static_cast<double>(j));
    }
    if (out.overflowed) {
        out.liminf_estimate = std::numeric_limits<double>::infinity();
        return out;
    }
    double liminf = std::numeric_limits<double>::infinity();
    for (long long n = (N + 1) / 2; n <= N; ++n)
        liminf = std::min(liminf, out.averages[static_cast<std::size_t>(n - 1)]);
    out.liminf_estimate = liminf;
    return out;
}

/// Discrete semigroup law: tail max of ||T^n - I|| below r on [N/2, N]
/// should force T = I. Guarantee zone r <= 1.
inline LawVerdict semigroup_law_check(const PowerSemigroup& sg, double r, long long N,
                                      double tol_zero = 1e-9) {
    if (!(r > 0.0) || r > 1.0)
        throw DomainError("semigroup_law_check: threshold must lie in (0, 1]");
    if (N < 100) throw DomainError("semigroup_law_check: N must be at least 100");

    const DenseMatrix eye = DenseMatrix::identity(sg.dim());
    std::vector<double> norms{0.0}; // index 0 is T^0 = I
    norms.reserve(static_cast<std::size_t>(N) + 1);
    bool overflowed = false;
    LawVerdict v;
    v.threshold_r = r;
    DenseMatrix p = eye;
    for (long long j = 1; j <= N; ++j) {
        p = p * sg.element();
        if (detail::clamp_entries(p)) {
            overflowed = true;
            break;
        }
        DenseMatrix d = p;
        d -= eye;
        const double nrm = operator_norm(d);
        norms.push_back(nrm);
        if (nrm > v.worst_norm) {
            v.worst_norm = nrm;
            v.worst_t = static_cast<double>(j);
        }
    }
    v.evidence = detail::integer_tail_evidence(norms, N, overflowed, 3);
    v.premise_holds = !overflowed && v.evidence.limsup_estimate < r;

    DenseMatrix t_dev = sg.element();
    t_dev -= eye;
    v.conclusion_holds = operator_norm(t_dev) <= tol_zero;
    return v;
}

/// exp(g) by Taylor summation on the halved argument (||.|| <= 0.5) followed
/// by repeated squaring exp(2u) = exp(u)^2.
inline DenseMatrix matrix_exp(const DenseMatrix& g) {
    require_finite(g, "matrix_exp");
    const double nm = operator_norm(g);
    int k = 0;
    for (double scaled = nm; scaled > 0.5 && k < 64; scaled *= 0.5) ++k;
    DenseMatrix x = g;
    x *= cplx(std::ldexp(1.0, -k));
    const std::size_t n = g.dim();
    DenseMatrix sum = DenseMatrix::identity(n);
    DenseMatrix term = DenseMatrix::identity(n);
    for (int m = 1; m <= 64; ++m) {
        term = term * x;
        term *= cplx(1.0 / static_cast<double>(m));
        sum += term;
        if (term.max_abs() < 1e-18) break;
    }
    for (int i = 0; i < k; ++i) sum = sum * sum;
    return sum;
}

/// Continuous version of the semigroup law over T(t) = exp(tG), scanned on
/// cfg's grid. Conclusion is the vanishing of the generator.
inline LawVerdict matrix_exp_semigroup_check(const DenseMatrix& G, double r,
                                             const ScanConfig& cfg) {
    if (!(r > 0.0) || r > 1.0)
        throw DomainError("matrix_exp_semigroup_check: threshold must lie in (0, 1]");
    const double gnorm = operator_norm(G);
    if (gnorm * cfg.t_end > 100.0)
        throw DomainError("matrix_exp_semigroup_check: ||G|| * t_end must not exceed 100");

    const DenseMatrix eye = DenseMatrix::identity(G.dim());
    const auto sampler = [&](double t) -> detail::SamplePoint {
        DenseMatrix tg = G;
        tg *= cplx(t);
        DenseMatrix d = matrix_exp(tg);
        d -= eye;
        return {operator_norm(d), false};
    };
    const ScanResult sr = detail::scan_windows(sampler, cfg, std::nullopt, false);

    LawVerdict v;
    v.threshold_r = r;
    v.evidence = sr.tail;
    v.worst_t = sr.worst_t;
    v.worst_norm = sr.worst_norm;
    v.premise_holds = !sr.tail.overflowed && sr.tail.limsup_estimate < r;
    v.conclusion_holds = gnorm <= cfg.tol_zero;
    return v;
}

} // namespace coslaw

#endif
