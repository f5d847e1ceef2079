#ifndef COSLAW_LAWS_HPP
#define COSLAW_LAWS_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "coslaw/cosine.hpp"
#include "coslaw/norms.hpp"

namespace coslaw {

/// Grid and window layout for a sup scan of t -> ||C(t) - I||.
struct ScanConfig {
    double t_start = 0.0;
    double t_end = 1000.0;
    double step = 0.01;
    double window_len = 50.0;
    double overflow_cap = 1e6;
    double tol_zero = 1e-9;
    int last_windows = 3; ///< tail estimate takes the max over this many final windows
    int threads = 0;      ///< 0: honour COSLAW_THREADS, default 1

    /// Constraints used by every consumer, windowed or not.
    void validate_range() const {
        if (!(t_start >= 0.0)) throw ConfigError("scan: t_start must be nonnegative");
        if (!(t_end > t_start)) throw ConfigError("scan: t_end must exceed t_start");
        if (!(step > 0.0)) throw ConfigError("scan: step must be positive");
        if (!(overflow_cap > 0.0)) throw ConfigError("scan: overflow_cap must be positive");
        if (!(tol_zero >= 0.0)) throw ConfigError("scan: tol_zero must be nonnegative");
        if (last_windows < 1) throw ConfigError("scan: last_windows must be at least 1");
    }

    void validate() const {
        validate_range();
        if (!(step <= window_len)) throw ConfigError("scan: step must not exceed window_len");
        if (!(window_len <= t_end - t_start))
            throw ConfigError("scan: window_len must fit inside [t_start, t_end]");
    }
};

enum class Trend { Decreasing, Stable, Increasing };

struct WindowSup {
    double window_start = 0.0;
    double sup = 0.0;
};

/// Windowed sup summary of a scan. When a sample exceeds the overflow cap
/// (or an evaluator clamps), the scan stops after that window, the flag is
/// set, and limsup_estimate becomes +infinity with trend Increasing.
struct TailEstimate {
    std::vector<WindowSup> window_sups;
    double limsup_estimate = 0.0;
    bool overflowed = false;
    Trend trend = Trend::Stable;
    /// step * sup|spectrum|: valid sup-error bound when the generator
    /// spectrum is real, where |d/dt cos(lambda t)| <= |lambda|.
    std::optional<double> grid_error_bound;
};

struct ScanSample {
    double t = 0.0;
    double norm = 0.0;
};

/// Full scan outcome: the tail summary plus the grid itself.
struct ScanResult {
    TailEstimate tail;
    std::vector<ScanSample> samples; ///< t-ordered, truncated after an overflowing window
    double worst_t = 0.0;
    double worst_norm = 0.0;
};

namespace detail {

inline int resolve_threads(int requested) {
    int v = requested;
    if (v <= 0) {
        if (const char* env = std::getenv("COSLAW_THREADS")) v = std::atoi(env);
    }
    if (v <= 0) v = 1;
    return std::min(v, 64);
}

struct SamplePoint {
    double norm = 0.0;
    bool overflowed = false;
};

/// ||C(t) - I|| for either family shape; scalars bypass matrix machinery.
struct FamilySampler {
    const CosineFamily* fam;

    SamplePoint operator()(double t) const {
        if (const ScalarCosineFamily* sc = fam->scalar()) {
            const ScalarSample s = (*sc)(t);
            return {std::abs(s.value - 1.0), s.overflowed};
        }
        const MatrixSample s = (*fam)(t);
        DenseMatrix d = s.value;
        d -= DenseMatrix::identity(d.dim());
        return {operator_norm(d), s.overflowed};
    }
};

struct WindowOutcome {
    double sup = 0.0;
    bool overflowed = false;
    std::vector<ScanSample> samples;
};

/// Evaluate one window of the grid.
template <typename Sampler>
WindowOutcome scan_one_window(Sampler&& sample, const ScanConfig& cfg, std::size_t k_begin,
                              std::size_t k_end, bool collect) {
    WindowOutcome out;
    if (collect) out.samples.reserve(k_end - k_begin);
    for (std::size_t k = k_begin; k < k_end; ++k) {
        const double t = cfg.t_start + static_cast<double>(k) * cfg.step;
        const SamplePoint p = sample(t);
        if (collect) out.samples.push_back({t, p.norm});
        out.sup = std::max(out.sup, p.norm);
        // !(norm <= cap) also catches NaN from clamped garbage.
        if (p.overflowed || !(p.norm <= cfg.overflow_cap)) {
            out.overflowed = true;
            return out;
        }
    }
    return out;
}

inline Trend trend_of(const std::vector<WindowSup>& sups, int m, bool overflowed) {
    if (overflowed) return Trend::Increasing;
    const int w = static_cast<int>(sups.size());
    if (w < 2 * m) return Trend::Stable;
    double prev = 0.0, last = 0.0;
    for (int i = w - 2 * m; i < w - m; ++i) prev = std::max(prev, sups[i].sup);
    for (int i = w - m; i < w; ++i) last = std::max(last, sups[i].sup);
    const double base = std::max(prev, 1e-300);
    if (last > prev + 0.01 * base) return Trend::Increasing;
    if (last < prev - 0.01 * base) return Trend::Decreasing;
    return Trend::Stable;
}

inline double tail_max(const std::vector<WindowSup>& sups, int m) {
    double est = 0.0;
    const int w = static_cast<int>(sups.size());
    for (int i = std::max(0, w - m); i < w; ++i) est = std::max(est, sups[i].sup);
    return est;
}

/// Windowed scan over a uniform grid. Windows are independent, so they can
/// be computed on several threads and max-merged; the merge truncates at
/// the earliest overflowing window, which keeps the result identical to the
/// sequential short-circuit scan.
template <typename Sampler>
ScanResult scan_windows(Sampler&& sample, const ScanConfig& cfg, std::optional<double> lipschitz,
                        bool collect) {
    cfg.validate();
    const double span = cfg.t_end - cfg.t_start;
    const auto total = static_cast<std::size_t>(std::floor(span / cfg.step * (1.0 + 1e-12))) + 1;
    const auto wcount = static_cast<std::size_t>(std::ceil(span / cfg.window_len - 1e-12));
    const std::size_t windows = std::max<std::size_t>(wcount, 1);

    // k-ranges per window, by the window index of each grid time.
    std::vector<std::size_t> bounds(windows + 1, total);
    bounds[0] = 0;
    for (std::size_t w = 1; w < windows; ++w) {
        const double boundary = static_cast<double>(w) * cfg.window_len;
        bounds[w] =
            std::min(total, static_cast<std::size_t>(std::ceil(boundary / cfg.step - 1e-9)));
    }
    for (std::size_t w = 1; w <= windows; ++w) bounds[w] = std::max(bounds[w], bounds[w - 1]);

    std::vector<WindowOutcome> outs(windows);
    const int nthreads = resolve_threads(cfg.threads);
    if (nthreads <= 1) {
        for (std::size_t w = 0; w < windows; ++w) {
            outs[w] = scan_one_window(sample, cfg, bounds[w], bounds[w + 1], collect);
            if (outs[w].overflowed) {
                outs.resize(w + 1);
                break;
            }
        }
    } else {
        std::vector<std::thread> pool;
        const std::size_t stride = static_cast<std::size_t>(nthreads);
        for (std::size_t th = 0; th < stride; ++th)
            pool.emplace_back([&, th]() {
                for (std::size_t w = th; w < windows; w += stride)
                    outs[w] = scan_one_window(sample, cfg, bounds[w], bounds[w + 1], collect);
            });
        for (auto& t : pool) t.join();
        for (std::size_t w = 0; w < windows; ++w)
            if (outs[w].overflowed) {
                outs.resize(w + 1);
                break;
            }
    }

    ScanResult res;
    res.tail.grid_error_bound = lipschitz;
    res.tail.overflowed = !outs.empty() && outs.back().overflowed;
    res.tail.window_sups.reserve(outs.size());
    for (std::size_t w = 0; w < outs.size(); ++w)
        res.tail.window_sups.push_back(
            {cfg.t_start + static_cast<double>(w) * cfg.window_len, outs[w].sup});

    for (const auto& o : outs) {
        if (collect) res.samples.insert(res.samples.end(), o.samples.begin(), o.samples.end());
    }
    if (collect) {
        for (const auto& s : res.samples)
            if (s.norm > res.worst_norm) {
                res.worst_norm = s.norm;
                res.worst_t = s.t;
            }
    } else {
        for (std::size_t w = 0; w < outs.size(); ++w)
            if (outs[w].sup > res.worst_norm) {
                res.worst_norm = outs[w].sup;
                res.worst_t = res.tail.window_sups[w].window_start;
            }
    }

    res.tail.limsup_estimate = res.tail.overflowed
                                   ? std::numeric_limits<double>::infinity()
                                   : tail_max(res.tail.window_sups, cfg.last_windows);
    res.tail.trend = trend_of(res.tail.window_sups, cfg.last_windows, res.tail.overflowed);
    return res;
}

/// Grid Lipschitz bound for the family, when its spectrum is real.
inline std::optional<double> grid_bound_for(const CosineFamily& fam, double step) {
    const auto spec = fam.spectrum();
    if (!spec) return std::nullopt;
    double mag = 0.0;
    for (const cplx& z : *spec) {
        if (std::abs(z.imag()) > 1e-9 * (1.0 + std::abs(z))) return std::nullopt;
        mag = std::max(mag, std::abs(z));
    }
    return step * mag;
}

} // namespace detail

/// Windowed sup scan of t -> ||C(t) - I|| over [t_start, t_end].
inline TailEstimate windowed_sup_scan(const CosineFamily& fam, const ScanConfig& cfg) {
    return detail::scan_windows(detail::FamilySampler{&fam}, cfg,
                                detail::grid_bound_for(fam, cfg.step), false)
        .tail;
}

/// Like windowed_sup_scan but keeps the full (t, norm) grid.
inline ScanResult windowed_sup_scan_full(const CosineFamily& fam, const ScanConfig& cfg) {
    return detail::scan_windows(detail::FamilySampler{&fam}, cfg,
                                detail::grid_bound_for(fam, cfg.step), true);
}

enum class LimitPoint { Zero, Infinity };
enum class DichotomyClass { Zero, Two, Infinite, Indeterminate };

/// Half-width of the acceptance band around the limit value 2.
constexpr double dichotomy_tolerance = 0.05;

struct DichotomyResult {
    DichotomyClass cls = DichotomyClass::Indeterminate;
    TailEstimate evidence;
    /// Only present for class Zero at t0 = 0: the nonnegative a with
    /// c(t) = cos(a t) recovered from the scan grid.
    std::optional<double> recovered_a;
};

namespace detail {

/// Scan toward t = 0 over dyadic windows [T 2^-(j+1), T 2^-j]. Windows are
/// ordered coarse to fine, so the "last" windows are the ones nearest 0 and
/// the tail estimate reads as an estimate of limsup_{t -> 0}. A coarse
/// window blowing past the cap is recorded but does not abort the ladder:
/// only overflow inside the tail windows makes the estimate Overflowed.
inline ScanResult shrinking_scan(const ScalarCosineFamily& fam, const ScanConfig& cfg) {
    cfg.validate_range();
    constexpr int levels = 40;
    constexpr int per_window = 64;
    ScanResult res;
    res.tail.grid_error_bound = std::nullopt;
    std::vector<char> window_over;
    for (int j = 0; j < levels; ++j) {
        const double hi = cfg.t_end * std::pow(0.5, j);
        const double lo = 0.5 * hi;
        const double h = (hi - lo) / per_window;
        double sup = 0.0;
        bool over = false;
        for (int i = 1; i <= per_window; ++i) {
            const double t = lo + h * static_cast<double>(i);
            const ScalarSample s = fam(t);
            const double nrm = std::abs(s.value - 1.0);
            res.samples.push_back({t, nrm});
            sup = std::max(sup, nrm);
            if (nrm > res.worst_norm) {
                res.worst_norm = nrm;
                res.worst_t = t;
            }
            if (s.overflowed || !(nrm <= cfg.overflow_cap)) over = true;
        }
        res.tail.window_sups.push_back({lo, sup});
        window_over.push_back(over ? 1 : 0);
    }
    const int m = std::min(cfg.last_windows, levels);
    bool tail_over = false;
    for (int j = levels - m; j < levels; ++j) tail_over = tail_over || window_over[j] != 0;
    res.tail.overflowed = tail_over;
    res.tail.limsup_estimate = tail_over ? std::numeric_limits<double>::infinity()
                                         : tail_max(res.tail.window_sups, cfg.last_windows);
    res.tail.trend = trend_of(res.tail.window_sups, cfg.last_windows, tail_over);
    return res;
}

/// Fit a >= 0 in c(t) = cos(a t) from the scan grid of a shrinking scan.
/// Picks the finest window carrying clear signal (so |a t| < pi there),
/// inverts the cosine at its peak sample, and cross-checks the fit at a
/// second sample before accepting.
inline std::optional<double> fit_recovered_a(const ScalarCosineFamily& fam,
                                             const ScanResult& sr) {
    if (sr.samples.empty()) return std::nullopt;
    constexpr int per_window = 64;
    const auto& sups = sr.tail.window_sups;
    int pick = -1;
    for (int j = static_cast<int>(sups.size()) - 1; j >= 0; --j) {
        if (sups[j].sup >= 0.05 && sups[j].sup <= 1.9) {
            pick = j;
            break;
        }
    }
    double t_star = 0.0;
    if (pick < 0) {
        // No window with O(1) signal: either a is (near) zero and the whole
        // grid is flat, or |a| is too large for the window ladder. Only the
        // flat case is fittable.
        if (sr.worst_norm > 0.05) return std::nullopt;
        t_star = sr.worst_norm > 0.0 ? sr.worst_t : sr.samples.front().t;
    } else {
        const std::size_t k0 = static_cast<std::size_t>(pick) * per_window;
        const std::size_t k1 = std::min(sr.samples.size(), k0 + per_window);
        double best = -1.0;
        for (std::size_t k = k0; k < k1; ++k)
            if (sr.samples[k].norm > best) {
                best = sr.samples[k].norm;
                t_star = sr.samples[k].t;
            }
    }

    const cplx c_star = fam(t_star).value;
    if (std::abs(c_star.imag()) > 1e-6) return std::nullopt;
    const double clamped = std::clamp(c_star.real(), -1.0, 1.0);
    const double a_fit = std::acos(clamped) / t_star;

    const double t2 = 0.5 * t_star;
    const cplx c2 = fam(t2).value;
    if (std::abs(c2.imag()) > 1e-6) return std::nullopt;
    if (std::abs(std::cos(a_fit * t2) - c2.real()) > 1e-6) return std::nullopt;
    return a_fit;
}

inline DichotomyClass classify_estimate(const TailEstimate& e, double tol_zero) {
    if (e.overflowed || e.limsup_estimate > 2.0 + dichotomy_tolerance)
        return DichotomyClass::Infinite;
    if (std::abs(e.limsup_estimate - 2.0) <= dichotomy_tolerance) return DichotomyClass::Two;
    if (e.limsup_estimate <= tol_zero) return DichotomyClass::Zero;
    return DichotomyClass::Indeterminate;
}

} // namespace detail

/// Classify limsup_{t -> t0} |cos(a t) - 1| as 0, 2, or infinity.
///
/// At infinity the scan runs over cfg's grid; at zero it runs over dyadic
/// shrinking windows below cfg.t_end. A finite estimate above 2 + tol is
/// classified Infinite: scalar cosine tails accumulate at 0, 2, or infinity
/// only, so a value beyond the band around 2 witnesses unbounded growth
/// even before the overflow cap is reached.
inline DichotomyResult classify_scalar_dichotomy(cplx a, LimitPoint t0, const ScanConfig& cfg) {
    const ScalarCosineFamily fam(a);
    DichotomyResult out;
    if (t0 == LimitPoint::Infinity) {
        out.evidence = windowed_sup_scan(CosineFamily(fam), cfg);
        out.cls = detail::classify_estimate(out.evidence, cfg.tol_zero);
        return out;
    }
    const ScanResult sr = detail::shrinking_scan(fam, cfg);
    out.evidence = sr.tail;
    out.cls = detail::classify_estimate(out.evidence, cfg.tol_zero);
    if (out.cls == DichotomyClass::Zero) out.recovered_a = detail::fit_recovered_a(fam, sr);
    return out;
}

/// Verdict of one run of the limsup-at-infinity law
///   limsup_{t->inf} ||C(t) - I|| < r  ==>  C == I.
struct LawVerdict {
    double threshold_r = 2.0;
    bool premise_holds = false;
    bool conclusion_holds = false;
    double worst_t = 0.0;
    double worst_norm = 0.0;
    TailEstimate evidence;
};

/// Scan-based check of the law above. The premise is judged from the tail
/// estimate; the conclusion demands every grid sample lie at the identity
/// (within tol_zero) and, for matrix families, that the generator vanish.
inline LawVerdict law_check_limsup_infinity(const CosineFamily& fam, double r,
                                            const ScanConfig& cfg) {
    if (!(r > 0.0) || r > 2.0)
        throw DomainError("law_check_limsup_infinity: threshold must lie in (0, 2]");
    const ScanResult sr = windowed_sup_scan_full(fam, cfg);
    LawVerdict v;
    v.threshold_r = r;
    v.evidence = sr.tail;
    v.worst_t = sr.worst_t;
    v.worst_norm = sr.worst_norm;
    v.premise_holds = !sr.tail.overflowed && sr.tail.limsup_estimate < r;
    bool conclusion = sr.worst_norm <= cfg.tol_zero;
    if (!fam.is_scalar()) conclusion = conclusion && fam.generator_norm() <= cfg.tol_zero;
    v.conclusion_holds = conclusion;
    return v;
}

/// Both sides of the identity rho(C(t) - I) = max_i |cos(t b_i) - 1| for a
/// diagonal generator. The left side goes through the full spectral-radius
/// machinery on the assembled matrix; the right side reads the diagonal.
struct GelfandCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool overflowed = false;
};

inline GelfandCheck gelfand_check(const std::vector<cplx>& b, double t) {
    if (b.empty() || b.size() > DenseMatrix::max_dim)
        throw DomainError("gelfand_check: diagonal length must be in [1, 256]");
    const std::size_t n = b.size();
    DenseMatrix D(n);
    GelfandCheck out;
    for (std::size_t i = 0; i < n; ++i) {
        const ScalarSample s = eval_scalar(b[i], t);
        out.overflowed |= s.overflowed;
        D(i, i) = s.value - 1.0;
        out.rhs = std::max(out.rhs, std::abs(s.value - 1.0));
    }
    const SpectralRadiusResult sr = spectral_radius(D);
    out.lhs = sr.value;
    out.overflowed |= sr.overflowed;
    return out;
}

/// Fixed-point iteration of g(S) = 1 - sqrt(1 - S/2) on [0, 1].
/// g is a contraction with unique fixed point 0, so the iteration drains
/// any admissible start to zero; `iterations` counts applications of g
/// until the step size drops below 1e-14.
struct ContractionResult {
    double limit = 0.0;
    int iterations = 0;
};

inline ContractionResult contraction_S_iteration(double S0) {
    if (!(S0 >= 0.0 && S0 <= 1.0))
        throw DomainError("contraction_S_iteration: start must lie in [0, 1]");
    ContractionResult out;
    double s = S0;
    while (out.iterations < 200) {
        const double next = 1.0 - std::sqrt(1.0 - 0.5 * s);
        ++out.iterations;
        const double delta = std::abs(next - s);
        s = next;
        if (delta < 1e-14) break;
    }
    out.limit = s;
    return out;
}

/// sup_t |cos(b t) - cos(a t)| over the grid, sharpened by golden-section
/// refinement around the best grid point to ~1e-9 in t.
inline double scaled_gap_witness(double a, double b, const ScanConfig& cfg) {
    cfg.validate_range();
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("scaled_gap_witness: parameters must be finite");
    const auto f = [&](double t) { return std::abs(std::cos(b * t) - std::cos(a * t)); };

    double best_t = cfg.t_start, best = f(cfg.t_start);
    const auto total =
        static_cast<std::size_t>(std::floor((cfg.t_end - cfg.t_start) / cfg.step * (1.0 + 1e-12)));
    for (std::size_t k = 1; k <= total; ++k) {
        const double t = cfg.t_start + static_cast<double>(k) * cfg.step;
        const double v = f(t);
        if (v > best) {
            best = v;
            best_t = t;
        }
    }

    double lo = std::max(cfg.t_start, best_t - cfg.step);
    double hi = std::min(cfg.t_end, best_t + cfg.step);
    const double gr = 0.6180339887498949; // (sqrt(5) - 1) / 2
    double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
    double fc = f(c), fd = f(d);
    while (hi - lo > 1e-9) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = f(d);
        }
    }
    return std::max(best, f(0.5 * (lo + hi)));
}

} // namespace coslaw

#endif
