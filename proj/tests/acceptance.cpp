// Acceptance gate: twelve numbered checks, one line of output each.
// Every tolerance is pinned here, not read from configuration.

#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "coslaw/coslaw.hpp"
#include "support.hpp"

using coslaw::cplx;
using coslaw::CosineFamily;
using coslaw::CosineStrategy;
using coslaw::DenseMatrix;
using coslaw::DichotomyClass;
using coslaw::LimitPoint;
using coslaw::MatrixCosineFamily;
using coslaw::ScalarCosineFamily;
using coslaw::ScanConfig;
using testsupport::random_hermitian;
using testsupport::random_matrix;
using testsupport::scalar1x1;
using testsupport::scaled_to_norm;

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double scaled_gap_target = 1.539600717839002; // 8 / (3 sqrt(3))
constexpr double four_over_pi = 1.2732395447351628;

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, name,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double dev_norm(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix d = a;
    d -= b;
    return coslaw::operator_norm(d);
}

// 1: the scalar step -1/2 cycles through {1, -1/2, -1/2}, so the tail sup of
// ||C(n) - I|| over [5e3, 1e4] is exactly 3/2.
void criterion_1() {
    const coslaw::DiscreteCosineSequence seq(scalar1x1(cplx(-0.5)));
    double tail = 0.0;
    for (long long n = 5000; n <= 10000; ++n)
        tail = std::max(tail, std::abs(seq.at(n).value(0, 0) - cplx(1.0)));
    report(1, "discrete tail sup for step -1/2 is exactly 1.5", tail == 1.5,
           "tail " + num(tail));
}

// 2: sup_t |cos(3t) - cos(t)| = max|4c^3 - 4c| = 8 / (3 sqrt(3)).
void criterion_2() {
    const double gap = coslaw::scaled_gap_witness(1.0, 3.0, ScanConfig{});
    const double diff = std::abs(gap - scaled_gap_target);
    report(2, "scaled gap witness(1,3) hits 8/(3*sqrt(3)) within 1e-6", diff <= 1e-6,
           "gap " + num(gap) + ", |diff| " + num(diff));
}

// 3: scalar dichotomy: a = 0 -> Zero; real a in [0.1, 10] -> Two with tail
// estimate >= 1.999; |Im a| >= 0.01 -> Infinite. No misclassification.
void criterion_3() {
    int bad = 0;
    double min_two_est = 2.0;

    if (coslaw::classify_scalar_dichotomy(cplx(0.0), LimitPoint::Infinity, ScanConfig{}).cls !=
        DichotomyClass::Zero)
        ++bad;

    coslaw::Rng rng(20260301);
    for (int k = 0; k < 20; ++k) {
        const double a = rng.log_uniform(0.1, 10.0);
        ScanConfig cfg;
        cfg.t_end = 1000.0 / std::min(a, 1.0);
        cfg.step = 0.01 / std::max(1.0, a);
        cfg.window_len = cfg.t_end / 20.0;
        const coslaw::DichotomyResult res =
            coslaw::classify_scalar_dichotomy(cplx(a), LimitPoint::Infinity, cfg);
        if (res.cls != DichotomyClass::Two || res.evidence.limsup_estimate < 1.999) ++bad;
        min_two_est = std::min(min_two_est, res.evidence.limsup_estimate);
    }
    for (int k = 0; k < 20; ++k) {
        const double sign = rng.uniform01() < 0.5 ? -1.0 : 1.0;
        const cplx a(rng.uniform(-3.0, 3.0), sign * rng.log_uniform(0.01, 2.0));
        if (coslaw::classify_scalar_dichotomy(a, LimitPoint::Infinity, ScanConfig{}).cls !=
            DichotomyClass::Infinite)
            ++bad;
    }
    report(3, "scalar dichotomy suite has zero misclassifications", bad == 0,
           std::to_string(bad) + " misclassified, min Two-class estimate " + num(min_two_est));
}

// 4: no nonzero Hermitian generator scans below tail estimate 1.95 once the
// window layout is scaled to its norm.
void criterion_4() {
    coslaw::Rng rng(20260401);
    double min_est = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 8));
        const double nb = rng.log_uniform(0.01, 10.0);
        const DenseMatrix b = scaled_to_norm(random_hermitian(rng, dim), nb);
        ScanConfig cfg;
        cfg.step = 0.15 / nb;
        cfg.window_len = 8.0 * pi / nb;
        cfg.t_end = 10.0 * cfg.window_len;
        const CosineFamily fam{MatrixCosineFamily(b, CosineStrategy::Spectral)};
        min_est = std::min(min_est, coslaw::windowed_sup_scan(fam, cfg).limsup_estimate);
    }
    report(4, "every nonzero Hermitian generator reaches tail estimate 1.95",
           min_est >= 1.95, "min estimate " + num(min_est) + " over 200 generators");
}

// 5: halve(C(2s)) returns C(s) to 1e-10, and six dyadic halvings of C(1)
// track the directly evaluated stages to 1e-9.
void criterion_5() {
    coslaw::Rng rng(20260501);
    double worst_halve = 0.0, worst_stage = 0.0;
    bool ladder_ok = true;
    for (int k = 0; k < 50; ++k) {
        const auto dim = static_cast<std::size_t>(rng.uniform_int(2, 6));
        const DenseMatrix b = scaled_to_norm(random_hermitian(rng, dim), rng.uniform(0.1, 1.0));
        const MatrixCosineFamily fam(b, CosineStrategy::Spectral);

        const coslaw::SeriesResult half = coslaw::halve(fam(0.5).value);
        worst_halve = std::max(worst_halve, dev_norm(half.value, fam(0.25).value));

        const coslaw::DyadicReconstruction rec = coslaw::dyadic_reconstruct(fam(1.0).value, 6);
        ladder_ok = ladder_ok && !rec.failed_stage.has_value();
        for (std::size_t j = 0; j < rec.stages.size(); ++j) {
            const double t = std::pow(0.5, static_cast<double>(j + 1));
            worst_stage = std::max(worst_stage, dev_norm(rec.stages[j], fam(t).value));
        }
    }
    report(5, "halving and dyadic reconstruction stay within tolerance",
           worst_halve <= 1e-10 && worst_stage <= 1e-9 && ladder_ok,
           "max halve error " + num(worst_halve) + ", max stage error " + num(worst_stage));
}

// 6: ||I - sqrt(I - x)|| <= 1 - sqrt(1 - ||x||), with equality on r*I.
void criterion_6() {
    coslaw::Rng rng(20260601);
    bool bound_ok = true;
    double worst_slack = 0.0, worst_eq = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 5));
        const DenseMatrix x = scaled_to_norm(random_matrix(rng, dim), rng.uniform(0.0, 0.95));
        const coslaw::SqrtBoundCheck chk = coslaw::verify_sqrt_bound(x);
        bound_ok = bound_ok && chk.lhs <= chk.rhs + 1e-10;
        worst_slack = std::max(worst_slack, chk.lhs - chk.rhs);
    }
    for (int k = 0; k < 20; ++k) {
        const double r = 0.95 * static_cast<double>(k) / 19.0;
        DenseMatrix x = DenseMatrix::identity(3);
        x *= cplx(r);
        const coslaw::SqrtBoundCheck chk = coslaw::verify_sqrt_bound(x);
        worst_eq = std::max(worst_eq, std::abs(chk.lhs - chk.rhs));
    }
    report(6, "square-root defect bound holds and is tight on r*I",
           bound_ok && worst_eq <= 1e-12,
           "max bound slack " + num(worst_slack) + ", max grid equality gap " + num(worst_eq));
}

// 7: the cosine functional equation, continuous and discrete, at relative
// tolerance 1e-10.
void criterion_7() {
    coslaw::Rng rng(20260701);
    double worst_rel = 0.0;

    for (int f = 0; f < 20; ++f) {
        const ScalarCosineFamily fam(cplx(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0)));
        for (int k = 0; k < 200; ++k) {
            const coslaw::ResidualReport r =
                coslaw::dalembert_residual(fam, rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
            worst_rel = std::max(worst_rel, r.residual / r.scale());
        }
    }
    for (int f = 0; f < 20; ++f) {
        const auto dim = static_cast<std::size_t>(rng.uniform_int(2, 6));
        const DenseMatrix b = scaled_to_norm(random_hermitian(rng, dim), rng.log_uniform(0.1, 2.0));
        const MatrixCosineFamily fam(b, CosineStrategy::Spectral);
        for (int k = 0; k < 200; ++k) {
            const coslaw::ResidualReport r =
                coslaw::dalembert_residual(fam, rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0));
            worst_rel = std::max(worst_rel, r.residual / r.scale());
        }
    }
    for (int f = 0; f < 20; ++f) {
        const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 4));
        const DenseMatrix x = scaled_to_norm(random_hermitian(rng, dim), rng.uniform(0.1, 1.0));
        const coslaw::DiscreteCosineSequence seq(x);
        for (int k = 0; k < 200; ++k) {
            const long long m = rng.uniform_int(0, 300);
            const long long n = rng.uniform_int(0, 300);
            const DenseMatrix cm = seq.at(m).value;
            const DenseMatrix cn = seq.at(n).value;
            DenseMatrix defect = cm * cn;
            defect *= cplx(-2.0);
            defect += seq.at(m + n).value;
            defect += seq.at(m - n).value;
            const double scale = 1.0 + coslaw::operator_norm(cm) * coslaw::operator_norm(cn);
            worst_rel = std::max(worst_rel, coslaw::operator_norm(defect) / scale);
        }
    }
    report(7, "d'Alembert identity holds at relative 1e-10", worst_rel <= 1e-10,
           "max relative residual " + num(worst_rel));
}

// 8: spectral and series-doubling evaluation agree to 1e-8 relative.
void criterion_8() {
    coslaw::Rng rng(20260801);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 6));
        const double nb = rng.log_uniform(0.05, 8.0);
        const DenseMatrix b = scaled_to_norm(random_hermitian(rng, dim), nb);
        const double t = rng.uniform(-20.0 / nb, 20.0 / nb);
        const MatrixCosineFamily spec(b, CosineStrategy::Spectral);
        const MatrixCosineFamily series(b, CosineStrategy::SeriesDoubling);
        const DenseMatrix sv = spec(t).value;
        worst = std::max(worst,
                         dev_norm(sv, series(t).value) / (1.0 + coslaw::operator_norm(sv)));
    }
    report(8, "two-path evaluation agrees to relative 1e-8", worst <= 1e-8,
           "max relative deviation " + num(worst));
}

// 9: iterating g(S) = 1 - sqrt(1 - S/2) drains a [0,1] grid to 1e-12 within
// 60 steps.
void criterion_9() {
    double worst_limit = 0.0;
    int worst_iters = 0;
    for (int k = 0; k <= 100; ++k) {
        const coslaw::ContractionResult res =
            coslaw::contraction_S_iteration(static_cast<double>(k) / 100.0);
        worst_limit = std::max(worst_limit, res.limit);
        worst_iters = std::max(worst_iters, res.iterations);
    }
    report(9, "contraction iteration reaches 1e-12 within 60 steps",
           worst_limit <= 1e-12 && worst_iters <= 60,
           "max limit " + num(worst_limit) + ", max iterations " + std::to_string(worst_iters));
}

// 10: Cesaro averages: the eighth-root rotation is compared against 4/pi at
// N = 1e5, and 200 displaced elements must keep the tail liminf above 0.95.
void criterion_10() {
    const coslaw::PowerSemigroup rot(scalar1x1(std::polar(1.0, pi / 4.0)));
    const coslaw::CesaroResult res = coslaw::cesaro_wallen(rot, 100000);
    const double diff = std::abs(res.liminf_estimate - four_over_pi);
    const bool clause_a = !res.overflowed && diff <= 1e-2;

    coslaw::Rng rng(20261001);
    double min_liminf = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
        const auto dim = static_cast<std::size_t>(rng.uniform_int(2, 6));
        const double ne = rng.uniform(1e-3, 1.0);
        const DenseMatrix e = scaled_to_norm(random_matrix(rng, dim), ne);
        DenseMatrix t = DenseMatrix::identity(dim);
        t += e;
        const auto horizon = static_cast<long long>(std::max(2000.0, std::ceil(80.0 / ne)));
        const coslaw::CesaroResult cw = coslaw::cesaro_wallen(coslaw::PowerSemigroup(t), horizon);
        min_liminf = std::min(min_liminf, cw.liminf_estimate);
    }
    const bool clause_b = min_liminf >= 0.95;

    report(10, "Cesaro liminf matches 4/pi and displaced elements stay above 0.95",
           clause_a && clause_b,
           "rotation liminf " + num(res.liminf_estimate) + " vs 4/pi " + num(four_over_pi) +
               ", |diff| " + num(diff) + "; min displaced liminf " + num(min_liminf));
}

// 11: rho(C(t) - I) equals the max coordinate deviation on diagonal families.
void criterion_11() {
    coslaw::Rng rng(20261101);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const auto n = static_cast<std::size_t>(rng.uniform_int(1, 6));
        std::vector<cplx> b(n);
        for (auto& z : b) z = cplx(rng.uniform(-2.0, 2.0), rng.uniform(-0.5, 0.5));
        const coslaw::GelfandCheck chk = coslaw::gelfand_check(b, rng.uniform(0.0, 5.0));
        worst = std::max(worst, std::abs(chk.lhs - chk.rhs) / (1.0 + chk.rhs));
    }
    report(11, "spectral radius identity on diagonal families", worst <= 1e-10,
           "max relative gap " + num(worst) + " over 500 families");
}

// 12: every subcommand, run twice on the same config, emits byte-identical
// payloads on stdout.
bool run_capture(const std::string& cmd, std::string& out) {
    out.clear();
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return false;
    char buf[65536];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int st = pclose(p);
    return WIFEXITED(st) && WEXITSTATUS(st) == 0;
}

void criterion_12() {
    const std::string tool = COSLAW_TOOL_PATH;
    const std::string demo = COSLAW_DEMO_DIR;
    const std::vector<std::pair<std::string, std::string>> cases = {
        {"scan", "scan --config " + demo + "/scan_scalar.json"},
        {"scan(threads)", "COSLAW_THREADS=4 " + tool + " scan --config " + demo +
                              "/scan_matrix.json"},
        {"classify", "classify --config " + demo + "/classify_zero.json"},
        {"halve", "halve --config " + demo + "/halve.json"},
        {"reconstruct", "reconstruct --config " + demo + "/reconstruct.json"},
        {"discrete", "discrete --config " + demo + "/discrete_witness.json"},
        {"semigroup", "semigroup --config " + demo + "/semigroup_powers.json"},
        {"witness", "witness --config " + demo + "/witness.json"},
    };
    std::string mismatches;
    bool all_ok = true;
    for (const auto& [name, args] : cases) {
        const std::string cmd =
            (args.rfind("COSLAW_THREADS", 0) == 0 ? args : tool + " " + args) +
            " 2>/dev/null";
        std::string first, second;
        const bool ok1 = run_capture(cmd, first);
        const bool ok2 = run_capture(cmd, second);
        if (!ok1 || !ok2 || first.empty() || first != second) {
            all_ok = false;
            mismatches += (mismatches.empty() ? "" : ", ") + name;
        }
    }
    report(12, "tool payloads are byte-deterministic across runs", all_ok,
           all_ok ? "8 command pairs identical" : "mismatch in: " + mismatches);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    std::printf("acceptance: %d of 12 criteria passed\n", 12 - failures);
    return failures == 0 ? 0 : 1;
}
