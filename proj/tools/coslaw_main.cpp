// coslaw: reproducible command-line runner for the cosine-family laboratory.
//
// Payload convention: machine-readable output (CSV rows, JSON lines) goes to
// stdout, or to <out>.csv / <out>.jsonl when --out is given. The human report
// goes to stderr, so payload bytes are reproducible run to run. All floating
// point payload values are printed with 17 significant digits; +/-infinity
// becomes JSON null next to an explicit overflow flag.
//
// Exit codes: 0 ok, 2 config error, 3 domain/precondition error (including
// OutsideDisk), 4 numeric failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coslaw/coslaw.hpp"

namespace {

using coslaw::cplx;
using coslaw::DenseMatrix;
using nlohmann::json;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string num_or_null(double v) { return std::isfinite(v) ? fmt17(v) : "null"; }

const char* bool_text(bool b) { return b ? "true" : "false"; }

const char* trend_name(coslaw::Trend t) {
    switch (t) {
    case coslaw::Trend::Decreasing: return "decreasing";
    case coslaw::Trend::Increasing: return "increasing";
    default: return "stable";
    }
}

const char* class_name(coslaw::DichotomyClass c) {
    switch (c) {
    case coslaw::DichotomyClass::Zero: return "zero";
    case coslaw::DichotomyClass::Two: return "two";
    case coslaw::DichotomyClass::Infinite: return "infinite";
    default: return "indeterminate";
    }
}

std::string matrix_text(const DenseMatrix& m) {
    const std::size_t n = m.dim();
    std::string re, im;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (!re.empty()) {
                re += ',';
                im += ',';
            }
            re += fmt17(m(i, k).real());
            im += fmt17(m(i, k).imag());
        }
    return "{\"dim\":" + std::to_string(n) + ",\"re\":[" + re + "],\"im\":[" + im + "]}";
}

/// Verdict line in the fixed schema {"r","premise","conclusion","limsup"}.
std::string law_line(const coslaw::LawVerdict& v) {
    return std::string("{\"r\":") + fmt17(v.threshold_r) +
           ",\"premise\":" + bool_text(v.premise_holds) +
           ",\"conclusion\":" + bool_text(v.conclusion_holds) +
           ",\"limsup\":" + num_or_null(v.evidence.limsup_estimate) + "}\n";
}

std::string tail_line(const coslaw::TailEstimate& e) {
    std::string sups;
    for (const coslaw::WindowSup& w : e.window_sups) {
        if (!sups.empty()) sups += ',';
        sups += '[';
        sups += fmt17(w.window_start);
        sups += ',';
        sups += num_or_null(w.sup);
        sups += ']';
    }
    std::string s = "{\"kind\":\"tail\",\"limsup\":" + num_or_null(e.limsup_estimate) +
                    ",\"overflowed\":" + bool_text(e.overflowed) + ",\"trend\":\"" +
                    trend_name(e.trend) + "\"";
    s += ",\"grid_error_bound\":";
    s += e.grid_error_bound ? fmt17(*e.grid_error_bound) : std::string("null");
    s += ",\"window_sups\":[" + sups + "]}\n";
    return s;
}

struct Payload {
    std::string csv;   ///< includes the header line when the command emits rows
    std::string jsonl; ///< newline-terminated JSON lines
};

using Report = std::vector<std::pair<std::string, std::string>>;

json section(const json& root, const char* key) {
    return root.contains(key) ? root.at(key) : json();
}

json require_section(const json& root, const char* key) {
    if (!root.contains(key) || !root.at(key).is_object())
        throw coslaw::ConfigError(std::string("config needs a \"") + key + "\" object");
    return root.at(key);
}

double require_number(const json& sec, const char* key, const char* where) {
    if (!sec.contains(key) || !sec.at(key).is_number())
        throw coslaw::ConfigError(std::string(where) + " needs a number \"" + key + "\"");
    return sec.at(key).get<double>();
}

long long integer_at(const json& sec, const char* key, long long fallback, const char* where) {
    if (!sec.contains(key)) return fallback;
    if (!sec.at(key).is_number_integer())
        throw coslaw::ConfigError(std::string(where) + " \"" + key + "\" must be an integer");
    return sec.at(key).get<long long>();
}

/// Accept a scalar (number or [re, im]) or a matrix literal.
DenseMatrix matrix_like(const json& j, const char* what) {
    if (j.is_number()) {
        DenseMatrix m(1);
        m(0, 0) = cplx(j.get<double>(), 0.0);
        return m;
    }
    if (j.is_array() && (j.size() == 1 || j.size() == 2) && j[0].is_number() &&
        (j.size() == 1 || j[1].is_number())) {
        DenseMatrix m(1);
        m(0, 0) = cplx(j[0].get<double>(), j.size() == 2 ? j[1].get<double>() : 0.0);
        return m;
    }
    if (j.is_object()) return coslaw::matrix_from_json(j);
    throw coslaw::ConfigError(std::string(what) +
                              " must be a number, [re, im], or a matrix literal");
}

int cmd_scan(const json& root, Payload& payload, Report& report) {
    const coslaw::CosineFamily fam = coslaw::family_from_config(root);
    const coslaw::ScanConfig cfg = coslaw::scan_config_from_json(section(root, "scan"));
    const coslaw::ScanResult res = coslaw::windowed_sup_scan_full(fam, cfg);

    payload.csv = "t,norm\n";
    for (const coslaw::ScanSample& s : res.samples)
        payload.csv += fmt17(s.t) + ("," + fmt17(s.norm)) + "\n";
    payload.jsonl = tail_line(res.tail);
    report.emplace_back("limsup_estimate", num_or_null(res.tail.limsup_estimate));
    report.emplace_back("trend", trend_name(res.tail.trend));

    if (root.contains("law")) {
        const json law = require_section(root, "law");
        coslaw::detail::reject_unknown_keys(law, {"r"}, "law config");
        const double r = require_number(law, "r", "law config");
        const coslaw::LawVerdict v = coslaw::law_check_limsup_infinity(fam, r, cfg);
        payload.jsonl += law_line(v);
        report.emplace_back("premise", bool_text(v.premise_holds));
        report.emplace_back("conclusion", bool_text(v.conclusion_holds));
    }
    return 0;
}

int cmd_classify(const json& root, Payload& payload, Report& report) {
    const coslaw::CosineFamily fam = coslaw::family_from_config(root);
    const coslaw::ScalarCosineFamily* sc = fam.scalar();
    if (!sc) throw coslaw::ConfigError("classify needs a scalar family");
    const coslaw::ScanConfig cfg = coslaw::scan_config_from_json(section(root, "scan"));

    coslaw::LimitPoint t0 = coslaw::LimitPoint::Infinity;
    std::string t0_name = "infinity";
    if (root.contains("classify")) {
        const json sec = require_section(root, "classify");
        coslaw::detail::reject_unknown_keys(sec, {"t0"}, "classify config");
        if (sec.contains("t0")) {
            if (!sec.at("t0").is_string())
                throw coslaw::ConfigError("classify \"t0\" must be \"zero\" or \"infinity\"");
            t0_name = sec.at("t0").get<std::string>();
            if (t0_name == "zero")
                t0 = coslaw::LimitPoint::Zero;
            else if (t0_name != "infinity")
                throw coslaw::ConfigError("classify \"t0\" must be \"zero\" or \"infinity\"");
        }
    }

    const coslaw::DichotomyResult res =
        coslaw::classify_scalar_dichotomy(sc->parameter(), t0, cfg);
    payload.jsonl = std::string("{\"kind\":\"dichotomy\",\"t0\":\"") + t0_name +
                    "\",\"class\":\"" + class_name(res.cls) +
                    "\",\"limsup\":" + num_or_null(res.evidence.limsup_estimate) +
                    ",\"overflowed\":" + bool_text(res.evidence.overflowed) + ",\"recovered_a\":" +
                    (res.recovered_a ? fmt17(*res.recovered_a) : std::string("null")) + "}\n";
    payload.jsonl += tail_line(res.evidence);
    report.emplace_back("class", class_name(res.cls));
    report.emplace_back("limsup_estimate", num_or_null(res.evidence.limsup_estimate));
    return 0;
}

int cmd_halve(const json& root, Payload& payload, Report& report) {
    const coslaw::CosineFamily fam = coslaw::family_from_config(root);
    const json sec = require_section(root, "halve");
    coslaw::detail::reject_unknown_keys(sec, {"s", "margin"}, "halve config");
    const double s = require_number(sec, "s", "halve config");
    if (!std::isfinite(s)) throw coslaw::ConfigError("halve \"s\" must be finite");
    const double margin = coslaw::detail::number_at(sec, "margin", 1e-6);

    const coslaw::MatrixSample c2s = fam(2.0 * s);
    if (c2s.overflowed)
        throw coslaw::NoConvergenceError("halve: evaluation at 2s overflowed");
    const coslaw::SeriesResult h = coslaw::halve(c2s.value, margin);

    const coslaw::MatrixSample cs = fam(s);
    DenseMatrix diff = h.value;
    diff -= cs.value;
    const double residual = coslaw::operator_norm(diff);
    DenseMatrix dbl = h.value * h.value;
    dbl *= cplx(2.0);
    dbl -= DenseMatrix::identity(h.value.dim());
    dbl -= c2s.value;
    const double doubling_residual = coslaw::operator_norm(dbl);

    payload.jsonl = "{\"kind\":\"halve\",\"s\":" + fmt17(s) +
                    ",\"terms_used\":" + std::to_string(h.terms_used) +
                    ",\"tail_bound\":" + fmt17(h.tail_bound) + ",\"residual\":" + fmt17(residual) +
                    ",\"doubling_residual\":" + fmt17(doubling_residual) +
                    ",\"value\":" + matrix_text(h.value) + "}\n";
    report.emplace_back("residual", fmt17(residual));
    report.emplace_back("doubling_residual", fmt17(doubling_residual));
    return 0;
}

int cmd_reconstruct(const json& root, Payload& payload, Report& report) {
    const coslaw::CosineFamily fam = coslaw::family_from_config(root);
    const json sec = require_section(root, "reconstruct");
    coslaw::detail::reject_unknown_keys(sec, {"t", "depth", "margin"}, "reconstruct config");
    const double t = coslaw::detail::number_at(sec, "t", 1.0);
    if (!std::isfinite(t)) throw coslaw::ConfigError("reconstruct \"t\" must be finite");
    const long long depth = integer_at(sec, "depth", 6, "reconstruct config");
    if (depth < 1 || depth > 60)
        throw coslaw::ConfigError("reconstruct \"depth\" must lie in [1, 60]");
    const double margin = coslaw::detail::number_at(sec, "margin", 1e-6);

    const coslaw::MatrixSample top = fam(t);
    if (top.overflowed)
        throw coslaw::NoConvergenceError("reconstruct: evaluation at t overflowed");
    const coslaw::DyadicReconstruction rec =
        coslaw::dyadic_reconstruct(top.value, static_cast<std::size_t>(depth), margin);

    double max_doubling = 0.0, max_reference = 0.0;
    const DenseMatrix eye = DenseMatrix::identity(top.value.dim());
    const DenseMatrix* prev = &top.value;
    for (std::size_t j = 0; j < rec.stages.size(); ++j) {
        const double tj = std::ldexp(t, -static_cast<int>(j) - 1);
        DenseMatrix dbl = rec.stages[j] * rec.stages[j];
        dbl *= cplx(2.0);
        dbl -= eye;
        dbl -= *prev;
        const double doubling = coslaw::operator_norm(dbl);
        DenseMatrix ref = rec.stages[j];
        ref -= fam(tj).value;
        const double reference = coslaw::operator_norm(ref);
        max_doubling = std::max(max_doubling, doubling);
        max_reference = std::max(max_reference, reference);
        payload.jsonl += "{\"kind\":\"stage\",\"index\":" + std::to_string(j) +
                         ",\"t\":" + fmt17(tj) + ",\"doubling_residual\":" + fmt17(doubling) +
                         ",\"reference_residual\":" + fmt17(reference) + "}\n";
        prev = &rec.stages[j];
    }
    payload.jsonl +=
        "{\"kind\":\"reconstruct\",\"t\":" + fmt17(t) + ",\"depth\":" + std::to_string(depth) +
        ",\"stages\":" + std::to_string(rec.stages.size()) + ",\"failed_stage\":" +
        (rec.failed_stage ? std::to_string(*rec.failed_stage) : std::string("null")) +
        ",\"max_doubling_residual\":" + fmt17(max_doubling) +
        ",\"max_reference_residual\":" + fmt17(max_reference) + "}\n";
    report.emplace_back("stages", std::to_string(rec.stages.size()));
    report.emplace_back("max_doubling_residual", fmt17(max_doubling));
    if (rec.failed_stage) {
        report.emplace_back("error",
                            "OutsideDisk at stage " + std::to_string(*rec.failed_stage));
        return 3;
    }
    return 0;
}

int cmd_discrete(const json& root, Payload& payload, Report& report) {
    const json sec = require_section(root, "discrete");
    coslaw::detail::reject_unknown_keys(sec, {"X", "N", "r", "tol_zero"}, "discrete config");
    if (!sec.contains("X")) throw coslaw::ConfigError("discrete config needs \"X\"");
    const DenseMatrix x = matrix_like(sec.at("X"), "discrete \"X\"");
    const long long N = integer_at(sec, "N", 10000, "discrete config");
    const double r = coslaw::detail::number_at(sec, "r", 1.5);
    const double tol_zero = coslaw::detail::number_at(sec, "tol_zero", 1e-9);

    const coslaw::DiscreteCosineSequence seq(x);
    const coslaw::LawVerdict v = coslaw::discrete_law_check(seq, r, N, tol_zero);

    payload.csv = "t,norm\n";
    const DenseMatrix eye = DenseMatrix::identity(seq.dim());
    for (long long n = 0; n <= N; ++n) {
        const coslaw::MatrixSample s = seq.at(n);
        if (s.overflowed) break;
        DenseMatrix d = s.value;
        d -= eye;
        payload.csv += std::to_string(n) + ("," + fmt17(coslaw::operator_norm(d))) + "\n";
    }
    payload.jsonl = tail_line(v.evidence) + law_line(v);
    report.emplace_back("limsup_estimate", num_or_null(v.evidence.limsup_estimate));
    report.emplace_back("premise", bool_text(v.premise_holds));
    report.emplace_back("conclusion", bool_text(v.conclusion_holds));
    return 0;
}

int cmd_semigroup(const json& root, Payload& payload, Report& report) {
    const json sec = require_section(root, "semigroup");
    coslaw::detail::reject_unknown_keys(sec, {"mode", "T", "G", "N", "r", "tol_zero"},
                                        "semigroup config");
    std::string mode = "powers";
    if (sec.contains("mode")) {
        if (!sec.at("mode").is_string())
            throw coslaw::ConfigError("semigroup \"mode\" must be \"powers\" or \"exponential\"");
        mode = sec.at("mode").get<std::string>();
    }
    const double r = coslaw::detail::number_at(sec, "r", 1.0);

    if (mode == "powers") {
        if (!sec.contains("T")) throw coslaw::ConfigError("semigroup powers mode needs \"T\"");
        const DenseMatrix t = matrix_like(sec.at("T"), "semigroup \"T\"");
        const long long N = integer_at(sec, "N", 10000, "semigroup config");
        const double tol_zero = coslaw::detail::number_at(sec, "tol_zero", 1e-9);
        const coslaw::PowerSemigroup sg(t);
        const coslaw::LawVerdict v = coslaw::semigroup_law_check(sg, r, N, tol_zero);
        const coslaw::CesaroResult ces = coslaw::cesaro_wallen(sg, N);

        std::string averages;
        for (double a : ces.averages) {
            if (!averages.empty()) averages += ',';
            averages += fmt17(a);
        }
        payload.jsonl = tail_line(v.evidence) + law_line(v);
        payload.jsonl += "{\"kind\":\"wallen\",\"liminf\":" + num_or_null(ces.liminf_estimate) +
                         ",\"overflowed\":" + bool_text(ces.overflowed) + ",\"averages\":[" +
                         averages + "]}\n";
        report.emplace_back("limsup_estimate", num_or_null(v.evidence.limsup_estimate));
        report.emplace_back("cesaro_liminf", num_or_null(ces.liminf_estimate));
        report.emplace_back("premise", bool_text(v.premise_holds));
        report.emplace_back("conclusion", bool_text(v.conclusion_holds));
        return 0;
    }

    if (mode == "exponential") {
        if (!sec.contains("G"))
            throw coslaw::ConfigError("semigroup exponential mode needs \"G\"");
        const DenseMatrix g = matrix_like(sec.at("G"), "semigroup \"G\"");
        const coslaw::ScanConfig cfg = coslaw::scan_config_from_json(section(root, "scan"));
        const coslaw::LawVerdict v = coslaw::matrix_exp_semigroup_check(g, r, cfg);
        payload.jsonl = tail_line(v.evidence) + law_line(v);
        report.emplace_back("limsup_estimate", num_or_null(v.evidence.limsup_estimate));
        report.emplace_back("premise", bool_text(v.premise_holds));
        report.emplace_back("conclusion", bool_text(v.conclusion_holds));
        return 0;
    }

    throw coslaw::ConfigError("semigroup \"mode\" must be \"powers\" or \"exponential\"");
}

int cmd_witness(const json& root, Payload& payload, Report& report) {
    const json sec = require_section(root, "witness");
    coslaw::detail::reject_unknown_keys(sec, {"a", "b"}, "witness config");
    const double a = require_number(sec, "a", "witness config");
    const double b = require_number(sec, "b", "witness config");
    const coslaw::ScanConfig cfg = coslaw::scan_config_from_json(section(root, "scan"));

    const double gap = coslaw::scaled_gap_witness(a, b, cfg);
    payload.jsonl = "{\"kind\":\"witness\",\"a\":" + fmt17(a) + ",\"b\":" + fmt17(b) +
                    ",\"gap\":" + fmt17(gap) + "}\n";
    report.emplace_back("gap", fmt17(gap));
    return 0;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw coslaw::ConfigError("cannot open output file: " + path);
    out << content;
    if (!out) throw coslaw::ConfigError("cannot write output file: " + path);
}

void deliver(const Payload& payload, const std::optional<std::string>& out_base,
             const std::string& format) {
    if (format == "csv" && payload.csv.empty())
        throw coslaw::ConfigError("csv format is not available for this command");
    const bool want_csv = (format.empty() || format == "csv") && !payload.csv.empty();
    const bool want_jsonl = (format.empty() || format == "jsonl") && !payload.jsonl.empty();
    if (out_base) {
        if (want_csv) write_file(*out_base + ".csv", payload.csv);
        if (want_jsonl) write_file(*out_base + ".jsonl", payload.jsonl);
        return;
    }
    if (want_csv) std::cout << payload.csv;
    if (want_jsonl) std::cout << payload.jsonl;
}

const std::set<std::string>& allowed_root_keys(const std::string& cmd) {
    static const std::map<std::string, std::set<std::string>> table = {
        {"scan", {"seed", "output", "family", "scan", "law"}},
        {"classify", {"seed", "output", "family", "scan", "classify"}},
        {"halve", {"seed", "output", "family", "halve"}},
        {"reconstruct", {"seed", "output", "family", "reconstruct"}},
        {"discrete", {"seed", "output", "discrete"}},
        {"semigroup", {"seed", "output", "semigroup", "scan"}},
        {"witness", {"seed", "output", "witness", "scan"}},
    };
    return table.at(cmd);
}

int run_command(const std::string& cmd, const json& root, Payload& payload, Report& report) {
    if (cmd == "scan") return cmd_scan(root, payload, report);
    if (cmd == "classify") return cmd_classify(root, payload, report);
    if (cmd == "halve") return cmd_halve(root, payload, report);
    if (cmd == "reconstruct") return cmd_reconstruct(root, payload, report);
    if (cmd == "discrete") return cmd_discrete(root, payload, report);
    if (cmd == "semigroup") return cmd_semigroup(root, payload, report);
    return cmd_witness(root, payload, report);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"cosine family law laboratory"};
    app.set_version_flag("--version", coslaw::version_string);
    app.require_subcommand(1);

    std::string config_path, out_path, format;
    long long seed_flag = 0;

    const std::vector<std::pair<const char*, const char*>> commands = {
        {"scan", "windowed sup scan of ||C(t) - I|| with a tail limsup estimate"},
        {"classify", "scalar dichotomy classification at t0 = 0 or infinity"},
        {"halve", "recover C(s) from C(2s) via the square-root series"},
        {"reconstruct", "dyadic halving chain C(t/2^j) with per-stage residuals"},
        {"discrete", "integer-argument 3/2-law check on the three-term recurrence"},
        {"semigroup", "power or exponential semigroup law check with Cesaro averages"},
        {"witness", "sup-gap search for |cos(bt) - cos(at)|"},
    };
    for (const auto& [name, desc] : commands) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", config_path, "JSON config file")->required();
        sub->add_option("--seed", seed_flag, "override the config seed");
        sub->add_option("--out", out_path, "payload path base; writes <out>.csv / <out>.jsonl");
        sub->add_option("--format", format, "restrict the payload to one format")
            ->check(CLI::IsMember({"csv", "jsonl"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    const std::string cmd = sub->get_name();
    const auto started = std::chrono::steady_clock::now();

    Payload payload;
    Report report;
    int rc = 0;
    try {
        const json root = coslaw::load_json_file(config_path);
        if (!root.is_object()) throw coslaw::ConfigError("config root must be a JSON object");
        coslaw::detail::reject_unknown_keys(root, allowed_root_keys(cmd), "config");

        long long seed = integer_at(root, "seed", 0, "config");
        if (sub->count("--seed") > 0) seed = seed_flag;

        std::optional<std::string> out_base;
        if (root.contains("output")) {
            const json out = require_section(root, "output");
            coslaw::detail::reject_unknown_keys(out, {"path", "format"}, "output config");
            if (out.contains("path")) {
                if (!out.at("path").is_string())
                    throw coslaw::ConfigError("output \"path\" must be a string");
                out_base = out.at("path").get<std::string>();
            }
            if (out.contains("format")) {
                if (!out.at("format").is_string())
                    throw coslaw::ConfigError("output \"format\" must be \"csv\" or \"jsonl\"");
                const std::string f = out.at("format").get<std::string>();
                if (f != "csv" && f != "jsonl")
                    throw coslaw::ConfigError("output \"format\" must be \"csv\" or \"jsonl\"");
                if (format.empty()) format = f;
            }
        }
        if (sub->count("--out") > 0) out_base = out_path;

        report.emplace_back("command", cmd);
        report.emplace_back("config", config_path);
        report.emplace_back("seed", std::to_string(seed));
        rc = run_command(cmd, root, payload, report);
        deliver(payload, out_base, format);
    } catch (const coslaw::ConfigError& e) {
        std::cerr << "coslaw " << cmd << " error (Config): " << e.what() << "\n";
        return 2;
    } catch (const coslaw::OutsideDiskError& e) {
        std::cerr << "coslaw " << cmd << " error (OutsideDisk): " << e.what() << "\n";
        return 3;
    } catch (const coslaw::DomainError& e) {
        std::cerr << "coslaw " << cmd << " error (Domain): " << e.what() << "\n";
        return 3;
    } catch (const coslaw::NotNormalError& e) {
        std::cerr << "coslaw " << cmd << " error (NotNormal): " << e.what() << "\n";
        return 3;
    } catch (const coslaw::Error& e) {
        std::cerr << "coslaw " << cmd << " error (Numeric): " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "coslaw " << cmd << " error (Internal): " << e.what() << "\n";
        return 4;
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
                             std::chrono::steady_clock::now() - started)
                             .count();
    std::cerr << "coslaw " << coslaw::version_string << "\n";
    for (const auto& [key, value] : report) std::cerr << key << " " << value << "\n";
    std::cerr << "wall_ms " << static_cast<double>(elapsed) / 1000.0 << "\n";
    return rc;
}
