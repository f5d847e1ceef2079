#ifndef COSLAW_JSON_IO_HPP
#define COSLAW_JSON_IO_HPP

#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "coslaw/complex_matrix.hpp"
#include "coslaw/cosine.hpp"
#include "coslaw/laws.hpp"

namespace coslaw {

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const std::exception& e) {
        throw ConfigError("invalid JSON in " + path + ": " + e.what());
    }
}

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                                const std::string& where) {
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
}

inline double number_at(const nlohmann::json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError("\"" + key + "\" must be a number");
    return j.at(key).get<double>();
}

} // namespace detail

/// Matrix literal {"dim": n, "re": [...], "im": [...]}, row-major; "im"
/// defaults to all zeros.
inline DenseMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("matrix literal must be an object");
    detail::reject_unknown_keys(j, {"dim", "re", "im"}, "matrix literal");
    if (!j.contains("dim") || !j.at("dim").is_number_integer())
        throw ConfigError("matrix literal needs an integer \"dim\"");
    const long long dim = j.at("dim").get<long long>();
    if (dim < 1 || dim > static_cast<long long>(DenseMatrix::max_dim))
        throw ConfigError("matrix \"dim\" must lie in [1, 256]");
    const auto n = static_cast<std::size_t>(dim);

    const auto read_part = [&](const char* key, bool required) {
        std::vector<double> part(n * n, 0.0);
        if (!j.contains(key)) {
            if (required) throw ConfigError(std::string("matrix literal needs \"") + key + "\"");
            return part;
        }
        const auto& arr = j.at(key);
        if (!arr.is_array() || arr.size() != n * n)
            throw ConfigError(std::string("matrix \"") + key + "\" must be an array of dim^2 numbers");
        for (std::size_t i = 0; i < n * n; ++i) {
            if (!arr[i].is_number())
                throw ConfigError(std::string("matrix \"") + key + "\" must contain only numbers");
            part[i] = arr[i].get<double>();
        }
        return part;
    };
    const std::vector<double> re = read_part("re", true);
    const std::vector<double> im = read_part("im", false);

    DenseMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) m(i, k) = cplx(re[i * n + k], im[i * n + k]);
    require_finite(m, "matrix literal");
    return m;
}

inline nlohmann::json matrix_to_json(const DenseMatrix& m) {
    const std::size_t n = m.dim();
    std::vector<double> re(n * n), im(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            re[i * n + k] = m(i, k).real();
            im[i * n + k] = m(i, k).imag();
        }
    return nlohmann::json{{"dim", n}, {"re", re}, {"im", im}};
}

/// Family descriptor {"kind":"scalar","a":[re,im]} or
/// {"kind":"matrix","B":<matrix>,"strategy":"spectral"|"series"}.
inline CosineFamily family_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError("family descriptor needs a string \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "scalar") {
        detail::reject_unknown_keys(j, {"kind", "a"}, "scalar family");
        if (!j.contains("a")) throw ConfigError("scalar family needs \"a\"");
        const auto& a = j.at("a");
        if (a.is_number()) return CosineFamily(ScalarCosineFamily(cplx(a.get<double>(), 0.0)));
        if (a.is_array() && (a.size() == 1 || a.size() == 2) && a[0].is_number() &&
            (a.size() == 1 || a[1].is_number())) {
            const double re = a[0].get<double>();
            const double im = a.size() == 2 ? a[1].get<double>() : 0.0;
            return CosineFamily(ScalarCosineFamily(cplx(re, im)));
        }
        throw ConfigError("scalar family \"a\" must be a number or [re, im]");
    }

    if (kind == "matrix") {
        detail::reject_unknown_keys(j, {"kind", "B", "strategy"}, "matrix family");
        if (!j.contains("B")) throw ConfigError("matrix family needs \"B\"");
        const DenseMatrix b = matrix_from_json(j.at("B"));
        CosineStrategy strat = CosineStrategy::Spectral;
        if (j.contains("strategy")) {
            if (!j.at("strategy").is_string())
                throw ConfigError("family \"strategy\" must be a string");
            const std::string s = j.at("strategy").get<std::string>();
            if (s == "spectral")
                strat = CosineStrategy::Spectral;
            else if (s == "series")
                strat = CosineStrategy::SeriesDoubling;
            else
                throw ConfigError("family \"strategy\" must be \"spectral\" or \"series\"");
        }
        return CosineFamily(MatrixCosineFamily(b, strat));
    }

    throw ConfigError("family \"kind\" must be \"scalar\" or \"matrix\"");
}

/// The "family" section of a config document.
inline CosineFamily family_from_config(const nlohmann::json& root) {
    if (!root.is_object() || !root.contains("family"))
        throw ConfigError("missing family descriptor");
    return family_from_json(root.at("family"));
}

/// The "scan" section; absent fields keep their defaults.
inline ScanConfig scan_config_from_json(const nlohmann::json& j) {
    ScanConfig cfg;
    if (j.is_null()) return cfg;
    if (!j.is_object()) throw ConfigError("\"scan\" must be an object");
    detail::reject_unknown_keys(j,
                                {"t_start", "t_end", "step", "window_len", "overflow_cap",
                                 "tol_zero", "last_windows", "threads"},
                                "scan config");
    cfg.t_start = detail::number_at(j, "t_start", cfg.t_start);
    cfg.t_end = detail::number_at(j, "t_end", cfg.t_end);
    cfg.step = detail::number_at(j, "step", cfg.step);
    cfg.window_len = detail::number_at(j, "window_len", cfg.window_len);
    cfg.overflow_cap = detail::number_at(j, "overflow_cap", cfg.overflow_cap);
    cfg.tol_zero = detail::number_at(j, "tol_zero", cfg.tol_zero);
    if (j.contains("last_windows")) {
        if (!j.at("last_windows").is_number_integer())
            throw ConfigError("\"last_windows\" must be an integer");
        cfg.last_windows = j.at("last_windows").get<int>();
    }
    if (j.contains("threads")) {
        if (!j.at("threads").is_number_integer())
            throw ConfigError("\"threads\" must be an integer");
        cfg.threads = j.at("threads").get<int>();
    }
    return cfg;
}

} // namespace coslaw

#endif
