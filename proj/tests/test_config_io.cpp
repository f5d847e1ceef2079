#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <string>

#include <catch2/catch_amalgamated.hpp>

#include "coslaw/coslaw.hpp"
#include "support.hpp"

using coslaw::cplx;
using coslaw::CosineFamily;
using coslaw::DenseMatrix;
using nlohmann::json;
using testsupport::random_matrix;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path("/tmp/coslaw_io_" + name) {
        std::ofstream out(path);
        out << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("matrix literals round-trip through JSON") {
    coslaw::Rng rng(990001);
    for (int trial = 0; trial < 20; ++trial) {
        const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 8));
        const DenseMatrix m = random_matrix(rng, dim);

        const DenseMatrix direct = coslaw::matrix_from_json(coslaw::matrix_to_json(m));
        REQUIRE(direct.dim() == dim);

        // and through serialized text, which must preserve every double
        const json reparsed = json::parse(coslaw::matrix_to_json(m).dump());
        const DenseMatrix via_text = coslaw::matrix_from_json(reparsed);

        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t k = 0; k < dim; ++k) {
                CHECK(direct(i, k) == m(i, k));
                CHECK(via_text(i, k) == m(i, k));
            }
    }
}

TEST_CASE("matrix literal validation") {
    CHECK_NOTHROW(coslaw::matrix_from_json(json{{"dim", 2}, {"re", {1, 0, 0, 1}}}));

    // "im" defaults to zero
    const DenseMatrix real_only = coslaw::matrix_from_json(json{{"dim", 1}, {"re", {3.0}}});
    CHECK(real_only(0, 0) == cplx(3.0, 0.0));

    CHECK_THROWS_AS(coslaw::matrix_from_json(json::array()), coslaw::ConfigError);
    CHECK_THROWS_AS(coslaw::matrix_from_json(json{{"re", {1.0}}}), coslaw::ConfigError);
    CHECK_THROWS_AS(coslaw::matrix_from_json(json{{"dim", 0}, {"re", json::array()}}),
                    coslaw::ConfigError);
    CHECK_THROWS_AS(coslaw::matrix_from_json(json{{"dim", 257}}), coslaw::ConfigError);
    CHECK_THROWS_AS(coslaw::matrix_from_json(json{{"dim", 2}, {"re", {1, 0, 0}}}),
                    coslaw::ConfigError);
    CHECK_THROWS_AS(coslaw::matrix_from_json(json{{"dim", 1}, {"re", {"x"}}}),
                    coslaw::ConfigError);
    CHECK_THROWS_AS(
        coslaw::matrix_from_json(json{{"dim", 1}, {"re", {1.0}}, {"im", {0.0, 0.0}}}),
        coslaw::ConfigError);
    CHECK_THROWS_AS(
        coslaw::matrix_from_json(json{{"dim", 1}, {"re", {1.0}}, {"imag", {0.0}}}),
        coslaw::ConfigError);
}

TEST_CASE("family descriptors") {
    SECTION("scalar forms") {
        const CosineFamily real = coslaw::family_from_json(json{{"kind", "scalar"}, {"a", 2.5}});
        CHECK(real.is_scalar());
        REQUIRE(real.spectrum().has_value());
        CHECK(real.spectrum()->at(0) == cplx(2.5, 0.0));

        const CosineFamily pair =
            coslaw::family_from_json(json{{"kind", "scalar"}, {"a", {0.5, 0.2}}});
        CHECK(pair.spectrum()->at(0) == cplx(0.5, 0.2));

        const CosineFamily single =
            coslaw::family_from_json(json{{"kind", "scalar"}, {"a", {1.5}}});
        CHECK(single.spectrum()->at(0) == cplx(1.5, 0.0));
    }
    SECTION("scalar rejections") {
        CHECK_THROWS_AS(coslaw::family_from_json(json{{"kind", "scalar"}}),
                        coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::family_from_json(json{{"kind", "scalar"}, {"a", "one"}}),
                        coslaw::ConfigError);
        CHECK_THROWS_AS(
            coslaw::family_from_json(json{{"kind", "scalar"}, {"a", {1, 2, 3}}}),
            coslaw::ConfigError);
        CHECK_THROWS_AS(
            coslaw::family_from_json(json{{"kind", "scalar"}, {"a", 1.0}, {"B", 2}}),
            coslaw::ConfigError);
    }
    SECTION("matrix forms") {
        const json b = json{{"dim", 2}, {"re", {0.8, 0.3, 0.3, 0.2}}};
        const CosineFamily def = coslaw::family_from_json(json{{"kind", "matrix"}, {"B", b}});
        CHECK_FALSE(def.is_scalar());
        CHECK(def.dim() == 2);
        CHECK(def.spectrum().has_value()); // default strategy is spectral

        const CosineFamily series = coslaw::family_from_json(
            json{{"kind", "matrix"}, {"B", b}, {"strategy", "series"}});
        CHECK_FALSE(series.spectrum().has_value());

        // both strategies evaluate the same family
        DenseMatrix diff = def(1.3).value;
        diff -= series(1.3).value;
        CHECK(coslaw::operator_norm(diff) <= 1e-9);
    }
    SECTION("matrix rejections") {
        const json b = json{{"dim", 1}, {"re", {1.0}}};
        CHECK_THROWS_AS(coslaw::family_from_json(json{{"kind", "matrix"}}),
                        coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::family_from_json(
                            json{{"kind", "matrix"}, {"B", b}, {"strategy", "qr"}}),
                        coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::family_from_json(
                            json{{"kind", "matrix"}, {"B", b}, {"steps", 3}}),
                        coslaw::ConfigError);
    }
    SECTION("kind dispatch") {
        CHECK_THROWS_AS(coslaw::family_from_json(json{{"kind", "vector"}}),
                        coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::family_from_json(json{{"a", 1.0}}), coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::family_from_json(json(17)), coslaw::ConfigError);
    }
    SECTION("config root without a family") {
        CHECK_THROWS_WITH(coslaw::family_from_config(json{{"scan", nullptr}}),
                          Catch::Matchers::ContainsSubstring("missing family descriptor"));
    }
}

TEST_CASE("scan section parsing") {
    SECTION("null gives the defaults") {
        const coslaw::ScanConfig cfg = coslaw::scan_config_from_json(json(nullptr));
        CHECK(cfg.t_start == 0.0);
        CHECK(cfg.t_end == 1000.0);
        CHECK(cfg.step == 0.01);
        CHECK(cfg.window_len == 50.0);
        CHECK(cfg.overflow_cap == 1e6);
        CHECK(cfg.tol_zero == 1e-9);
        CHECK(cfg.last_windows == 3);
        CHECK(cfg.threads == 0);
    }
    SECTION("overrides apply field by field") {
        const coslaw::ScanConfig cfg = coslaw::scan_config_from_json(
            json{{"t_end", 200.0}, {"step", 0.05}, {"window_len", 20.0}, {"threads", 2}});
        CHECK(cfg.t_end == 200.0);
        CHECK(cfg.step == 0.05);
        CHECK(cfg.window_len == 20.0);
        CHECK(cfg.threads == 2);
        CHECK(cfg.t_start == 0.0); // untouched fields keep defaults
        CHECK_NOTHROW(cfg.validate());
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(coslaw::scan_config_from_json(json::array()), coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::scan_config_from_json(json{{"stride", 0.1}}),
                        coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::scan_config_from_json(json{{"step", "small"}}),
                        coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::scan_config_from_json(json{{"last_windows", 1.5}}),
                        coslaw::ConfigError);
        CHECK_THROWS_AS(coslaw::scan_config_from_json(json{{"threads", "many"}}),
                        coslaw::ConfigError);
    }
    SECTION("range checks happen at validation, not parse") {
        const coslaw::ScanConfig cfg =
            coslaw::scan_config_from_json(json{{"t_end", -5.0}});
        CHECK(cfg.t_end == -5.0);
        CHECK_THROWS_AS(cfg.validate(), coslaw::ConfigError);
    }
}

TEST_CASE("config files load with clear failure modes") {
    SECTION("valid file") {
        const TempFile f("ok.json", R"({"family": {"kind": "scalar", "a": 1.0}})");
        const json root = coslaw::load_json_file(f.path);
        const CosineFamily fam = coslaw::family_from_config(root);
        CHECK(fam.is_scalar());
    }
    SECTION("missing file") {
        CHECK_THROWS_AS(coslaw::load_json_file("/tmp/coslaw_io_no_such_file.json"),
                        coslaw::ConfigError);
    }
    SECTION("malformed JSON") {
        const TempFile f("bad.json", "{\"family\": ");
        CHECK_THROWS_AS(coslaw::load_json_file(f.path), coslaw::ConfigError);
    }
}

TEST_CASE("non-finite matrix entries are rejected") {
    json j;
    j["dim"] = 1;
    j["re"] = {std::numeric_limits<double>::infinity()};
    CHECK_THROWS_AS(coslaw::matrix_from_json(j), coslaw::InvalidMatrixError);
}
