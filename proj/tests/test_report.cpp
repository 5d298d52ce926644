#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "opint/checks.hpp"
#include "opint/matrix_io.hpp"
#include "opint/report.hpp"
#include "opint/rng.hpp"

using namespace opint;

TEST_CASE("config round-trips through JSON") {
    ExperimentConfig cfg;
    cfg.seed = 123;
    cfg.dim = 5;
    cfg.order = 2;
    cfg.p_values = {1.5, 3.0};
    cfg.function_kind = "poly";
    cfg.function_params = {1.0, 0.0, 2.0};
    cfg.trials = 7;
    cfg.tolerances["tensor"] = 1e-9;
    cfg.slot = 2;
    cfg.step = 1e-3;
    cfg.t_grid = {0.0, 0.1};

    ExperimentConfig back;
    config_from_json(config_to_json(cfg), back);
    REQUIRE(back.seed == cfg.seed);
    REQUIRE(back.dim == cfg.dim);
    REQUIRE(back.order == cfg.order);
    REQUIRE(back.p_values == cfg.p_values);
    REQUIRE(back.function_kind == cfg.function_kind);
    REQUIRE(back.function_params == cfg.function_params);
    REQUIRE(back.trials == cfg.trials);
    REQUIRE(back.tolerances == cfg.tolerances);
    REQUIRE(back.slot == cfg.slot);
    REQUIRE(back.step == cfg.step);
    REQUIRE(back.t_grid == cfg.t_grid);
}

TEST_CASE("config validation rejects out-of-range values") {
    ExperimentConfig cfg;
    cfg.dim = 0;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg.dim = 100;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg.dim = 6;
    cfg.order = 5;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg.order = 3;
    cfg.trials = 0;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg.trials = 1;
    cfg.p_values = {1.0};
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg.p_values = {2.0};
    cfg.tolerances["x"] = 0.0;
    REQUIRE_THROWS_AS(cfg.validate(), ConfigError);
    cfg.tolerances.clear();
    REQUIRE_NOTHROW(cfg.validate());

    cfg.function_kind = "nosuch";
    REQUIRE_THROWS_AS(cfg.make_function(), ConfigError);
    cfg.function_kind = "poly";
    cfg.function_params.clear();
    REQUIRE_THROWS_AS(cfg.make_function(), ConfigError);
}

TEST_CASE("bad JSON fields surface as config errors") {
    ExperimentConfig cfg;
    REQUIRE_THROWS_AS(config_from_json(nlohmann::json{{"dim", "six"}}, cfg), ConfigError);
    REQUIRE_THROWS_AS(config_from_json(nlohmann::json{{"function", {{"params", {1.0}}}}}, cfg),
                      ConfigError);
}

TEST_CASE("row pass logic and CSV layout") {
    const ReportRow ok = make_row(0, "x", 1.0, 1.0, 1e-12, 1e-12, 1e-10, true, 42);
    REQUIRE(ok.pass);
    const ReportRow bad = make_row(0, "x", 1.0, 1.0, 1e-3, 1e-3, 1e-10, true, 42);
    REQUIRE_FALSE(bad.pass);
    const ReportRow abs_ok = make_row(0, "x", 1.0, 1.0, 1e-12, 0.5, 1e-10, false, 42);
    REQUIRE(abs_ok.pass);

    const std::string csv = to_csv({ok, bad});
    REQUIRE(csv.rfind("trial,check,lhs_norm,rhs_norm,abs_err,rel_err,tolerance,pass\n", 0) == 0);
    REQUIRE(csv.find(",true\n") != std::string::npos);
    REQUIRE(csv.find(",false\n") != std::string::npos);
}

TEST_CASE("format_double round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 1e-17, -2.5e300, 0.0}) {
        REQUIRE(std::stod(format_double(v)) == v);
    }
}

TEST_CASE("suite output is byte-identical across repeated runs") {
    ExperimentConfig cfg;
    cfg.trials = 2;
    cfg.dim = 3;
    cfg.order = 2;
    const std::string a = to_csv(run_suite(cfg));
    const std::string b = to_csv(run_suite(cfg));
    REQUIRE(a == b);
    REQUIRE(a.find("false") == std::string::npos);
}

TEST_CASE("JSON report embeds config and rows") {
    ExperimentConfig cfg;
    cfg.trials = 1;
    cfg.dim = 2;
    cfg.order = 1;
    const auto rows = run_infra_checks(cfg);
    const nlohmann::json j = nlohmann::json::parse(to_json_report(cfg, rows));
    REQUIRE(j.at("config").at("dim").get<int>() == 2);
    REQUIRE(j.at("rows").size() == rows.size());
    REQUIRE(j.at("rows").at(0).at("check").get<std::string>() == rows[0].check);
}

TEST_CASE("matrix wire format round-trips") {
    CounterRng rng(17);
    const ComplexMatrix m = random_matrix(rng, 3, 2.0);
    const ComplexMatrix back = matrix_from_json(matrix_to_json(m));
    REQUIRE(back.rows() == 3);
    REQUIRE(back.entries() == m.entries());

    nlohmann::json bad = matrix_to_json(m);
    bad["re"] = std::vector<double>{1.0};
    REQUIRE_THROWS_AS(matrix_from_json(bad), ConfigError);
    REQUIRE_THROWS_AS(matrix_from_json(nlohmann::json::object()), ConfigError);
}
