#ifndef OPINT_REPORT_HPP
#define OPINT_REPORT_HPP

#include <cstdint>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "funcmodel.hpp"

namespace opint {

/// One verified identity or estimate. `pass` is rel_err <= tolerance for
/// relative checks, abs_err <= tolerance for absolute ones.
struct ReportRow {
    int trial = 0;
    std::string check;
    double lhs_norm = 0.0;
    double rhs_norm = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
};

inline ReportRow make_row(int trial, std::string check, double lhs_norm, double rhs_norm,
                          double abs_err, double rel_err, double tolerance, bool relative,
                          std::uint64_t seed) {
    ReportRow r;
    r.trial = trial;
    r.check = std::move(check);
    r.lhs_norm = lhs_norm;
    r.rhs_norm = rhs_norm;
    r.abs_err = abs_err;
    r.rel_err = rel_err;
    r.tolerance = tolerance;
    r.pass = (relative ? rel_err : abs_err) <= tolerance;
    r.seed = seed;
    return r;
}

/// Seeded experiment description shared by every subcommand.
struct ExperimentConfig {
    std::uint64_t seed = 42;
    std::size_t dim = 6;
    int order = 3;
    std::vector<double> p_values = {1.5, 2.0, 3.0, 4.0};
    std::string function_kind = "exp";
    std::vector<double> function_params = {1.0};
    int trials = 100;
    std::map<std::string, double> tolerances;
    int slot = 0;       // 0 = all valid slots
    double step = 0.0;  // 0 = per-order default
    std::vector<double> t_grid;

    void validate() const {
        if (dim < 1 || dim > 64) throw ConfigError("dim must be in [1, 64]");
        if (order < 1 || order > 4) throw ConfigError("order must be in [1, 4]");
        if (trials < 1) throw ConfigError("trials must be >= 1");
        for (double p : p_values)
            if (!(p > 1.0)) throw ConfigError("p values must be > 1");
        for (const auto& [name, tol] : tolerances)
            if (!(tol > 0.0)) throw ConfigError("tolerance " + name + " must be > 0");
    }

    double tolerance(const std::string& name, double fallback) const {
        auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }

    FunctionModel make_function() const {
        if (function_kind == "exp")
            return FunctionModel::exp(function_params.empty() ? 1.0 : function_params[0]);
        if (function_kind == "sin")
            return FunctionModel::sin(function_params.empty() ? 1.0 : function_params[0]);
        if (function_kind == "cos")
            return FunctionModel::cos(function_params.empty() ? 1.0 : function_params[0]);
        if (function_kind == "poly") {
            if (function_params.empty()) throw ConfigError("poly needs coefficients");
            return FunctionModel::polynomial(function_params);
        }
        if (function_kind == "invquad") return FunctionModel::inv_quad();
        if (function_kind == "sqrteps")
            return FunctionModel::sqrt_eps(function_params.empty() ? 1.0 : function_params[0]);
        throw ConfigError("unknown function kind: " + function_kind);
    }
};

inline void config_from_json(const nlohmann::json& j, ExperimentConfig& cfg) {
    try {
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("dim")) cfg.dim = j.at("dim").get<std::size_t>();
        if (j.contains("order")) cfg.order = j.at("order").get<int>();
        if (j.contains("p_values")) cfg.p_values = j.at("p_values").get<std::vector<double>>();
        if (j.contains("trials")) cfg.trials = j.at("trials").get<int>();
        if (j.contains("slot")) cfg.slot = j.at("slot").get<int>();
        if (j.contains("step")) cfg.step = j.at("step").get<double>();
        if (j.contains("t_grid")) cfg.t_grid = j.at("t_grid").get<std::vector<double>>();
        if (j.contains("function")) {
            const auto& fn = j.at("function");
            cfg.function_kind = fn.at("kind").get<std::string>();
            if (fn.contains("params"))
                cfg.function_params = fn.at("params").get<std::vector<double>>();
            else
                cfg.function_params.clear();
        }
        if (j.contains("tolerances"))
            cfg.tolerances = j.at("tolerances").get<std::map<std::string, double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config field: ") + e.what());
    }
}

inline nlohmann::json config_to_json(const ExperimentConfig& cfg) {
    nlohmann::json fn;
    fn["kind"] = cfg.function_kind;
    fn["params"] = cfg.function_params;
    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["dim"] = cfg.dim;
    j["order"] = cfg.order;
    j["p_values"] = cfg.p_values;
    j["trials"] = cfg.trials;
    j["slot"] = cfg.slot;
    j["step"] = cfg.step;
    j["t_grid"] = cfg.t_grid;
    j["function"] = fn;
    j["tolerances"] = cfg.tolerances;
    return j;
}

/// 17 significant digits: enough to round-trip a 64-bit float exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string to_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream out;
    out << "trial,check,lhs_norm,rhs_norm,abs_err,rel_err,tolerance,pass\n";
    for (const auto& r : rows) {
        out << r.trial << ',' << r.check << ',' << format_double(r.lhs_norm) << ','
            << format_double(r.rhs_norm) << ',' << format_double(r.abs_err) << ','
            << format_double(r.rel_err) << ',' << format_double(r.tolerance) << ','
            << (r.pass ? "true" : "false") << '\n';
    }
    return out.str();
}

inline nlohmann::json row_to_json(const ReportRow& r) {
    nlohmann::json j;
    j["trial"] = r.trial;
    j["check"] = r.check;
    j["lhs_norm"] = r.lhs_norm;
    j["rhs_norm"] = r.rhs_norm;
    j["abs_err"] = r.abs_err;
    j["rel_err"] = r.rel_err;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    j["seed"] = r.seed;
    return j;
}

inline std::string to_json_report(const ExperimentConfig& cfg, const std::vector<ReportRow>& rows) {
    nlohmann::json j;
    j["config"] = config_to_json(cfg);
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) j["rows"].push_back(row_to_json(r));
    return j.dump(2) + "\n";
}

} // namespace opint

#endif
