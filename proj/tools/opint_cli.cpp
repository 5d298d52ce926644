// Experiment runner: every identity check as a subcommand, seeded and
// machine-readable. Exit codes: 0 all rows pass, 1 some row failed,
// 2 config error, 3 numerical non-convergence.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "opint/opint.hpp"

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::string p_list;
    std::string function_spec;
    opint::ExperimentConfig cfg;
};

std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        const double v = std::stod(item, &pos);
        if (pos != item.size()) throw opint::ConfigError("bad number in list: " + item);
        out.push_back(v);
    }
    return out;
}

// "kind:p1,p2,..." e.g. exp:1  sin:2  poly:1,0,2  sqrteps:0.5
void parse_function_spec(const std::string& spec, opint::ExperimentConfig& cfg) {
    const std::size_t colon = spec.find(':');
    cfg.function_kind = spec.substr(0, colon);
    cfg.function_params.clear();
    if (colon != std::string::npos)
        cfg.function_params = parse_double_list(spec.substr(colon + 1));
}

void attach_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "JSON config file");
    cmd->add_option("--seed", opt.cfg.seed, "RNG seed");
    cmd->add_option("--dim", opt.cfg.dim, "matrix dimension (<= 64)");
    cmd->add_option("--order", opt.cfg.order, "derivative / contraction order (<= 4)");
    cmd->add_option("--trials", opt.cfg.trials, "number of seeded trials");
    cmd->add_option("--p", opt.p_list, "comma-separated Schatten exponents, e.g. 1.5,2,4");
    cmd->add_option("--function", opt.function_spec, "function spec kind:params, e.g. poly:1,0,2");
    cmd->add_option("--slot", opt.cfg.slot, "restrict to one slot (0 = all)");
    cmd->add_option("--step", opt.cfg.step, "finite-difference step (0 = default)");
    cmd->add_option("--out", opt.out_path, "write report to file instead of stdout");
    cmd->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

void resolve_config(CliOptions& opt) {
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw opint::ConfigError("cannot open config file: " + opt.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw opint::ConfigError(std::string("config parse error: ") + e.what());
        }
        opint::config_from_json(j, opt.cfg);
    }
    if (!opt.p_list.empty()) opt.cfg.p_values = parse_double_list(opt.p_list);
    if (!opt.function_spec.empty()) parse_function_spec(opt.function_spec, opt.cfg);
    opt.cfg.validate();
    opt.cfg.make_function();  // reject unknown kinds before running
}

int emit_and_exit(const CliOptions& opt, const std::vector<opint::ReportRow>& rows) {
    const std::string text = opt.format == "json" ? opint::to_json_report(opt.cfg, rows)
                                                  : opint::to_csv(rows);
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out_path, std::ios::binary);
        if (!out) throw opint::ConfigError("cannot open output file: " + opt.out_path);
        out << text;
    }
    for (const auto& r : rows)
        if (!r.pass) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiple-operator-integral identity checks"};
    app.require_subcommand(1);

    CliOptions opt;
    using Runner = std::vector<opint::ReportRow> (*)(const opint::ExperimentConfig&);
    std::vector<std::pair<std::string, Runner>> table = {
        {"ddiff", &opint::run_ddiff_checks},       {"moi", &opint::run_moi_checks},
        {"derivative", &opint::run_derivative_checks}, {"perturb", &opint::run_perturb_checks},
        {"taylor", &opint::run_taylor_checks},     {"continuity", &opint::run_continuity_checks},
        {"ratio", &opint::run_ratio_checks},       {"suite", &opint::run_suite},
    };
    const std::map<std::string, std::string> descriptions = {
        {"ddiff", "divided-difference identities"},
        {"moi", "tensor fidelity and contraction lemmas"},
        {"derivative", "derivative formula vs finite differences"},
        {"perturb", "higher-order perturbation formula"},
        {"taylor", "Taylor remainder identity and estimate"},
        {"continuity", "modulus-of-continuity sweep"},
        {"ratio", "boundedness-constant statistics"},
        {"suite", "all checks"},
    };

    Runner selected = nullptr;
    for (auto& [name, runner] : table) {
        CLI::App* cmd = app.add_subcommand(name, descriptions.at(name));
        attach_common_flags(cmd, opt);
        Runner r = runner;
        cmd->callback([&selected, r] { selected = r; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        resolve_config(opt);
        return emit_and_exit(opt, selected(opt.cfg));
    } catch (const opint::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const opint::NonConvergence& e) {
        std::cerr << "numerical non-convergence: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
