// Command-line driver: build charts, verify their simplification, analyze
// fibers, run spin audits and point counts, and batch-certify the full desk
// matrix. Exit codes: 0 pass, 1 certification failure, 2 usage/config error,
// 3 resource guard exceeded.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "splm/run.hpp"

namespace {

using splm::json;

struct CliOptions {
    std::string config_path;
    std::vector<std::string> spec_strings;
    long q = 0;
    std::string json_path;
    long guard_gb = 0;
    long guard_enum = 0;
    std::vector<std::string> task_names;
};

/// Parse "p,n,r,s,chart,pivots" with pivots hyphen-separated, e.g.
/// "3,4,2,2,1,1-2".
splm::ChartSpec parse_spec_string(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) parts.push_back(item);
    if (parts.size() != 6)
        throw splm::config_error("--spec: expected p,n,r,s,chart,pivots (6 fields), got '" + text +
                                 "'");
    splm::ChartSpec spec;
    try {
        spec.p = std::stol(parts[0]);
        spec.n = std::stoi(parts[1]);
        spec.r = std::stoi(parts[2]);
        spec.s = std::stoi(parts[3]);
        spec.chart = std::stoi(parts[4]);
        std::stringstream ps(parts[5]);
        while (std::getline(ps, item, '-')) spec.pivots.push_back(std::stoi(item));
    } catch (const std::exception&) {
        throw splm::config_error("--spec: malformed number in '" + text + "'");
    }
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw splm::config_error(std::string("--spec: ") + e.what());
    }
    return spec;
}

/// Merge the config file (if any) with command-line flags; flags win.
splm::RunConfig assemble_config(const CliOptions& opt, const std::string& default_task) {
    splm::RunConfig cfg;
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw splm::config_error("cannot open config file: " + opt.config_path);
        json obj;
        try {
            obj = json::parse(in);
        } catch (const json::parse_error& e) {
            throw splm::config_error(std::string("config parse error: ") + e.what());
        }
        cfg = splm::parse_config(obj);
    } else {
        cfg.tasks = {default_task};
    }
    for (const auto& s : opt.spec_strings) cfg.specs.push_back(parse_spec_string(s));
    if (opt.q > 0) cfg.q = opt.q;
    if (opt.guard_gb > 0) cfg.guard_gb = opt.guard_gb;
    if (opt.guard_enum > 0) cfg.guard_enum = opt.guard_enum;
    if (!opt.json_path.empty()) cfg.json_path = opt.json_path;
    if (!opt.task_names.empty()) {
        cfg.tasks.clear();
        for (const auto& t : opt.task_names) {
            const auto& known = splm::all_tasks();
            if (std::find(known.begin(), known.end(), t) == known.end())
                throw splm::config_error("--task: unknown task '" + t + "'");
            cfg.tasks.push_back(t);
        }
    }
    if (cfg.tasks.empty()) throw splm::config_error("no tasks requested");
    return cfg;
}

splm::TaskResult dispatch(const std::string& task, const splm::ChartSpec& spec,
                          const splm::RunConfig& cfg) {
    if (task == "BUILD") return splm::run_build(spec);
    if (task == "SIMPLIFY_VERIFY") return splm::run_verify(spec, cfg.guard_gb);
    if (task == "FIBERS") return splm::run_fibers(spec, cfg.guard_gb);
    if (task == "SPIN") return splm::run_spin(spec, cfg.q, cfg.guard_enum);
    if (task == "COUNTS") return splm::run_counts(spec, cfg.q, cfg.guard_enum);
    throw splm::config_error("unknown task: " + task);
}

int run_tasks(const splm::RunConfig& cfg) {
    json report = json::object();
    bool pass = true;
    for (const auto& task : cfg.tasks) {
        json per_task = json::array();
        if (task == "CERTIFY_ALL") {
            long p = cfg.q > 0 ? cfg.q : (cfg.specs.empty() ? 3 : cfg.specs.front().p);
            auto r = splm::certify_all(p, cfg.guard_gb, cfg.guard_enum);
            pass = pass && r.pass;
            per_task.push_back(r.report);
        } else if (task == "CERTIFY") {
            for (const auto& spec : cfg.specs) {
                auto r = splm::certify_spec(spec, cfg.guard_gb, cfg.guard_enum);
                pass = pass && r.pass;
                per_task.push_back(r.report);
            }
        } else {
            for (const auto& spec : cfg.specs) {
                auto r = dispatch(task, spec, cfg);
                pass = pass && r.pass;
                per_task.push_back(r.report);
            }
        }
        report[task] = per_task;
    }
    report["pass"] = pass;
    std::string body = splm::canonical_dump(report);
    if (!cfg.json_path.empty()) {
        std::ofstream out(cfg.json_path);
        if (!out) throw splm::config_error("cannot write: " + cfg.json_path);
        out << body;
    }
    if (cfg.text) std::cout << body;
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic toolkit for affine charts of unitary splitting models"};
    app.require_subcommand(1);

    CliOptions opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", opt.config_path, "JSON run configuration file");
        cmd->add_option("--spec", opt.spec_strings,
                        "chart spec p,n,r,s,chart,pivots (pivots hyphen-separated; repeatable)");
        cmd->add_option("--q", opt.q, "prime for finite-field tasks (overrides spec p)");
        cmd->add_option("--json", opt.json_path, "write the JSON report to this path");
        cmd->add_option("--guard-gb", opt.guard_gb, "S-pair budget for basis computations");
        cmd->add_option("--guard-enum", opt.guard_enum, "assignment budget for enumeration");
        cmd->add_option("--task", opt.task_names, "task name (repeatable; overrides config)");
        return cmd;
    };

    std::map<std::string, std::string> verb_task = {
        {"build-chart", "BUILD"},         {"verify-simplification", "SIMPLIFY_VERIFY"},
        {"fiber-report", "FIBERS"},       {"spin-audit", "SPIN"},
        {"point-count", "COUNTS"},        {"certify", "CERTIFY"},
    };
    add_common(app.add_subcommand("build-chart", "construct a chart and print its presentation"));
    add_common(app.add_subcommand("verify-simplification",
                                  "check the simplified ideal against the raw chart"));
    add_common(app.add_subcommand("fiber-report", "generic/special fiber analysis"));
    add_common(app.add_subcommand("spin-audit", "rank-parity audit and census"));
    add_common(app.add_subcommand("point-count", "finite-field point counts with cross-checks"));
    add_common(app.add_subcommand("certify",
                                  "certify specs (or the full matrix via --task CERTIFY_ALL)"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const std::string verb = app.get_subcommands().front()->get_name();
        std::string default_task = verb_task.at(verb);
        splm::RunConfig cfg = assemble_config(opt, default_task);
        if (verb == "certify" && !opt.config_path.empty() &&
            std::find(cfg.tasks.begin(), cfg.tasks.end(), "CERTIFY_ALL") == cfg.tasks.end() &&
            opt.task_names.empty())
            cfg.tasks = {"CERTIFY"};
        bool needs_specs =
            std::find(cfg.tasks.begin(), cfg.tasks.end(), "CERTIFY_ALL") == cfg.tasks.end();
        if (needs_specs && cfg.specs.empty())
            throw splm::config_error("no chart specs given (use --spec or a config file)");
        return run_tasks(cfg);
    } catch (const splm::config_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const splm::guard_exceeded& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
