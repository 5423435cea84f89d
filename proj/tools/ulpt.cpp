#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ulpt/analysis.hpp"
#include "ulpt/certify.hpp"
#include "ulpt/exact.hpp"
#include "ulpt/io.hpp"
#include "ulpt/lpt.hpp"
#include "ulpt/verify.hpp"
#include "ulpt/worstcase.hpp"

namespace {

using namespace ulpt;

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string json_number_array(const std::vector<double>& values) {
    std::string out = "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_number(values[i]);
    }
    return out + "]";
}

std::string json_instance(const Instance& inst) {
    std::string out = "{\"name\": " + nlohmann::json(inst.name).dump();
    out += ", \"speeds\": " + json_number_array(inst.speeds);
    out += ", \"tasks\": " + json_number_array(inst.sizes);
    return out + "}";
}

void print_assignment_text(std::ostream& out, const Instance& inst,
                           const std::vector<int>& assignment, const std::vector<double>& loads) {
    for (int p = 0; p < inst.m(); ++p) {
        out << "  processor " << p + 1 << " (speed " << std::setprecision(6) << std::fixed
            << inst.speeds[static_cast<std::size_t>(p)] << "): tasks {";
        bool first = true;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            if (assignment[i] != p) continue;
            if (!first) out << ", ";
            out << i + 1;
            first = false;
        }
        out << "}, load " << loads[static_cast<std::size_t>(p)] << ", finish "
            << loads[static_cast<std::size_t>(p)] / inst.speeds[static_cast<std::size_t>(p)]
            << "\n";
        out.unsetf(std::ios_base::floatfield);
    }
}

int cmd_lpt(const std::string& path, const std::string& format) {
    Instance inst = load_instance_file(path);
    Schedule sched = lpt_schedule(inst);
    if (format == "json") {
        std::cout << "{\"instance\": " << json_instance(inst) << ", \"assignment\": [";
        for (std::size_t i = 0; i < sched.assignment.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << sched.assignment[i] + 1;
        }
        std::cout << "], \"loads\": " << json_number_array(sched.loads)
                  << ", \"finish_times\": " << json_number_array(sched.finish_times)
                  << ", \"makespan\": " << format_number(sched.makespan) << "}\n";
    } else if (format == "csv") {
        std::cout << "processor,speed,load,finish_time\n";
        for (int p = 0; p < inst.m(); ++p)
            std::cout << p + 1 << "," << format_number(inst.speeds[static_cast<std::size_t>(p)])
                      << "," << format_number(sched.loads[static_cast<std::size_t>(p)]) << ","
                      << format_number(sched.finish_times[static_cast<std::size_t>(p)]) << "\n";
    } else {
        std::cout << "LPT schedule for " << (inst.name.empty() ? path : inst.name) << " (m="
                  << inst.m() << ", n=" << inst.n() << ")\n";
        print_assignment_text(std::cout, inst, sched.assignment, sched.loads);
        std::cout << "  makespan: " << std::setprecision(6) << std::fixed << sched.makespan
                  << "\n";
    }
    return 0;
}

int cmd_opt(const std::string& path, const std::string& format, long long budget, bool enumerate) {
    Instance inst = load_instance_file(path);
    OptResult result = enumerate ? opt_enumerate(inst) : opt_bnb(inst, budget);
    if (format == "json") {
        std::cout << "{\"instance\": " << json_instance(inst)
                  << ", \"makespan\": " << format_number(result.makespan)
                  << ", \"proven\": " << (result.proven ? "true" : "false")
                  << ", \"nodes_explored\": " << result.nodes_explored << ", \"assignment\": [";
        for (std::size_t i = 0; i < result.assignment.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << result.assignment[i] + 1;
        }
        std::cout << "], \"loads\": " << json_number_array(result.loads) << "}\n";
    } else if (format == "csv") {
        std::cout << "processor,speed,load,finish_time\n";
        for (int p = 0; p < inst.m(); ++p)
            std::cout << p + 1 << "," << format_number(inst.speeds[static_cast<std::size_t>(p)])
                      << "," << format_number(result.loads[static_cast<std::size_t>(p)]) << ","
                      << format_number(result.loads[static_cast<std::size_t>(p)] /
                                       inst.speeds[static_cast<std::size_t>(p)])
                      << "\n";
    } else {
        std::cout << "optimal schedule for " << (inst.name.empty() ? path : inst.name) << " (m="
                  << inst.m() << ", n=" << inst.n() << ")\n";
        print_assignment_text(std::cout, inst, result.assignment, result.loads);
        std::cout << "  OPT: " << std::setprecision(6) << std::fixed << result.makespan
                  << (result.proven ? "" : "  [UNPROVEN: node budget exhausted]")
                  << "  (nodes explored: " << result.nodes_explored << ")\n";
        if (!result.proven) return 1;
    }
    return result.proven ? 0 : 1;
}

int cmd_ratio(const std::string& path, const std::string& format, long long budget) {
    Instance inst = load_instance_file(path);
    RatioReport report = approx_ratio(inst, budget);
    if (format == "json") {
        std::cout << "{\"instance\": " << json_instance(inst)
                  << ", \"lpt\": " << format_number(report.lpt)
                  << ", \"opt\": " << format_number(report.opt)
                  << ", \"ratio\": " << format_number(report.ratio)
                  << ", \"rho_m\": " << format_number(report.rho_m)
                  << ", \"gis_bound\": " << format_number(report.gis_bound)
                  << ", \"graham_bound\": " << format_number(report.graham_bound) << "}\n";
    } else if (format == "csv") {
        std::cout << "lpt,opt,ratio,rho_m,gis_bound,graham_bound\n"
                  << format_number(report.lpt) << "," << format_number(report.opt) << ","
                  << format_number(report.ratio) << "," << format_number(report.rho_m) << ","
                  << format_number(report.gis_bound) << "," << format_number(report.graham_bound)
                  << "\n";
    } else {
        std::cout << std::setprecision(6) << std::fixed;
        std::cout << "LPT makespan:  " << report.lpt << "\n"
                  << "OPT makespan:  " << report.opt << "\n"
                  << "ratio:         " << report.ratio << "\n"
                  << "rho_m:         " << report.rho_m << "\n"
                  << "GIS bound:     " << report.gis_bound << "\n"
                  << "Graham bound:  " << report.graham_bound << "\n";
    }
    return 0;
}

int cmd_rho(int m, const std::string& format) {
    double value = rho(m);
    if (format == "json")
        std::cout << "{\"m\": " << m << ", \"rho\": " << format_number(value) << "}\n";
    else if (format == "csv")
        std::cout << "m,rho\n" << m << "," << format_number(value) << "\n";
    else
        std::cout << std::setprecision(6) << std::fixed << value << "\n";
    return 0;
}

int cmd_gen_worst(int m, const std::string& output) {
    Instance inst = generate_gis_instance(m);
    if (output.empty())
        std::cout << serialize_instance(inst);
    else
        save_instance_file(inst, output);
    return 0;
}

int cmd_search(const SearchConfig& config, const std::string& format) {
    SearchResult result = search_worst(config);
    if (format == "json") {
        std::cout << "{\"m\": " << config.m << ", \"n_min\": " << config.n_min
                  << ", \"n_max\": " << config.n_max << ", \"restarts\": " << config.restarts
                  << ", \"steps_per_restart\": " << config.steps_per_restart
                  << ", \"step_scale\": " << format_number(config.step_scale)
                  << ", \"seed\": " << config.seed
                  << ", \"best_ratio\": " << format_number(result.best_ratio)
                  << ", \"ratio_bound\": " << format_number(result.ratio_bound)
                  << ", \"exceeded\": " << (result.exceeded ? "true" : "false")
                  << ", \"instances_evaluated\": " << result.instances_evaluated
                  << ", \"best_restart\": " << result.best_restart
                  << ", \"best_instance\": " << json_instance(result.best_instance) << "}\n";
    } else if (format == "csv") {
        std::cout << "m,best_ratio,ratio_bound,exceeded,instances_evaluated,best_restart\n"
                  << config.m << "," << format_number(result.best_ratio) << ","
                  << format_number(result.ratio_bound) << "," << (result.exceeded ? 1 : 0) << ","
                  << result.instances_evaluated << "," << result.best_restart << "\n";
    } else {
        std::cout << std::setprecision(6) << std::fixed;
        std::cout << "best ratio found:    " << result.best_ratio << "  (restart "
                  << result.best_restart << ")\n"
                  << "bound rho_m:         " << result.ratio_bound << "\n"
                  << "bound exceeded:      " << (result.exceeded ? "YES" : "no") << "\n"
                  << "instances evaluated: " << result.instances_evaluated << "\n";
        std::cout.unsetf(std::ios_base::floatfield);
        std::cout << "best instance:       " << serialize_instance(result.best_instance);
    }
    return result.exceeded ? 1 : 0;
}

int cmd_certify(const std::string& path, const std::string& format, long long budget) {
    Instance inst = load_instance_file(path);
    CertificationReport report = certify(inst, budget);
    if (format == "json") {
        std::cout << certification_report_to_json(report) << "\n";
    } else if (format == "csv") {
        std::cout << "condition,status,detail\n";
        for (const auto& c : report.conditions)
            std::cout << csv_escape(c.name) << "," << to_string(c.status) << ","
                      << csv_escape(c.detail) << "\n";
    } else {
        std::cout << "certification for " << (inst.name.empty() ? path : inst.name) << "\n";
        if (!std::isnan(report.rho_I))
            std::cout << "  rho_I = " << std::setprecision(6) << std::fixed << report.rho_I
                      << "\n";
        std::cout.unsetf(std::ios_base::floatfield);
        for (const auto& c : report.conditions)
            std::cout << "  [" << to_string(c.status) << "] " << c.name << ": " << c.detail
                      << "\n";
        std::cout << "verdict: " << report.verdict << "\n";
    }
    return 0;
}

int cmd_verify(const std::string& level, unsigned threads, const std::string& format) {
    VerifyOptions opts;
    opts.full = (level == "full");
    opts.threads = threads;
    std::ostream* progress = (format == "text") ? &std::cout : nullptr;
    auto results = run_acceptance(opts, progress);
    bool all_passed = true;
    for (const auto& r : results) all_passed = all_passed && r.passed;
    if (format == "json") {
        std::cout << "{\"level\": \"" << level << "\", \"passed\": "
                  << (all_passed ? "true" : "false") << ", \"criteria\": [";
        for (std::size_t i = 0; i < results.size(); ++i) {
            if (i) std::cout << ", ";
            std::cout << "{\"id\": " << results[i].id << ", \"name\": \"" << results[i].name
                      << "\", \"passed\": " << (results[i].passed ? "true" : "false")
                      << ", \"detail\": " << nlohmann::json(results[i].detail).dump() << "}";
        }
        std::cout << "]}\n";
    } else if (format == "csv") {
        std::cout << "id,name,passed\n";
        for (const auto& r : results)
            std::cout << r.id << "," << r.name << "," << (r.passed ? 1 : 0) << "\n";
    } else {
        std::cout << (all_passed ? "all criteria passed\n" : "CRITERIA FAILED\n");
    }
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LPT scheduling toolkit for uniform processors"};
    app.require_subcommand(1);

    std::string instance_path, format = "text", output, level = "quick";
    int m = 3;
    long long budget = ulpt::kDefaultNodeBudget;
    bool enumerate = false;
    unsigned threads = 0;
    ulpt::SearchConfig search_config;

    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "json", "csv"}))
            ->capture_default_str();
    };

    auto* lpt_cmd = app.add_subcommand("lpt", "run LPT on an instance file");
    lpt_cmd->add_option("file", instance_path, "instance file")->required();
    add_format(lpt_cmd);

    auto* opt_cmd = app.add_subcommand("opt", "exact optimal makespan and witness");
    opt_cmd->add_option("file", instance_path, "instance file")->required();
    opt_cmd->add_option("--budget", budget, "branch-and-bound node budget")->capture_default_str();
    opt_cmd->add_flag("--enumerate", enumerate, "force exhaustive enumeration");
    add_format(opt_cmd);

    auto* ratio_cmd = app.add_subcommand("ratio", "LPT/OPT approximation ratio report");
    ratio_cmd->add_option("file", instance_path, "instance file")->required();
    ratio_cmd->add_option("--budget", budget, "branch-and-bound node budget")->capture_default_str();
    add_format(ratio_cmd);

    auto* rho_cmd = app.add_subcommand("rho", "tight worst-case ratio rho_m");
    rho_cmd->add_option("--m", m, "number of processors")->required()->check(CLI::PositiveNumber);
    add_format(rho_cmd);

    auto* gen_cmd = app.add_subcommand("gen-worst", "emit the tight worst-case instance");
    gen_cmd->add_option("--m", m, "number of processors (2..8)")->required();
    gen_cmd->add_option("-o,--output", output, "write to file instead of stdout");

    auto* search_cmd = app.add_subcommand("search", "hill-climb for high-ratio instances");
    search_cmd->add_option("--m", search_config.m, "number of processors")->required();
    search_cmd->add_option("--n-max", search_config.n_max, "maximum task count")->required();
    search_cmd->add_option("--n-min", search_config.n_min, "minimum task count")
        ->capture_default_str();
    search_cmd->add_option("--restarts", search_config.restarts, "number of restarts")
        ->capture_default_str();
    search_cmd->add_option("--steps", search_config.steps_per_restart, "steps per restart")
        ->capture_default_str();
    search_cmd->add_option("--step-scale", search_config.step_scale, "relative perturbation size")
        ->capture_default_str();
    search_cmd->add_option("--seed", search_config.seed, "random seed")
        ->envname("UNIFORM_LPT_SEED")
        ->capture_default_str();
    search_cmd->add_option("--budget", search_config.solver_node_budget, "solver node budget")
        ->capture_default_str();
    search_cmd->add_flag("--include-gis", search_config.include_gis,
                         "seed restart 0 with the tight instance");
    search_cmd->add_option("--threads", search_config.threads, "worker threads (0 = auto)")
        ->capture_default_str();
    add_format(search_cmd);

    auto* certify_cmd = app.add_subcommand("certify", "check the necessary minimality conditions");
    certify_cmd->add_option("file", instance_path, "instance file")->required();
    certify_cmd->add_option("--budget", budget, "solver node budget")->capture_default_str();
    add_format(certify_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "run the built-in verification suite");
    verify_cmd->add_option("--level", level, "quick or full")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();
    verify_cmd->add_option("--threads", threads, "worker threads (0 = auto)")
        ->capture_default_str();
    add_format(verify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (lpt_cmd->parsed()) return cmd_lpt(instance_path, format);
        if (opt_cmd->parsed()) return cmd_opt(instance_path, format, budget, enumerate);
        if (ratio_cmd->parsed()) return cmd_ratio(instance_path, format, budget);
        if (rho_cmd->parsed()) return cmd_rho(m, format);
        if (gen_cmd->parsed()) return cmd_gen_worst(m, output);
        if (search_cmd->parsed()) return cmd_search(search_config, format);
        if (certify_cmd->parsed()) return cmd_certify(instance_path, format, budget);
        if (verify_cmd->parsed()) return cmd_verify(level, threads, format);
    } catch (const ulpt::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
