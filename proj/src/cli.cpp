#include "schedlab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "schedlab/configlp.hpp"
#include "schedlab/errors.hpp"
#include "schedlab/gaplab.hpp"
#include "schedlab/lst.hpp"
#include "schedlab/maxmin.hpp"
#include "schedlab/oracle.hpp"
#include "schedlab/random_instance.hpp"

namespace schedlab {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1; // a valid "no" answer
constexpr int kExitError = 2;

void print_matrix(std::ostream& out, const MatrixXq& x) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (j) out << " ";
            out << format_rational(x(i, j));
        }
        out << "\n";
    }
}

void print_assignment(std::ostream& out, const Instance& instance, const IntegralAssignment& a) {
    for (int j = 0; j < instance.jobs(); ++j) out << "assign " << j << " " << a.machine_of[j] << "\n";
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    f << content;
}

std::vector<int> parse_k_list(const std::string& text) {
    std::vector<int> ks;
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t used = 0;
        ks.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("malformed k list");
    }
    if (ks.empty()) throw std::invalid_argument("empty k list");
    return ks;
}

struct Options {
    std::string instance_path;
    std::string certificate_path;
    std::string out_path;
    std::string target_text;
    std::string gamma_text;
    std::string epsilon_text = "1/100";
    std::string mode = "exact";
    std::string objective = "makespan";
    std::string k_list;
    std::string decide_text;
    int k = 0;
    bool allow_small_k = false;
    bool sparse = false;
    bool balancing = false;
    long long budget = 100'000'000;
    RandomSpec random;
    long long gamma_band = 0;
};

int dispatch(const std::string& command, const Options& opt, std::ostream& out) {
    auto instance = [&] { return parse_instance_file(opt.instance_path); };
    auto target = [&] { return parse_rational(opt.target_text); };

    if (command == "lstlp") {
        const LstLpResult r = lst_lp(instance(), target());
        if (r.status != LstLpResult::Status::Feasible) {
            out << "infeasible\n";
            return kExitNegative;
        }
        out << "feasible\n";
        print_matrix(out, r.assignment.x);
        return kExitOk;
    }
    if (command == "round") {
        const Instance inst = instance();
        const Rational t = target();
        const LstLpResult r = lst_lp(inst, t);
        if (r.status != LstLpResult::Status::Feasible) {
            out << "infeasible\n";
            return kExitNegative;
        }
        const IntegralAssignment a = shmoys_tardos_round(inst, r.assignment, t);
        print_assignment(out, inst, a);
        out << "makespan " << format_rational(makespan(inst, a)) << "\n";
        return kExitOk;
    }
    if (command == "approx-makespan" || command == "gcd-round") {
        const Instance inst = instance();
        const RoundedSchedule r = gcd_granularity_round_detail(inst);
        out << "target " << format_rational(r.target) << "\n";
        print_assignment(out, inst, r.assignment);
        out << "makespan " << format_rational(makespan(inst, r.assignment)) << "\n";
        return kExitOk;
    }
    if (command == "three-cut") {
        const Instance inst = instance();
        const RoundedSchedule r = three_cut_round_detail(inst, parse_rational(opt.gamma_text));
        out << "target " << format_rational(r.target) << "\n";
        print_assignment(out, inst, r.assignment);
        out << "makespan " << format_rational(makespan(inst, r.assignment)) << "\n";
        return kExitOk;
    }
    if (command == "configlp") {
        const Instance inst = instance();
        const ConfigMode mode = opt.mode == "exact" ? ConfigMode::Exact : ConfigMode::Relaxed;
        const ConfigLpOutcome r =
            config_lp_feasible(inst, target(), mode, parse_rational(opt.epsilon_text));
        if (r.status != ConfigLpOutcome::Status::Feasible) {
            out << "infeasible\n";
            return kExitNegative;
        }
        out << "feasible\n";
        const std::string text = serialize_config_solution(r.solution);
        if (opt.out_path.empty()) out << text;
        else write_file(opt.out_path, text);
        return kExitOk;
    }
    if (command == "project") {
        const Instance inst = instance();
        const ConfigSolution y = parse_config_solution_file(opt.certificate_path);
        print_matrix(out, project_to_assignment(inst, y).x);
        return kExitOk;
    }
    if (command == "verify-config") {
        const Instance inst = instance();
        const ConfigSolution y = parse_config_solution_file(opt.certificate_path);
        const Rational t = opt.target_text.empty() ? y.target : parse_rational(opt.target_text);
        if (auto violation = verify_config_solution(inst, y, t)) {
            out << "violation: " << *violation << "\n";
            return kExitNegative;
        }
        out << "ok\n";
        return kExitOk;
    }
    if (command == "gen-gap") {
        const GapInstance g = generate_gap_instance(opt.k, opt.allow_small_k);
        out << "k " << g.k << "\n";
        out << "height " << g.N << "\n";
        out << "machines " << g.instance.machines() << "\n";
        out << "jobs " << g.instance.jobs() << "\n";
        write_file(opt.out_path, serialize_instance(g.instance));
        if (!opt.certificate_path.empty())
            write_file(opt.certificate_path, serialize_config_solution(build_certificate(g)));
        return kExitOk;
    }
    if (command == "gap-report") {
        out << gap_report_tsv(gap_report(parse_k_list(opt.k_list)));
        return kExitOk;
    }
    if (command == "maxmin-balance") {
        const Instance inst = instance();
        if (!opt.decide_text.empty()) {
            const DecideResult r = decide_T(inst, parse_rational(opt.decide_text));
            if (r.status != DecideResult::Status::Solution) {
                out << "no-solution\n";
                return kExitNegative;
            }
            print_assignment(out, inst, r.assignment);
            out << "value " << format_rational(min_load(machine_loads(inst, r.assignment))) << "\n";
            return kExitOk;
        }
        const MaxMinResult r = maxmin_balance(inst);
        print_assignment(out, inst, r.assignment);
        out << "value " << format_rational(r.value) << "\n";
        return kExitOk;
    }
    if (command == "maxmin-half") {
        const Instance inst = instance();
        const HalfIntegralResult r =
            opt.sparse ? half_integral_sparse(inst) : half_integral_maxmin(inst);
        const Rational half(1, 2);
        for (int j = 0; j < inst.jobs(); ++j) {
            out << "assign " << j;
            for (int i = 0; i < inst.machines(); ++i)
                if (r.assignment.x(i, j) != 0) out << " " << i;
            out << "\n";
        }
        out << "value " << format_rational(r.value) << "\n";
        return kExitOk;
    }
    if (command == "brute") {
        const Instance inst = instance();
        const Objective objective =
            opt.objective == "makespan" ? Objective::Makespan : Objective::MaxMin;
        const OracleResult r = brute_force(inst, objective, opt.budget);
        out << "optimum " << format_rational(r.optimum) << "\n";
        print_assignment(out, inst, r.witness);
        return kExitOk;
    }
    if (command == "random") {
        RandomSpec spec = opt.random;
        spec.balancing = opt.balancing;
        if (opt.gamma_band > 0) spec.gamma_band = opt.gamma_band;
        const std::string text = serialize_instance(random_instance(spec));
        if (opt.out_path.empty()) out << text;
        else write_file(opt.out_path, text);
        return kExitOk;
    }
    throw std::logic_error("unhandled subcommand " + command);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"schedlab: exact LP relaxations, roundings, gap constructions and "
                 "combinatorial algorithms for scheduling on unrelated machines"};
    app.require_subcommand(1);
    Options opt;

    auto add_instance = [&](CLI::App* cmd) {
        cmd->add_option("--instance", opt.instance_path, "instance file")->required();
    };

    CLI::App* lstlp = app.add_subcommand("lstlp", "assignment-LP feasibility at a target makespan");
    add_instance(lstlp);
    lstlp->add_option("--target", opt.target_text)->required();

    CLI::App* round = app.add_subcommand("round", "solve the assignment LP and round it");
    add_instance(round);
    round->add_option("--target", opt.target_text)->required();

    add_instance(app.add_subcommand("approx-makespan", "2-approximate makespan schedule"));
    add_instance(app.add_subcommand("gcd-round", "(2 - g/M)-approximation via gcd granularity"));

    CLI::App* three_cut = app.add_subcommand("three-cut", "cut-strengthened rounding for banded times");
    add_instance(three_cut);
    three_cut->add_option("--gamma", opt.gamma_text)->required();

    CLI::App* configlp = app.add_subcommand("configlp", "configuration-LP feasibility");
    add_instance(configlp);
    configlp->add_option("--target", opt.target_text)->required();
    configlp->add_option("--mode", opt.mode)->check(CLI::IsMember({"exact", "relaxed"}));
    configlp->add_option("--epsilon", opt.epsilon_text);
    configlp->add_option("--out", opt.out_path, "write the certificate here instead of stdout");

    CLI::App* project = app.add_subcommand("project", "project a certificate to an x-matrix");
    add_instance(project);
    project->add_option("--certificate", opt.certificate_path)->required();

    CLI::App* verify = app.add_subcommand("verify-config", "verify a certificate exactly");
    add_instance(verify);
    verify->add_option("--certificate", opt.certificate_path)->required();
    verify->add_option("--target", opt.target_text, "defaults to the certificate's target");

    CLI::App* gen_gap = app.add_subcommand("gen-gap", "generate a gap-family instance");
    gen_gap->add_option("--k", opt.k)->required();
    gen_gap->add_flag("--allow-small-k", opt.allow_small_k);
    gen_gap->add_option("--out", opt.out_path)->required();
    gen_gap->add_option("--certificate", opt.certificate_path);

    CLI::App* gap_report_cmd = app.add_subcommand("gap-report", "TSV gap table per k");
    gap_report_cmd->add_option("--k", opt.k_list, "comma-separated k values")->required();

    CLI::App* balance = app.add_subcommand("maxmin-balance", "combinatorial 2-approximation");
    add_instance(balance);
    balance->add_option("--decide", opt.decide_text, "single decision at this T");

    CLI::App* half = app.add_subcommand("maxmin-half", "half-integral solutions");
    add_instance(half);
    half->add_flag("--sparse", opt.sparse, "at most floor(m/2) split jobs");

    CLI::App* brute = app.add_subcommand("brute", "exhaustive oracle");
    add_instance(brute);
    brute->add_option("--objective", opt.objective)->check(CLI::IsMember({"makespan", "maxmin"}));
    brute->add_option("--budget", opt.budget);

    CLI::App* random_cmd = app.add_subcommand("random", "seeded random instance");
    random_cmd->add_option("-m,--machines", opt.random.machines)->required();
    random_cmd->add_option("-n,--jobs", opt.random.jobs)->required();
    random_cmd->add_option("--pmax", opt.random.p_max);
    random_cmd->add_option("--density", opt.random.density_permille, "per-cell permille");
    random_cmd->add_option("--seed", opt.random.seed);
    random_cmd->add_flag("--balancing", opt.balancing);
    random_cmd->add_option("--gamma-band", opt.gamma_band);
    random_cmd->add_option("--out", opt.out_path);

    try {
        std::vector<std::string> argv = args;
        argv.insert(argv.begin(), "schedlab");
        std::vector<const char*> raw;
        for (const auto& a : argv) raw.push_back(a.c_str());
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kExitError;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), opt, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace schedlab
