#include <gid/experiment.hpp>
#include <gid/instance.hpp>
#include <gid/minsat.hpp>
#include <gid/oracle.hpp>
#include <gid/solvers.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

constexpr int kExitFound = 0;
constexpr int kExitFail = 2;
constexpr int kExitUsage = 1;

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw gid::ParseError("cannot open '" + path + "' for reading");
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw gid::ParseError("cannot open '" + path + "' for writing");
    return f;
}

std::vector<size_t> parse_ell_list(const std::string& text) {
    std::vector<size_t> out;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoul(item));
    return out;
}

struct SolveOptions {
    std::string instance_path;
    std::string strategy = "prange";
    size_t p = 0, ell = 0;
    std::string ell_list;
    uint64_t seed = 0;
    uint64_t budget_decomps = 100;
    uint64_t budget_samples = 0;
    unsigned threads = 1;
    std::string out;
};

void add_solve_options(CLI::App* cmd, SolveOptions& o) {
    cmd->add_option("instance", o.instance_path, "instance file (.gid)")->required();
    cmd->add_option("--strategy", o.strategy,
                    "prange|lee_brickell|leon|stern|finiasz_sendrier|multi_decomp|gi_random");
    cmd->add_option("--p", o.p, "enumeration weight");
    cmd->add_option("--ell", o.ell, "window length");
    cmd->add_option("--ell-list", o.ell_list, "comma-separated identity block sizes");
    cmd->add_option("--seed", o.seed, "random seed")->required();
    cmd->add_option("--budget-decomps", o.budget_decomps, "max decompositions");
    cmd->add_option("--budget-samples", o.budget_samples,
                    "max samples per decomposition (0 = 10*k)");
    cmd->add_option("--threads", o.threads, "worker threads");
    cmd->add_option("--out", o.out, "solution output file");
}

gid::StrategyConfig make_strategy(const SolveOptions& o) {
    auto kind = gid::strategy_from_name(o.strategy);
    if (!kind) throw gid::ConfigError("unknown strategy '" + o.strategy + "'");
    gid::StrategyConfig cfg;
    cfg.kind = *kind;
    cfg.p = o.p;
    cfg.ell = o.ell;
    if (!o.ell_list.empty()) cfg.ell_list = parse_ell_list(o.ell_list);
    cfg.seed = o.seed;
    // common defaults for the partial-elimination strategy
    if (cfg.kind == gid::StrategyKind::finiasz_sendrier && o.p == 0 && o.ell == 0) {
        cfg.p = 2;
        cfg.ell = 4;
    }
    return cfg;
}

int report_solve(const gid::DecodeResult& res, const std::string& out) {
    char elapsed[32];
    snprintf(elapsed, sizeof(elapsed), "%.3f ms", res.elapsed_seconds * 1e3);
    if (res.found) {
        std::cout << "found weight " << res.weight << " after " << res.decompositions_used
                  << " decompositions, " << res.samples_used << " samples (" << elapsed
                  << ")\n";
        if (!out.empty()) {
            auto f = open_out(out);
            gid::write_solution(f, *res.x);
        } else {
            std::cout << res.x->to_string() << "\nweight: " << res.weight << '\n';
        }
        return kExitFound;
    }
    std::cout << "fail: budget exhausted after " << res.decompositions_used
              << " decompositions, " << res.samples_used << " samples (" << elapsed << ")\n";
    return kExitFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized-inverse decoding toolkit"};
    app.require_subcommand(1);

    // gen
    struct {
        std::string problem = "sdp";
        uint32_t q = 2;
        size_t n = 0, k = 0, t = 0;
        std::string mode = "random";
        uint64_t seed = 0;
        std::string out, error_out;
    } gen;
    auto* cmd_gen = app.add_subcommand("gen", "generate a random or planted instance");
    cmd_gen->add_option("--problem", gen.problem, "sdp|lwp");
    cmd_gen->add_option("--q", gen.q, "field order")->required();
    cmd_gen->add_option("--n", gen.n, "code length")->required();
    cmd_gen->add_option("--k", gen.k, "code dimension")->required();
    cmd_gen->add_option("--t", gen.t, "target weight")->required();
    cmd_gen->add_option("--mode", gen.mode, "random|planted");
    cmd_gen->add_option("--seed", gen.seed, "random seed")->required();
    cmd_gen->add_option("--out", gen.out, "instance output file")->required();
    cmd_gen->add_option("--error-out", gen.error_out, "write the planted error here");

    // solve-cwp / solve-swp
    SolveOptions cwp, swp;
    auto* cmd_cwp = app.add_subcommand("solve-cwp", "search a low-weight coset solution");
    add_solve_options(cmd_cwp, cwp);
    auto* cmd_swp = app.add_subcommand("solve-swp", "search a low-weight codeword");
    add_solve_options(cmd_swp, swp);

    // to-minsat
    struct {
        std::string instance_path, out;
        uint64_t seed = 0x6A1DC5EEULL;
    } tms;
    auto* cmd_tms = app.add_subcommand("to-minsat", "export the affine-constraint reduction");
    cmd_tms->add_option("instance", tms.instance_path, "instance file (.gid), q = 2")->required();
    cmd_tms->add_option("--out", tms.out, "affsat output file")->required();
    cmd_tms->add_option("--seed", tms.seed, "decomposition seed");

    // brute-minsat
    struct {
        std::string affsat_path, out;
    } bms;
    auto* cmd_bms = app.add_subcommand("brute-minsat", "exhaustive affine MIN-SAT solver");
    cmd_bms->add_option("affsat", bms.affsat_path, "affsat input file")->required();
    cmd_bms->add_option("--out", bms.out, "assignment output file");

    // verify
    struct {
        std::string instance_path, solution_path;
    } ver;
    auto* cmd_verify = app.add_subcommand("verify", "check a solution file");
    cmd_verify->add_option("instance", ver.instance_path)->required();
    cmd_verify->add_option("solution", ver.solution_path)->required();

    // experiment easy-weights
    gid::ExperimentConfig exp;
    std::string exp_format = "csv";
    unsigned exp_threads = 1;
    auto* cmd_exp = app.add_subcommand("experiment", "reproducible weight-coverage runs");
    cmd_exp->require_subcommand(1);
    auto* cmd_easy = cmd_exp->add_subcommand("easy-weights", "weight coverage sweep");
    cmd_easy->add_option("--n", exp.n, "code length")->required();
    cmd_easy->add_option("--k", exp.k, "code dimension")->required();
    cmd_easy->add_option("--q", exp.q, "field order")->required();
    cmd_easy->add_option("--iters", exp.iterations, "iterations per decomposition");
    cmd_easy->add_option("--decomps", exp.decompositions, "number of decompositions");
    cmd_easy->add_option("--seed", exp.seed, "random seed")->required();
    cmd_easy->add_option("--out", exp.output_path, "report output file");
    cmd_easy->add_option("--format", exp_format, "csv|json");
    cmd_easy->add_option("--threads", exp_threads, "worker threads");

    // gv
    struct {
        size_t n = 0, k = 0;
        uint32_t q = 2;
    } gv;
    auto* cmd_gv = app.add_subcommand("gv", "uniqueness/multiplicity threshold weight");
    cmd_gv->add_option("--n", gv.n, "code length")->required();
    cmd_gv->add_option("--k", gv.k, "code dimension")->required();
    cmd_gv->add_option("--q", gv.q, "field order")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*cmd_gen) {
            gid::ProblemKind pk =
                gen.problem == "lwp" ? gid::ProblemKind::lwp : gid::ProblemKind::sdp;
            if (gen.problem != "sdp" && gen.problem != "lwp")
                throw gid::ConfigError("problem must be sdp or lwp");
            gid::GenMode mode =
                gen.mode == "planted" ? gid::GenMode::planted : gid::GenMode::random;
            if (gen.mode != "random" && gen.mode != "planted")
                throw gid::ConfigError("mode must be random or planted");
            auto g = gid::gen_instance(gen.n, gen.k, gen.q, gen.t, mode, gen.seed, pk);
            auto f = open_out(gen.out);
            gid::write_gid(f, g.inst);
            if (!gen.error_out.empty() && g.planted_error) {
                auto fe = open_out(gen.error_out);
                gid::write_solution(fe, *g.planted_error);
            }
            return kExitFound;
        }
        if (*cmd_cwp) {
            auto fi = open_in(cwp.instance_path);
            auto inst = gid::read_gid(fi).to_sdp();
            gid::Budget budget{cwp.budget_decomps, cwp.budget_samples, std::nullopt};
            auto res = gid::solve_cwp(inst, make_strategy(cwp), budget, cwp.threads);
            return report_solve(res, cwp.out);
        }
        if (*cmd_swp) {
            auto fi = open_in(swp.instance_path);
            auto inst = gid::read_gid(fi).to_lwp();
            gid::Budget budget{swp.budget_decomps, swp.budget_samples, std::nullopt};
            auto res = gid::solve_swp(inst, make_strategy(swp), budget, swp.threads);
            return report_solve(res, swp.out);
        }
        if (*cmd_tms) {
            auto fi = open_in(tms.instance_path);
            auto inst = gid::read_gid(fi);
            gid::MinSatInstance ms;
            if (inst.problem == gid::ProblemKind::sdp)
                ms = gid::reduce_cwp(inst.H, *inst.s, tms.seed).first;
            else
                ms = gid::reduce_swp(inst.H, tms.seed).first;
            auto fo = open_out(tms.out);
            gid::write_affsat(fo, ms);
            std::cout << "wrote " << ms.constraints.size() << " constraints over "
                      << ms.n_vars << " variables\n";
            return kExitFound;
        }
        if (*cmd_bms) {
            auto fi = open_in(bms.affsat_path);
            auto ms = gid::read_affsat(fi);
            auto [gamma, mu] = gid::brute_minsat(ms);
            std::cout << "minimum satisfied constraints: " << mu << '\n';
            std::cout << "assignment: ";
            gid::write_assignment(std::cout, gamma);
            if (!bms.out.empty()) {
                auto fo = open_out(bms.out);
                gid::write_assignment(fo, gamma);
            }
            return kExitFound;
        }
        if (*cmd_verify) {
            auto fi = open_in(ver.instance_path);
            auto inst = gid::read_gid(fi);
            auto fs = open_in(ver.solution_path);
            gid::PrimeField f(inst.q);
            bool weight_ok = false;
            gid::FieldVector x = gid::read_solution(fs, f, inst.n, &weight_ok);
            bool ok = weight_ok && (inst.problem == gid::ProblemKind::sdp
                                        ? gid::verify_solution(inst.to_sdp(), x)
                                        : gid::verify_solution(inst.to_lwp(), x));
            std::cout << (ok ? "valid" : "invalid") << '\n';
            return ok ? kExitFound : kExitFail;
        }
        if (*cmd_easy) {
            auto rep = gid::run_easy_weights(exp, exp_threads);
            auto [lo, hi] = rep.summary();
            std::cout << "reached weights span [" << lo << ", " << hi << "], "
                      << rep.missing_after(rep.iterations).size()
                      << " weights never reached (" << rep.elapsed_us / 1000 << " ms)\n";
            if (!exp.output_path.empty()) {
                auto fo = open_out(exp.output_path);
                if (exp_format == "json")
                    gid::write_json(fo, exp, rep);
                else
                    gid::write_csv(fo, rep);
            }
            return kExitFound;
        }
        if (*cmd_gv) {
            int lo = gid::gv_threshold(gv.n, gv.k, gv.q);
            std::cout << "threshold: " << lo << " (inclusive cumulative sum), "
                      << gid::gv_threshold_adjacent(gv.n, gv.k, gv.q)
                      << " (adjacent convention)\n";
            return kExitFound;
        }
    } catch (const gid::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
