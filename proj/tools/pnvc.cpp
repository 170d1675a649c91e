#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "pnvc/cli.hpp"
#include "pnvc/errors.hpp"
#include "pnvc/propcheck.hpp"

namespace {

// The config file seeds the defaults; explicit flags then override it.
void preload_config(int argc, char** argv, pnvc::RunConfig& cfg) {
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) != "--config") continue;
        std::ifstream in(argv[i + 1]);
        if (!in) throw pnvc::Error(pnvc::ErrorCode::InvalidArgument, std::string("cannot open config ") + argv[i + 1]);
        pnvc::apply_config_json(cfg, nlohmann::json::parse(in));
    }
}

}  // namespace

int main(int argc, char** argv) {
    pnvc::RunConfig cfg;
    try {
        preload_config(argc, argv, cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pnvc::kExitUsage;
    }

    CLI::App app{"pnvc: coverability, boundedness and EF model checking for Petri nets"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    app.add_option("--config", config_path, "JSON file mirroring the flags");
    app.add_flag("--json", cfg.json, "machine-readable output");
    app.add_option("--seed", cfg.seed, "RNG seed (PNVC_SEED overrides)");
    app.add_option("--state-cap", cfg.state_cap);
    app.add_option("--node-cap", cfg.node_cap);
    app.add_option("--c-prime", cfg.c_prime, "unpinned exponent constant c'");
    app.add_option("--d", cfg.d, "unpinned exponent constant d");
    app.add_flag("--approximate", cfg.approximate, "greedy vertex cover instead of the exact one");

    auto* analyze = app.add_subcommand("analyze", "structural decomposition");
    analyze->add_option("net", cfg.net_path)->required();

    auto* bounds = app.add_subcommand("bounds", "evaluate the length bounds");
    bounds->add_option("net", cfg.net_path);
    bounds->add_option("--target", cfg.target, "sets R from its largest entry");
    bounds->add_option("-i", cfg.i);
    bounds->add_option("-j", cfg.j);
    bounds->add_option("-m", cfg.m);
    bounds->add_option("-W", cfg.W);
    bounds->add_option("--k-prime", cfg.k_prime);
    bounds->add_option("-R", cfg.R);
    bounds->add_option("-U", cfg.U);

    auto* cover = app.add_subcommand("cover", "coverability");
    cover->add_option("net", cfg.net_path)->required();
    cover->add_option("--target", cfg.target, "place:count list")->required();
    cover->add_option("--method", cfg.method)->check(CLI::IsMember({"backward", "forward", "both"}));
    cover->add_option("--max-len", cfg.max_len, "forward depth (default: closed bound)");

    auto* bounded = app.add_subcommand("bounded", "boundedness");
    bounded->add_option("net", cfg.net_path)->required();
    bounded->add_option("--method", cfg.method)->check(CLI::IsMember({"km", "scs", "both"}));
    bounded->add_option("--max-len", cfg.bounded_max_len);

    auto* mc = app.add_subcommand("mc", "check a formula");
    mc->add_option("net", cfg.net_path)->required();
    mc->add_option("--formula", cfg.formula)->required();
    mc->add_option("--max-depth", cfg.max_depth);
    mc->add_option("--mc-state-cap", cfg.mc_state_cap);
    mc->add_option("--fallback-depth", cfg.fallback_depth);

    auto* gen = app.add_subcommand("gen", "random net");
    gen->add_option("--places", cfg.gen_places);
    gen->add_option("--transitions", cfg.gen_transitions);
    gen->add_option("--max-weight", cfg.gen_max_weight)->check(CLI::PositiveNumber);
    gen->add_option("--max-initial", cfg.gen_max_initial)->check(CLI::NonNegativeNumber);
    gen->add_option("--target-vc", cfg.gen_target_vc);

    auto* prop = app.add_subcommand("propcheck", "property suites");
    prop->add_option("--suite", cfg.suites)->check(CLI::IsMember(pnvc::propcheck_suite_names()));
    prop->add_option("--trials", cfg.trials);
    prop->add_flag("--corrupt-transfer", cfg.corrupt_transfer, "harness self-test");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? pnvc::kExitOk : pnvc::kExitUsage;
    }
    for (auto* sub : app.get_subcommands()) cfg.command = *pnvc::parse_command(sub->get_name());

    try {
        pnvc::apply_env(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return pnvc::kExitUsage;
    }
    return pnvc::run(cfg, std::cout, std::cerr);
}
