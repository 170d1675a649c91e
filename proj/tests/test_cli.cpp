#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "pnvc/cli.hpp"
#include "pnvc/deciders.hpp"
#include "pnvc/generator.hpp"
#include "pnvc/propcheck.hpp"
#include "pnvc/structure.hpp"
#include "test_support.hpp"

using namespace pnvc;
using namespace pnvc::test;
using nlohmann::json;

namespace {

struct Ran {
    int code;
    json out;
    std::string err;
};

Ran run_json(RunConfig cfg) {
    cfg.json = true;
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    json j = out.str().empty() ? json() : json::parse(out.str());
    return {code, j, err.str()};
}

RunConfig on(Command c, const std::string& fixture_name = "net_a.pn") {
    RunConfig cfg;
    cfg.command = c;
    cfg.net_path = fixture(fixture_name);
    return cfg;
}

}  // namespace

TEST(Run, CoverNotCovered) {
    auto cfg = on(Command::Cover);
    cfg.target = "p1:1,p2:1";
    auto r = run_json(cfg);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out["verdict"], "not-covered");
    EXPECT_EQ(r.out["backward"]["verdict"], "not-covered");
    EXPECT_EQ(r.out["forward"]["verdict"], "not-covered");
}

TEST(Run, CoverWitness) {
    auto cfg = on(Command::Cover);
    cfg.target = "p3:1";
    auto r = run_json(cfg);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out["witness"], json::array({"t1"}));
}

TEST(Run, Bounded) {
    auto r = run_json(on(Command::Bounded));
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out["verdict"], "unbounded");
    EXPECT_EQ(r.out["witness"], json::array({"t1", "t2"}));
}

TEST(Run, Analyze) {
    auto r = run_json(on(Command::Analyze));
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out["k"], 2);
    EXPECT_EQ(r.out["k_prime"], 3);
    EXPECT_EQ(r.out["cover"], json::array({"p1", "p2"}));
    EXPECT_EQ(r.out["varieties"]["p3"], 0);
    auto b = run_json(on(Command::Analyze, "net_b.pn"));
    EXPECT_EQ(b.out["independent"], json::array({"p6"}));
    EXPECT_EQ(b.out["varieties"]["p5"], b.out["varieties"]["p6"]);
}

TEST(Run, BoundsReportsConstants) {
    auto cfg = on(Command::Bounds);
    cfg.c_prime = 3;
    auto r = run_json(cfg);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out["constants"]["c_prime"], 3);
    EXPECT_EQ(r.out["constants"]["d"], 2);
    EXPECT_EQ(r.out["params"]["k_prime"], 3);
    EXPECT_TRUE(r.out.contains("scs_bound"));
    RunConfig raw;
    raw.command = Command::Bounds;
    raw.m = 2;
    raw.W = 1;
    raw.R = 1;
    raw.i = 1;
    auto rb = run_json(raw);
    EXPECT_EQ(rb.out["cover_bound"]["recurrence"], 50);
}

TEST(Run, ModelChecking) {
    auto cfg = on(Command::Mc);
    cfg.formula = "EF(p3 >= 4) && {p1 + p2} < omega";
    EXPECT_EQ(run_json(cfg).out["verdict"], "true");
    cfg.formula = "EF(p1 >= 1 && p2 >= 1)";
    auto r = run_json(cfg);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_EQ(r.out["verdict"], "false");
    cfg.formula = "p1 >=";
    EXPECT_EQ(run_json(cfg).code, kExitUsage);
}

TEST(Run, InconclusiveExitCode) {
    auto cfg = on(Command::Bounded);
    cfg.method = "km";
    cfg.node_cap = 1;
    auto r = run_json(cfg);
    // One node is not enough to see the omega.
    EXPECT_EQ(r.out["verdict"], "inconclusive");
    EXPECT_EQ(r.code, kExitInconclusive);
}

TEST(Run, UsageErrors) {
    auto cfg = on(Command::Analyze, "missing.pn");
    EXPECT_EQ(run_json(cfg).code, kExitUsage);
    auto c = on(Command::Cover);
    c.target = "zz:1";
    EXPECT_EQ(run_json(c).code, kExitUsage);
}

TEST(Gen, DeterministicAndParses) {
    GenSpec spec;
    auto a = gen_net(spec, 9), b = gen_net(spec, 9);
    EXPECT_EQ(to_text(a.net, a.m0), to_text(b.net, b.m0));
    auto again = parse_net(to_text(a.net, a.m0));
    EXPECT_EQ(again.net, a.net);
    RunConfig cfg;
    cfg.command = Command::Gen;
    cfg.seed = 9;
    std::ostringstream o1, o2, e;
    run(cfg, o1, e);
    run(cfg, o2, e);
    EXPECT_EQ(o1.str(), o2.str());
}

TEST(Gen, PlantedCover) {
    GenSpec spec;
    spec.places = 4;
    spec.transitions = 5;
    spec.max_weight = 2;
    spec.target_vc = 2;
    auto g = gen_net(spec, 42);
    ASSERT_TRUE(g.planted_cover);
    EXPECT_EQ(g.planted_cover->count(), 2u);
    EXPECT_TRUE(is_vertex_cover(build_graph(g.net), *g.planted_cover));
    for (std::uint64_t s = 0; s < 200; ++s) {
        spec.target_vc = 1 + s % 4;
        auto h = gen_net(spec, s);
        EXPECT_TRUE(is_vertex_cover(build_graph(h.net), *h.planted_cover));
        EXPECT_LE(h.net.max_weight(), 2u);
        EXPECT_NO_THROW(analyze_structure(h.net));
    }
}

TEST(Gen, Caps) {
    GenSpec spec;
    spec.places = 5;
    spec.transitions = 6;
    spec.max_weight = 3;
    spec.max_initial = 4;
    std::size_t gadgets = 0;
    for (std::uint64_t s = 0; s < 300; ++s) {
        auto g = gen_net(spec, s);
        EXPECT_LE(g.net.max_weight(), 3u);
        EXPECT_LE(g.m0.max_value(), 4);
        for (TransitionId t = 0; t < g.net.num_transitions(); ++t) {
            std::size_t in = 0, out = 0;
            for (PlaceId p = 0; p < 5; ++p) {
                in += g.net.pre(p, t) > 0;
                out += g.net.post(p, t) > 0;
            }
            EXPECT_TRUE(in >= 1 && in <= 3 && out >= 1 && out <= 3);
        }
        gadgets += g.pumping_gadget;
    }
    EXPECT_GT(gadgets, 60u);
    EXPECT_LT(gadgets, 120u);
}

TEST(Gen, EdgeCases) {
    GenSpec spec;
    spec.transitions = 0;
    auto g = gen_net(spec, 1);
    EXPECT_EQ(parse_net(to_text(g.net, g.m0)).net.num_transitions(), 0u);
    EXPECT_EQ(is_bounded(g.net, g.m0).verdict, BoundedVerdict::Bounded);
    spec.transitions = 2;
    spec.target_vc = 0;
    try {
        gen_net(spec, 1);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InfeasibleSpec);
    }
}

TEST(Propcheck, ZeroTrialsVacuous) {
    PropcheckConfig cfg;
    cfg.trials = 0;
    auto rep = propcheck(cfg);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.suites.size(), propcheck_suite_names().size());
}

TEST(Propcheck, CorruptedTransferIsCaughtAndReplays) {
    PropcheckConfig cfg;
    cfg.suites = {"transfer"};
    cfg.trials = 10;
    cfg.corrupt_transfer = true;
    auto rep = propcheck(cfg);
    ASSERT_FALSE(rep.passed());
    const auto& c = *rep.suites[0].first_failure;
    EXPECT_FALSE(c.net_text.empty());
    auto again = run_trial("transfer", c.trial_seed, cfg.caps, true);
    EXPECT_EQ(again.status, TrialOutcome::Status::Fail);
    EXPECT_EQ(again.message, c.message);
    EXPECT_EQ(run_trial("transfer", c.trial_seed, cfg.caps, false).status, TrialOutcome::Status::Pass);

    RunConfig rc;
    rc.command = Command::Propcheck;
    rc.suites = {"transfer"};
    rc.trials = 5;
    rc.corrupt_transfer = true;
    EXPECT_EQ(run_json(rc).code, kExitPropertyFailure);
}

TEST(Propcheck, DeterministicReport) {
    PropcheckConfig cfg;
    cfg.trials = 15;
    cfg.seed = 5;
    EXPECT_EQ(propcheck(cfg).to_json().dump(), propcheck(cfg).to_json().dump());
    EXPECT_THROW(propcheck(PropcheckConfig{{"nope"}, 1, 0, {}, false}), Error);
}

TEST(Config, JsonAndEnv) {
    RunConfig cfg;
    apply_config_json(cfg, json{{"command", "cover"}, {"target", "p3:1"}, {"state_cap", 77}, {"seed", 3}});
    EXPECT_EQ(cfg.command, Command::Cover);
    EXPECT_EQ(cfg.target, "p3:1");
    EXPECT_EQ(cfg.state_cap, 77u);
    setenv("PNVC_SEED", "123", 1);
    apply_env(cfg);
    EXPECT_EQ(cfg.seed, 123u);
    setenv("PNVC_SEED", "x1", 1);
    EXPECT_THROW(apply_env(cfg), Error);
    unsetenv("PNVC_SEED");
    EXPECT_THROW(apply_config_json(cfg, json{{"command", "fly"}}), Error);
}
