// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "pnvc/bounds.hpp"
#include "pnvc/deciders.hpp"
#include "pnvc/logic.hpp"
#include "pnvc/propcheck.hpp"
#include "pnvc/structure.hpp"
#include "pnvc/transform.hpp"
#include "test_support.hpp"

using namespace pnvc;
using namespace pnvc::test;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;

void report(int id, const char* title, const std::function<std::string(bool&)>& body, double limit_s) {
    bool ok = true;
    std::string detail;
    const auto t0 = Clock::now();
    try {
        detail = body(ok);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs >= limit_s) {
        ok = false;
        detail += " (over the time limit)";
    }
    if (!ok) ++failures;
    std::printf("%s criterion %2d: %s -- %s [%.2fs]\n", ok ? "PASS" : "FAIL", id, title, detail.c_str(), secs);
}

std::uint64_t seed() {
    const char* s = std::getenv("PNVC_SEED");
    return s ? std::strtoull(s, nullptr, 0) : 0;
}

SuiteReport suite(const char* name, std::size_t trials) {
    PropcheckConfig cfg;
    cfg.suites = {name};
    cfg.trials = trials;
    cfg.seed = seed();
    return propcheck(cfg).suites.at(0);
}

std::uint64_t metric(const SuiteReport& s, const char* key) { return s.metrics.value(key, std::uint64_t{0}); }

std::string counts(const SuiteReport& s) {
    std::string out = std::to_string(s.passed) + "/" + std::to_string(s.trials) + " passed";
    if (s.first_failure) out += "; first failure: " + s.first_failure->message;
    return out;
}

}  // namespace

int main() {
    report(1, "NET-A coverability and boundedness", [](bool& ok) {
        auto [net, m0] = net_a();
        const auto no = mk({1, 1, 0}), p3 = mk({0, 0, 1});
        const BoundValue len(1000);
        ok = ok && cover_backward(net, m0, no).verdict == CoverVerdict::NotCovered;
        ok = ok && cover_forward_bounded(net, m0, no, len).verdict == CoverVerdict::NotCovered;
        for (const auto& r : {cover_backward(net, m0, p3), cover_forward_bounded(net, m0, p3, len)})
            ok = ok && r.verdict == CoverVerdict::Covered && r.witness == seq(net, {"t1"});
        const auto b = is_bounded(net, m0);
        ok = ok && b.km_verdict == BoundedVerdict::Unbounded && b.scs_verdict == BoundedVerdict::Unbounded;
        ok = ok && b.self_covering && b.self_covering->sequence == seq(net, {"t1", "t2"});
        return std::string("(1,1,0) not-covered twice, (0,0,1) via [t1], unbounded via [t1,t2]");
    }, 1.0);

    report(2, "NET-B types, varieties and transfer", [](bool& ok) {
        auto [net, m0] = net_b();
        const auto d = analyze_structure(net);
        const auto t1 = *net.find_transition("t1"), t5 = *net.find_transition("t5");
        const PlaceId p5 = net.place_index("p5"), p6 = net.place_index("p6");
        ok = ok && d.types.assignment[t1] == d.types.assignment[t5];
        ok = ok && d.varieties.at(p5) == d.varieties.at(p6);
        const auto r = transfer(net, seq(net, {"t1", "t2", "t3", "t4"}), SubWord{{0}}, p5, p6, d);
        ok = ok && r.new_sequence == seq(net, {"t5", "t2", "t3", "t4"});
        return std::string("type(t1)=type(t5), var[p5]=var[p6], t1 -> t5");
    }, 1.0);

    const SuiteReport* oracle = nullptr;
    SuiteReport oracle_store;
    report(3, "oracle agreement on 200 random nets", [&](bool& ok) {
        oracle_store = suite("oracle-agreement", 200);
        oracle = &oracle_store;
        const auto conclusive = metric(oracle_store, "conclusive");
        ok = oracle_store.failed == 0 && conclusive * 100 >= 95 * oracle_store.trials;
        return counts(oracle_store) + ", " + std::to_string(conclusive) + " mutually conclusive";
    }, 60.0);

    report(4, "bound soundness on the YES instances", [&](bool& ok) {
        const auto s = suite("bound-soundness", 200);
        ok = s.failed == 0 && oracle && metric(s, "yes_instances") == metric(*oracle, "covered");
        return counts(s) + ", " + std::to_string(metric(s, "yes_instances")) + " YES instances, longest shortest witness " +
               std::to_string(metric(s, "max_shortest"));
    }, 0);

    report(5, "truncation on 500 instances", [](bool& ok) {
        const auto s = suite("truncation", 500);
        ok = s.failed == 0 && metric(s, "instances") == 500;
        return counts(s);
    }, 60.0);

    report(6, "transfer invariance on 500 transfers", [](bool& ok) {
        const auto s = suite("transfer", 500);
        ok = s.failed == 0 && metric(s, "transfers") == 500;
        return counts(s);
    }, 0);

    report(7, "type and variety caps", [](bool& ok) {
        const auto s = suite("caps", 500);
        ok = s.failed == 0 && metric(s, "nets") == 500;
        return counts(s);
    }, 0);

    report(8, "recurrence below closed form on {1..4}^4, i <= 3", [](bool& ok) {
        std::size_t n = 0;
        for (std::uint64_t m = 1; m <= 4; ++m)
            for (std::uint64_t W = 1; W <= 4; ++W)
                for (std::uint64_t R = 1; R <= 4; ++R)
                    for (std::uint64_t k = 1; k <= 4; ++k)
                        for (std::uint64_t i = 0; i <= 3; ++i) {
                            BoundParams p;
                            p.m = m;
                            p.W = W;
                            p.R = R;
                            p.k_prime = k;
                            ok = ok && cover_bound_rec(i, p) <= cover_bound_closed(i, p);
                            ++n;
                        }
        return std::to_string(n) + " parameter points";
    }, 10.0);

    report(9, "Karp-Miller vs self-covering search on 200 nets", [](bool& ok) {
        const auto s = suite("km-vs-scs", 200);
        ok = s.failed == 0;
        return counts(s) + ", " + std::to_string(metric(s, "conclusive")) + " conclusive (" +
               std::to_string(metric(s, "bounded")) + " bounded, " + std::to_string(metric(s, "unbounded")) +
               " unbounded)";
    }, 0);

    report(10, "logic verdicts on NET-A", [](bool& ok) {
        auto [net, m0] = net_a();
        auto v = [&](const char* f) { return check_phi(net, m0, *parse_formula(f, net)).verdict; };
        ok = v("EF(p1>=1 && p2>=1)") == Truth::False && v("{p1+p2+p3} < omega") == Truth::False &&
             v("EF(p3>=4)") == Truth::True && v("{p1+p2} < omega") == Truth::True;
        return std::string("false, false, true, true");
    }, 5.0);

    report(11, "pumping strengthening on 100 tiny nets", [](bool& ok) {
        const auto s = suite("strengthening", 100);
        ok = s.failed == 0 && metric(s, "strengthened") > 0;
        return counts(s) + ", " + std::to_string(metric(s, "strengthened")) + " weak decompositions strengthened";
    }, 0);

    report(12, "beta cross-check on 50 tiny nets", [](bool& ok) {
        const auto s = suite("beta-crosscheck", 50);
        ok = s.failed == 0 && s.vacuous == 0;
        return counts(s) + ", " + std::to_string(metric(s, "candidate_sets")) + " candidate sets";
    }, 0);

    return failures == 0 ? 0 : 1;
}
