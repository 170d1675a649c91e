#include "pnvc/propcheck.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "pnvc/bounds.hpp"
#include "pnvc/deciders.hpp"
#include "pnvc/generator.hpp"
#include "pnvc/logic.hpp"
#include "pnvc/structure.hpp"
#include "pnvc/transform.hpp"

namespace pnvc {

using nlohmann::json;
using Status = TrialOutcome::Status;

namespace {

TrialOutcome fail(const PetriNet& net, const Marking& m0, std::string msg, json inputs = json::object()) {
    TrialOutcome out;
    out.status = Status::Fail;
    out.message = std::move(msg);
    out.net_text = to_text(net, m0);
    out.inputs = std::move(inputs);
    return out;
}

TrialOutcome vacuous(json metrics = json::object()) {
    TrialOutcome out;
    out.status = Status::Vacuous;
    out.metrics = std::move(metrics);
    return out;
}

TrialOutcome pass(json metrics = json::object()) {
    TrialOutcome out;
    out.metrics = std::move(metrics);
    return out;
}

json seq_json(const PetriNet& net, const FiringSequence& seq) {
    json a = json::array();
    for (TransitionId t : seq) a.push_back(net.transition_name(t));
    return a;
}

json marking_json(const PetriNet& net, const Marking& m) {
    json o = json::object();
    for (PlaceId p = 0; p < m.size(); ++p)
        if (m[p]) o[net.place_name(p)] = m[p];
    return o;
}

json set_json(const PetriNet& net, const PlaceSet& s) {
    json a = json::array();
    for (PlaceId p : s.members()) a.push_back(net.place_name(p));
    return a;
}

// --- instance families

GenSpec small_spec(Rng& rng) {
    GenSpec s;
    s.places = rng.uniform(1, 4);
    s.transitions = rng.uniform(1, 5);
    s.max_weight = static_cast<Weight>(rng.uniform(1, 2));
    s.max_initial = 2;
    return s;
}

GenSpec tiny_spec(Rng& rng) {
    GenSpec s;
    s.places = rng.uniform(1, 3);
    s.transitions = rng.uniform(1, 3);
    s.max_weight = static_cast<Weight>(rng.uniform(1, 2));
    s.max_initial = 2;
    return s;
}

struct CoverInstance {
    GeneratedNet g;
    Marking target;
};

CoverInstance cover_instance(std::uint64_t seed) {
    Rng rng(seed);
    const GenSpec spec = small_spec(rng);
    CoverInstance ci{gen_net(spec, rng.next()), Marking()};
    std::vector<Tokens> t(spec.places);
    for (auto& v : t) v = static_cast<Tokens>(rng.uniform(0, 2));
    ci.target = Marking(t);
    return ci;
}

BoundParams cover_params(const PetriNet& net, const Marking& target, std::uint64_t k_prime) {
    BoundParams p;
    p.m = net.num_places();
    p.W = std::max<Weight>(1, net.max_weight());
    p.k_prime = k_prime;
    p.R = std::max<Tokens>(0, target.max_value());
    return p;
}

// Cover places c1..cr on a ring; every ring step has a few options, each
// copied onto every place in xs, so the xs share one variety.
struct RingInstance {
    PetriNet net;
    Marking m0;
    std::vector<PlaceId> xs;
    std::size_t ring = 0;
    std::vector<std::size_t> step_of;       // per transition
    std::vector<PlaceId> x_of;              // per transition
    std::vector<Tokens> weight_of;          // signed effect on x_of
    std::optional<Decomposition> decomp;
};

std::optional<RingInstance> ring_instance(Rng& rng, Weight max_w) {
    RingInstance ri;
    ri.ring = rng.uniform(2, 3);
    const std::size_t nx = rng.uniform(2, 3);
    const std::size_t m = ri.ring + nx;
    std::vector<std::string> places;
    for (std::size_t i = 0; i < ri.ring; ++i) places.push_back("c" + std::to_string(i + 1));
    for (std::size_t j = 0; j < nx; ++j) {
        places.push_back("x" + std::to_string(j + 1));
        ri.xs.push_back(ri.ring + j);
    }
    std::vector<std::vector<Tokens>> options(ri.ring);
    for (auto& opt : options) {
        const std::size_t k = rng.uniform(2, 3);
        opt.push_back(static_cast<Tokens>(rng.uniform(1, max_w)));
        opt.push_back(-static_cast<Tokens>(rng.uniform(1, max_w)));
        if (k == 3) {
            const auto w = static_cast<Tokens>(rng.uniform(1, max_w));
            opt.push_back(rng.chance(0.5) ? w : -w);
        }
    }
    std::vector<std::tuple<std::size_t, PlaceId, Tokens>> ts;
    for (std::size_t i = 0; i < ri.ring; ++i)
        for (Tokens a : options[i])
            for (PlaceId x : ri.xs) ts.emplace_back(i, x, a);
    const std::size_t n = ts.size();
    std::vector<Weight> pre(m * n, 0), post(m * n, 0);
    std::vector<std::string> names;
    for (std::size_t t = 0; t < n; ++t) {
        auto [i, x, a] = ts[t];
        names.push_back("t" + std::to_string(t + 1));
        pre[i * n + t] = 1;
        post[((i + 1) % ri.ring) * n + t] = 1;
        (a > 0 ? post : pre)[x * n + t] = static_cast<Weight>(a > 0 ? a : -a);
        ri.step_of.push_back(i);
        ri.x_of.push_back(x);
        ri.weight_of.push_back(a);
    }
    ri.net = PetriNet("ring", places, names, pre, post);
    std::vector<Tokens> tok(m, 0);
    tok[0] = 1;
    for (PlaceId x : ri.xs) tok[x] = static_cast<Tokens>(rng.uniform(0, 3));
    ri.m0 = Marking(tok);
    Decomposition d = analyze_structure(ri.net);
    for (PlaceId c = 0; c < ri.ring; ++c)
        if (!d.in_cover(c)) return std::nullopt;
    for (PlaceId x : ri.xs)
        if (d.in_cover(x) || !d.same_variety(x, ri.xs[0])) return std::nullopt;
    ri.decomp = std::move(d);
    return ri;
}

// Swap the first replaced occurrence for a transition of another type.
void corrupt(const RingInstance& ri, TransferResult& tr) {
    if (tr.replaced.empty()) return;
    const auto& r = tr.replaced.front();
    for (TransitionId t = 0; t < ri.net.num_transitions(); ++t) {
        if (ri.step_of[t] != ri.step_of[r.to]) {
            tr.new_sequence[r.position] = t;
            return;
        }
    }
}

// --- suites

TrialOutcome trial_oracle(std::uint64_t seed, const PropcheckCaps& caps, bool) {
    auto ci = cover_instance(seed);
    const auto& net = ci.g.net;
    const auto& m0 = ci.g.m0;
    json in = {{"target", marking_json(net, ci.target)}};
    const auto back = cover_backward(net, m0, ci.target, caps.basis_cap);
    const auto decomp = analyze_structure(net);
    const auto max_len = cover_bound_closed(decomp.k_prime(), cover_params(net, ci.target, decomp.k_prime()));
    const auto fwd = cover_forward_bounded(net, m0, ci.target, max_len, caps.state_cap);
    for (const auto* r : {&back, &fwd}) {
        if (r->verdict == CoverVerdict::Covered) {
            if (!r->witness) return fail(net, m0, "covered without a witness", in);
            try {
                if (!fire_sequence(net, m0, *r->witness, false).final.covers(ci.target))
                    return fail(net, m0, "witness does not cover the target", in);
            } catch (const NotEnabledError&) {
                return fail(net, m0, "witness not enabled", in);
            }
        }
    }
    const bool conclusive = back.verdict != CoverVerdict::Inconclusive && fwd.verdict != CoverVerdict::Inconclusive;
    if (!conclusive) return vacuous({{"conclusive", 0}});
    if (back.verdict != fwd.verdict)
        return fail(net, m0,
                    std::string("backward says ") + to_string(back.verdict) + ", forward says " +
                        to_string(fwd.verdict),
                    in);
    return pass({{"conclusive", 1}, {"covered", back.verdict == CoverVerdict::Covered ? 1 : 0}});
}

TrialOutcome trial_bound_soundness(std::uint64_t seed, const PropcheckCaps& caps, bool) {
    auto ci = cover_instance(seed);
    const auto& net = ci.g.net;
    const auto& m0 = ci.g.m0;
    json in = {{"target", marking_json(net, ci.target)}};
    const auto back = cover_backward(net, m0, ci.target, caps.basis_cap);
    if (back.verdict != CoverVerdict::Covered) return vacuous();
    const auto shortest = shortest_cover_len(net, m0, ci.target, back.witness->size());
    if (!shortest) return fail(net, m0, "no covering sequence within the backward witness length", in);
    const auto decomp = analyze_structure(net);
    const auto closed = cover_bound_closed(decomp.k_prime(), cover_params(net, ci.target, decomp.k_prime()));
    if (!(BoundValue(static_cast<std::uint64_t>(*shortest)) <= closed))
        return fail(net, m0, "shortest witness " + std::to_string(*shortest) + " exceeds " + closed.to_string(), in);
    return pass({{"yes_instances", 1}, {"max_shortest", *shortest}});
}

TrialOutcome trial_truncation(std::uint64_t seed, const PropcheckCaps&, bool corrupt_transfer) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto ri = ring_instance(rng, static_cast<Weight>(rng.uniform(1, 3)));
        if (!ri) continue;
        const auto& net = ri->net;
        const Tokens W = std::max<Weight>(1, net.max_weight());
        const PlaceId p1 = ri->xs[0], p2 = ri->xs[1];
        std::vector<Tokens> cur = ri->m0.values();
        std::size_t pos = 0;  // ring position of the cover token
        FiringSequence seq;
        auto step = [&](const std::function<bool(TransitionId)>& want) {
            std::vector<TransitionId> ok, any;
            for (TransitionId t = 0; t < net.num_transitions(); ++t) {
                if (ri->step_of[t] != pos) continue;
                const PlaceId x = ri->x_of[t];
                if (cur[x] + std::min<Tokens>(0, ri->weight_of[t]) < 0) continue;
                any.push_back(t);
                if (want(t)) ok.push_back(t);
            }
            const TransitionId t = ok.empty() ? rng.pick(any) : rng.pick(ok);
            cur[ri->x_of[t]] += ri->weight_of[t];
            pos = (pos + 1) % ri->ring;
            seq.push_back(t);
        };
        auto on_p1 = [&](TransitionId t, int sign) { return ri->x_of[t] == p1 && ri->weight_of[t] * sign > 0; };
        for (auto n = rng.uniform(0, 4); n > 0; --n) step([](TransitionId) { return true; });
        const std::size_t idx1 = seq.size();
        const Tokens e = cur[p1];
        const Tokens top = e + W * W + W * W * W + static_cast<Tokens>(rng.uniform(0, W));
        while (cur[p1] < top && seq.size() < 5000)
            step([&](TransitionId t) { return rng.chance(0.8) ? on_p1(t, 1) : true; });
        while (cur[p1] > e && seq.size() < 10000)
            step([&](TransitionId t) { return rng.chance(0.75) ? on_p1(t, -1) : ri->x_of[t] != p1; });
        if (cur[p1] > e) continue;
        const std::size_t idx3 = seq.size();
        for (auto n = rng.uniform(0, 4); n > 0; --n) step([](TransitionId) { return true; });

        const auto chain = fire_sequence(net, ri->m0, seq).chain;
        std::size_t idx2 = idx1;
        for (std::size_t i = idx1; i <= idx3; ++i)
            if (chain[i][p1] > chain[idx2][p1]) idx2 = i;

        json in = {{"sequence", seq_json(net, seq)}, {"p1", net.place_name(p1)}, {"p2", net.place_name(p2)},
                   {"e", e}, {"idx1", idx1}, {"idx2", idx2}, {"idx3", idx3}};
        try {
            auto r = truncate(net, seq, ri->m0, p1, p2, e, idx1, idx2, idx3, *ri->decomp);
            if (corrupt_transfer) corrupt(*ri, r.transfer);
            const auto c = check_truncation(net, seq, ri->m0, p1, r);
            if (!c.all()) {
                std::string what;
                if (!c.zero_effect) what += " zero-effect";
                if (!c.peak_decreased) what += " peak-decrease";
                if (!c.nonnegative) what += " nonnegative";
                return fail(net, ri->m0, "truncation conclusions violated:" + what, in);
            }
            return pass({{"instances", 1}, {"sub_word_len", r.sub_word.size()}});
        } catch (const Error& ex) {
            return fail(net, ri->m0, std::string("truncate failed: ") + ex.what(), in);
        }
    }
    return vacuous();
}

TrialOutcome trial_transfer(std::uint64_t seed, const PropcheckCaps&, bool corrupt_transfer) {
    Rng rng(seed);
    for (int attempt = 0; attempt < 50; ++attempt) {
        auto ri = ring_instance(rng, static_cast<Weight>(rng.uniform(1, 3)));
        if (!ri) continue;
        const auto& net = ri->net;
        const std::size_t m = net.num_places();
        std::vector<PlaceId> xs = ri->xs;
        rng.shuffle(xs);
        const PlaceId p1 = xs[0], p2 = xs[1];
        FiringSequence seq;
        SubWord sw;
        std::size_t pos = 0;
        const auto len = rng.uniform(3, 40);
        for (std::size_t i = 0; i < len; ++i) {
            std::vector<TransitionId> opts;
            for (TransitionId t = 0; t < net.num_transitions(); ++t)
                if (ri->step_of[t] == pos) opts.push_back(t);
            const TransitionId t = rng.pick(opts);
            if (ri->x_of[t] == p1 && rng.chance(0.6)) sw.positions.push_back(seq.size());
            seq.push_back(t);
            pos = (pos + 1) % ri->ring;
        }
        if (sw.positions.empty()) continue;
        json in = {{"sequence", seq_json(net, seq)}, {"p1", net.place_name(p1)}, {"p2", net.place_name(p2)},
                   {"sub_word", sw.positions}};
        TransferResult tr;
        try {
            tr = transfer(net, seq, sw, p1, p2, *ri->decomp);
        } catch (const Error& ex) {
            return fail(net, ri->m0, std::string("transfer failed: ") + ex.what(), in);
        }
        if (corrupt_transfer) corrupt(*ri, tr);
        const PlaceSet none(m);
        const auto a = fire_relaxed(net, RelaxedMarking(ri->m0), seq, none);
        const auto b = fire_relaxed(net, RelaxedMarking(ri->m0), tr.new_sequence, none);
        for (std::size_t i = 0; i < a.chain.size(); ++i)
            for (PlaceId c = 0; c < m; ++c)
                if (ri->decomp->in_cover(c) && a.chain[i][c] != b.chain[i][c])
                    return fail(net, ri->m0, "cover trajectory differs at step " + std::to_string(i), in);
        for (PlaceId p = 0; p < m; ++p)
            if (p != p1 && p != p2 && a.final[p] != b.final[p])
                return fail(net, ri->m0, "final marking changed on " + net.place_name(p), in);
        if (a.final[p1] + a.final[p2] != b.final[p1] + b.final[p2])
            return fail(net, ri->m0, "token sum on {p1,p2} changed", in);
        return pass({{"transfers", 1}});
    }
    return vacuous();
}

TrialOutcome trial_caps(std::uint64_t seed, const PropcheckCaps&, bool) {
    Rng rng(seed);
    GenSpec spec;
    spec.places = rng.uniform(1, 6);
    spec.transitions = rng.uniform(0, 6);
    spec.max_weight = static_cast<Weight>(rng.uniform(1, 3));
    spec.max_initial = 3;
    if (rng.chance(0.5)) spec.target_vc = rng.uniform(spec.transitions ? 1 : 0, spec.places);
    const auto g = gen_net(spec, rng.next());
    const auto d = analyze_structure(g.net);
    const Weight W = std::max<Weight>(1, g.net.max_weight());
    if (!within_type_cap(d.types.types.size(), W, d.k()))
        return fail(g.net, g.m0, "type count above (W+1)^(2k)");
    if (!within_variety_cap(d.num_varieties(), W, d.k()))
        return fail(g.net, g.m0, "variety count above 2^(2W(W+1)^(2k))");
    if (g.planted_cover) {
        if (!is_vertex_cover(build_graph(g.net), *g.planted_cover))
            return fail(g.net, g.m0, "planted set is not a vertex cover", {{"planted", set_json(g.net, *g.planted_cover)}});
        if (d.k() > g.planted_cover->count()) return fail(g.net, g.m0, "minimum cover larger than the planted one");
    }
    return pass({{"nets", 1}});
}

TrialOutcome trial_km_vs_scs(std::uint64_t seed, const PropcheckCaps& caps, bool) {
    Rng rng(seed);
    const auto g = gen_net(small_spec(rng), rng.next());
    const auto km = karp_miller(g.net, g.m0, caps.node_cap);
    const auto scs = search_self_covering(g.net, g.m0, 10'000);
    const bool km_conclusive = km.complete || km.has_omega();
    if (scs.witness) {
        if (!is_self_covering(g.net, g.m0, *scs.witness))
            return fail(g.net, g.m0, "self-covering witness does not replay",
                        {{"witness", seq_json(g.net, scs.witness->sequence)}});
        if (!km_conclusive) return vacuous();
        if (!km.has_omega())
            return fail(g.net, g.m0, "self-covering witness found but Karp-Miller tree has no omega",
                        {{"witness", seq_json(g.net, scs.witness->sequence)}});
        return pass({{"conclusive", 1}, {"unbounded", 1}});
    }
    if (scs.reachable_set_finite) {
        if (!km_conclusive) return vacuous();
        if (km.has_omega()) return fail(g.net, g.m0, "finite reachable set but Karp-Miller tree has omega");
        return pass({{"conclusive", 1}, {"bounded", 1}});
    }
    return vacuous();
}

GeneratedNet net_with_complete_km(Rng& rng, const PropcheckCaps& caps, KarpMillerTree& km) {
    for (;;) {
        auto g = gen_net(tiny_spec(rng), rng.next());
        km = karp_miller(g.net, g.m0, caps.node_cap);
        if (km.complete) return g;
    }
}

TrialOutcome trial_beta(std::uint64_t seed, const PropcheckCaps& caps, bool) {
    Rng rng(seed);
    KarpMillerTree km;
    const auto g = net_with_complete_km(rng, caps, km);
    const std::size_t m = g.net.num_places();
    std::vector<Term> terms(rng.uniform(1, 2));
    for (auto& t : terms) {
        t.coeffs.assign(m, 0);
        for (PlaceId p = 0; p < m; ++p)
            if (rng.chance(0.5)) t.coeffs[p] = static_cast<Tokens>(rng.uniform(1, 2));
        if (t.support().empty()) t.coeffs[rng.uniform(0, m - 1)] = 1;
    }
    json in = json::array();
    for (const auto& t : terms) {
        json o = json::object();
        for (PlaceId p : t.support()) o[g.net.place_name(p)] = t.coeffs[p];
        in.push_back(o);
    }
    bool any_pump = false;
    std::size_t checked = 0;
    for (const auto& x : candidate_sets(terms, m)) {
        const bool km_says = km_pumps_all(km, x);
        PumpingSearchOptions opts;
        opts.state_cap = caps.state_cap;
        const auto s = search_pumping(g.net, g.m0, x, 12, opts);
        json inx = {{"terms", in}, {"X", set_json(g.net, x)}};
        if (s.found && !is_pumping_sequence(g.net, g.m0, *s.found, x))
            return fail(g.net, g.m0, "pumping search returned an invalid decomposition", inx);
        if (km_says != s.found.has_value())
            return fail(g.net, g.m0,
                        std::string("Karp-Miller ") + (km_says ? "pumps" : "does not pump") +
                            " X but the pumping search " + (s.found ? "found" : "found no") + " sequence",
                        inx);
        const auto weak = find_weak_pumping_crosscheck(g.net, g.m0, x, 12, opts.state_cap);
        if (weak.weak.has_value() != km_says)
            return fail(g.net, g.m0, "weak pumping search disagrees with Karp-Miller", inx);
        if (weak.weak && !weak.strengthened_valid)
            return fail(g.net, g.m0, "strengthened weak sequence is not an enabled pumping sequence", inx);
        any_pump = any_pump || km_says;
        ++checked;
    }
    const Truth expected = any_pump ? Truth::False : Truth::True;
    if (beta_atom_verdict(km, terms) != expected)
        return fail(g.net, g.m0, "atom verdict disagrees with the pumping search", {{"terms", in}});
    return pass({{"candidate_sets", checked}, {"unbounded_atoms", any_pump ? 1 : 0}});
}

TrialOutcome trial_strengthening(std::uint64_t seed, const PropcheckCaps& caps, bool) {
    Rng rng(seed);
    const auto g = gen_net(tiny_spec(rng), rng.next());
    const std::size_t m = g.net.num_places();
    const auto km = karp_miller(g.net, g.m0, caps.node_cap);
    // Bias X towards places Karp-Miller accelerates so most trials are not vacuous.
    PlaceSet x(m);
    std::vector<std::size_t> omega_nodes;
    for (std::size_t i = 0; i < km.nodes.size(); ++i)
        if (km.nodes[i].marking.has_omega()) omega_nodes.push_back(i);
    if (!omega_nodes.empty() && rng.chance(0.8)) {
        const auto& node = km.nodes[rng.pick(omega_nodes)].marking;
        for (PlaceId p = 0; p < m; ++p)
            if (node.is_omega(p) && (x.empty() || rng.chance(0.7))) x.insert(p);
    } else {
        for (PlaceId p = 0; p < m; ++p)
            if (rng.chance(0.5)) x.insert(p);
        if (x.empty()) x.insert(rng.uniform(0, m - 1));
    }
    const auto r = find_weak_pumping_crosscheck(g.net, g.m0, x, 8, std::min<std::size_t>(caps.state_cap, 200'000));
    if (!r.weak) return vacuous();
    if (!r.strengthened_valid)
        return fail(g.net, g.m0, "strengthened sequence is not an enabled X-pumping sequence",
                    {{"X", set_json(g.net, x)}, {"weak", seq_json(g.net, r.weak->flatten())}});
    return pass({{"strengthened", 1}, {"max_output_len", r.strengthened ? r.strengthened->size() : 0}});
}

using TrialFn = TrialOutcome (*)(std::uint64_t, const PropcheckCaps&, bool);

struct SuiteDef {
    const char* name;
    const char* family;  // suites sharing a family see the same instances
    TrialFn fn;
};

const std::vector<SuiteDef>& suite_defs() {
    static const std::vector<SuiteDef> defs = {
        {"truncation", "truncation", trial_truncation},
        {"transfer", "transfer", trial_transfer},
        {"oracle-agreement", "cover", trial_oracle},
        {"bound-soundness", "cover", trial_bound_soundness},
        {"km-vs-scs", "boundedness", trial_km_vs_scs},
        {"beta-crosscheck", "beta", trial_beta},
        {"caps", "caps", trial_caps},
        {"strengthening", "strengthening", trial_strengthening},
    };
    return defs;
}

const SuiteDef& suite_def(const std::string& name) {
    for (const auto& d : suite_defs())
        if (name == d.name) return d;
    throw Error(ErrorCode::InvalidArgument, "unknown propcheck suite '" + name + "'");
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
    return h;
}

void add_metrics(json& into, const json& from) {
    for (auto it = from.begin(); it != from.end(); ++it) {
        if (it.key().rfind("max_", 0) == 0)
            into[it.key()] = std::max(into.value(it.key(), std::uint64_t{0}), it.value().get<std::uint64_t>());
        else
            into[it.key()] = into.value(it.key(), std::uint64_t{0}) + it.value().get<std::uint64_t>();
    }
}

}  // namespace

const std::vector<std::string>& propcheck_suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& d : suite_defs()) v.push_back(d.name);
        return v;
    }();
    return names;
}

std::uint64_t trial_seed(std::uint64_t seed, const std::string& suite, std::size_t trial) {
    return mix_seed(seed ^ fnv1a(suite_def(suite).family), trial);
}

TrialOutcome run_trial(const std::string& suite, std::uint64_t seed, const PropcheckCaps& caps,
                       bool corrupt_transfer) {
    return suite_def(suite).fn(seed, caps, corrupt_transfer);
}

PropcheckReport propcheck(const PropcheckConfig& cfg) {
    PropcheckReport report;
    const auto& names = cfg.suites.empty() ? propcheck_suite_names() : cfg.suites;
    for (const auto& name : names) {
        suite_def(name);
        SuiteReport s;
        s.name = name;
        s.trials = cfg.trials;
        for (std::size_t i = 0; i < cfg.trials; ++i) {
            const std::uint64_t ts = trial_seed(cfg.seed, name, i);
            TrialOutcome o = run_trial(name, ts, cfg.caps, cfg.corrupt_transfer);
            add_metrics(s.metrics, o.metrics);
            if (o.status == Status::Fail) {
                ++s.failed;
                if (!s.first_failure)
                    s.first_failure = Counterexample{i, ts, std::move(o.net_text), std::move(o.inputs),
                                                     std::move(o.message)};
                continue;
            }
            ++s.passed;
            if (o.status == Status::Vacuous) ++s.vacuous;
        }
        report.suites.push_back(std::move(s));
    }
    return report;
}

bool PropcheckReport::passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.failed == 0; });
}

json PropcheckReport::to_json() const {
    json out = {{"passed", passed()}, {"suites", json::array()}};
    for (const auto& s : suites) {
        json j = {{"name", s.name},     {"trials", s.trials},  {"passed", s.passed},
                  {"failed", s.failed}, {"vacuous", s.vacuous}, {"metrics", s.metrics}};
        if (s.first_failure) {
            const auto& c = *s.first_failure;
            j["counterexample"] = {{"trial", c.trial},
                                   {"trial_seed", c.trial_seed},
                                   {"message", c.message},
                                   {"net", c.net_text},
                                   {"inputs", c.inputs}};
        }
        out["suites"].push_back(std::move(j));
    }
    return out;
}

}  // namespace pnvc
