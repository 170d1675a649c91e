#include "pnvc/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <sstream>

#include "pnvc/bounds.hpp"
#include "pnvc/deciders.hpp"
#include "pnvc/generator.hpp"
#include "pnvc/logic.hpp"
#include "pnvc/propcheck.hpp"
#include "pnvc/structure.hpp"

namespace pnvc {

using nlohmann::json;

namespace {

const char* const kCommands[] = {"analyze", "bounds", "cover", "bounded", "mc", "gen", "propcheck"};

json names(const PetriNet& net, const PlaceSet& s) {
    json a = json::array();
    for (PlaceId p : s.members()) a.push_back(net.place_name(p));
    return a;
}

json seq_names(const PetriNet& net, const FiringSequence& seq) {
    json a = json::array();
    for (TransitionId t : seq) a.push_back(net.transition_name(t));
    return a;
}

json bound_json(const BoundValue& v) {
    if (v.materialized() && v.saturated_u64() < UINT64_MAX) return v.saturated_u64();
    return v.to_string();
}

json dual_json(const DualBound& b) {
    return {{"recurrence", bound_json(b.recurrence)}, {"closed", b.closed ? bound_json(*b.closed) : json(nullptr)}};
}

void emit(std::ostream& out, const json& j) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        out << it.key() << ": ";
        if (it.value().is_string())
            out << it.value().get<std::string>();
        else
            out << it.value().dump();
        out << "\n";
    }
}

ParsedNet load(const RunConfig& cfg) {
    if (!cfg.net_text.empty()) {
        const auto first = cfg.net_text.find_first_not_of(" \t\r\n");
        if (first != std::string::npos && cfg.net_text[first] == '{') return parse_net_json(cfg.net_text);
        return parse_net(cfg.net_text);
    }
    if (cfg.net_path.empty()) throw Error(ErrorCode::InvalidArgument, "a net file is required");
    return load_net_file(cfg.net_path);
}

Report cmd_analyze(const RunConfig& cfg) {
    const auto pn = load(cfg);
    const auto& net = pn.net;
    const auto d = analyze_structure(net, cfg.approximate);
    json types = json::array();
    for (const auto& t : d.types.types) {
        json members = json::array();
        for (TransitionId x : t.members) members.push_back(net.transition_name(x));
        types.push_back(members);
    }
    json varieties = json::object();
    for (const auto& [p, id] : d.variety_id) varieties[net.place_name(p)] = id;
    json representatives = json::array();
    for (PlaceId p : d.representatives) representatives.push_back(net.place_name(p));
    json j = {{"net", net.name()},
              {"places", net.num_places()},
              {"transitions", net.num_transitions()},
              {"max_weight", net.max_weight()},
              {"size_bits", net_size(net, pn.initial).bits},
              {"k", d.k()},
              {"k_prime", d.k_prime()},
              {"cover", names(net, d.vc.members)},
              {"cover_optimal", d.vc.optimal},
              {"num_types", d.types.types.size()},
              {"types", types},
              {"num_varieties", d.num_varieties()},
              {"varieties", varieties},
              {"representatives", representatives},
              {"special", names(net, d.special)},
              {"independent", names(net, d.independent)}};
    return {j, kExitOk, std::nullopt};
}

Report cmd_bounds(const RunConfig& cfg) {
    BoundParams p;
    p.c_prime = cfg.c_prime;
    p.d = cfg.d;
    BigInt U = 0;
    BigInt R = 1;
    if (!cfg.net_path.empty()) {
        const auto pn = load(cfg);
        p.m = pn.net.num_places();
        p.W = std::max<Weight>(1, pn.net.max_weight());
        p.k_prime = analyze_structure(pn.net, cfg.approximate).k_prime();
        U = std::max<Tokens>(0, pn.initial.max_value());
        if (!cfg.target.empty()) R = std::max<Tokens>(0, parse_marking_list(pn.net, cfg.target).max_value());
    }
    if (cfg.m) p.m = *cfg.m;
    if (cfg.W) p.W = std::max<std::uint64_t>(1, *cfg.W);
    if (cfg.k_prime) p.k_prime = *cfg.k_prime;
    if (cfg.R) R = *cfg.R;
    if (cfg.U) U = *cfg.U;
    p.R = R;
    p.U_prime = BoundParams::u_prime_short_scs(U, p.W);
    const std::uint64_t i = cfg.i ? *cfg.i : p.k_prime;
    const std::uint64_t jj = cfg.j ? *cfg.j : 0;

    json params = {{"m", p.m},
                   {"W", p.W},
                   {"k_prime", p.k_prime},
                   {"R", R.str()},
                   {"R_prime", p.R_prime().str()},
                   {"U", U.str()},
                   {"U_prime", p.U_prime.str()},
                   {"h", p.h().str()},
                   {"i", i},
                   {"j", jj}};
    json cover = {{"recurrence", bound_json(cover_bound_rec(i, p))}, {"closed", bound_json(cover_bound_closed(i, p))}};
    json j = {{"params", params},
              {"cover_bound", cover},
              {"scs_bound", dual_json(scs_bound(i, jj, p))},
              {"pump_bound", dual_json(pump_bound(i, jj, p))},
              {"constants", {{"c_prime", p.c_prime}, {"d", p.d}}}};
    return {j, kExitOk, std::nullopt};
}

json cover_json(const PetriNet& net, const CoverResult& r) {
    return {{"verdict", to_string(r.verdict)},
            {"witness", r.witness ? seq_names(net, *r.witness) : json(nullptr)},
            {"stats", {{"nodes", r.stats.nodes}, {"peak_frontier", r.stats.peak_frontier}}}};
}

Report cmd_cover(const RunConfig& cfg) {
    const auto pn = load(cfg);
    const auto& net = pn.net;
    if (cfg.target.empty()) throw Error(ErrorCode::InvalidArgument, "cover needs --target");
    const Marking target = parse_marking_list(net, cfg.target);
    const bool back = cfg.method == "backward" || cfg.method == "both";
    const bool fwd = cfg.method == "forward" || cfg.method == "both";
    if (!back && !fwd) throw Error(ErrorCode::InvalidArgument, "method must be backward, forward or both");

    json j = {{"target", format_marking(net, target)}, {"method", cfg.method}};
    std::optional<CoverResult> b, f;
    if (back) {
        b = cover_backward(net, pn.initial, target, cfg.state_cap);
        j["backward"] = cover_json(net, *b);
    }
    if (fwd) {
        BoundValue max_len;
        if (cfg.max_len) {
            max_len = BoundValue(*cfg.max_len);
        } else {
            BoundParams p;
            p.m = net.num_places();
            p.W = std::max<Weight>(1, net.max_weight());
            p.k_prime = analyze_structure(net, cfg.approximate).k_prime();
            p.R = std::max<Tokens>(0, target.max_value());
            max_len = cover_bound_closed(p.k_prime, p);
        }
        j["max_len"] = bound_json(max_len);
        f = cover_forward_bounded(net, pn.initial, target, max_len, cfg.state_cap);
        j["forward"] = cover_json(net, *f);
    }
    CoverVerdict v = CoverVerdict::Inconclusive;
    std::optional<FiringSequence> witness;
    for (const auto* r : {b ? &*b : nullptr, f ? &*f : nullptr}) {
        if (!r || r->verdict == CoverVerdict::Inconclusive) continue;
        if (v != CoverVerdict::Inconclusive && v != r->verdict)
            throw Error(ErrorCode::InvalidArgument, "backward and forward verdicts disagree");
        v = r->verdict;
        if (r->witness && !witness) witness = r->witness;
    }
    j["verdict"] = to_string(v);
    j["witness"] = witness ? seq_names(net, *witness) : json(nullptr);
    return {j, v == CoverVerdict::Inconclusive ? kExitInconclusive : kExitOk, std::nullopt};
}

Report cmd_bounded(const RunConfig& cfg) {
    const auto pn = load(cfg);
    const auto& net = pn.net;
    BoundedOptions opts;
    opts.node_cap = cfg.node_cap;
    opts.max_len = cfg.bounded_max_len;
    json j;
    BoundedVerdict v = BoundedVerdict::Inconclusive;
    if (cfg.method == "both") {
        const auto r = is_bounded(net, pn.initial, opts);
        v = r.verdict;
        j = {{"verdict", to_string(r.verdict)},
             {"method", to_string(r.method)},
             {"karp_miller", to_string(r.km_verdict)},
             {"self_covering", to_string(r.scs_verdict)},
             {"km_nodes", r.km_nodes}};
        if (r.self_covering) {
            j["witness"] = seq_names(net, r.self_covering->sequence);
            j["split"] = r.self_covering->split;
        }
        if (r.omega_path) j["omega_path"] = seq_names(net, *r.omega_path);
    } else if (cfg.method == "km" || cfg.method == "karp-miller") {
        const auto km = karp_miller(net, pn.initial, cfg.node_cap);
        v = km.has_omega() ? BoundedVerdict::Unbounded
                           : (km.complete ? BoundedVerdict::Bounded : BoundedVerdict::Inconclusive);
        j = {{"verdict", to_string(v)}, {"method", "karp-miller"}, {"km_nodes", km.nodes.size()}};
    } else if (cfg.method == "scs" || cfg.method == "self-covering") {
        const auto s = search_self_covering(net, pn.initial, cfg.bounded_max_len, opts.scs);
        v = s.witness ? BoundedVerdict::Unbounded
                      : (s.reachable_set_finite ? BoundedVerdict::Bounded : BoundedVerdict::Inconclusive);
        j = {{"verdict", to_string(v)}, {"method", "self-covering"}, {"states", s.states}};
        if (s.witness) {
            j["witness"] = seq_names(net, s.witness->sequence);
            j["split"] = s.witness->split;
        }
    } else {
        throw Error(ErrorCode::InvalidArgument, "method must be km, scs or both");
    }
    return {j, v == BoundedVerdict::Inconclusive ? kExitInconclusive : kExitOk, std::nullopt};
}

Report cmd_mc(const RunConfig& cfg) {
    const auto pn = load(cfg);
    if (cfg.formula.empty()) throw Error(ErrorCode::InvalidArgument, "mc needs --formula");
    const auto phi = parse_formula(cfg.formula, pn.net);
    CheckOptions opts;
    opts.max_depth = cfg.max_depth;
    opts.state_cap = cfg.mc_state_cap;
    opts.node_cap = cfg.node_cap;
    opts.fallback_depth = cfg.fallback_depth;
    const auto r = check_phi(pn.net, pn.initial, *phi, opts);
    json j = {{"formula", to_string(*phi, pn.net)}, {"verdict", to_string(r.verdict)}, {"notes", r.notes}};
    return {j, r.verdict == Truth::Unknown ? kExitInconclusive : kExitOk, std::nullopt};
}

Report cmd_gen(const RunConfig& cfg) {
    GenSpec spec;
    spec.places = cfg.gen_places;
    spec.transitions = cfg.gen_transitions;
    spec.max_weight = cfg.gen_max_weight;
    spec.max_initial = cfg.gen_max_initial;
    spec.target_vc = cfg.gen_target_vc;
    const auto g = gen_net(spec, cfg.seed);
    return {json::parse(to_json_text(g.net, g.m0)), kExitOk, to_text(g.net, g.m0)};
}

Report cmd_propcheck(const RunConfig& cfg) {
    PropcheckConfig pc;
    pc.suites = cfg.suites;
    pc.trials = cfg.trials;
    pc.seed = cfg.seed;
    pc.caps.state_cap = cfg.state_cap;
    pc.caps.node_cap = cfg.node_cap;
    pc.corrupt_transfer = cfg.corrupt_transfer;
    const auto rep = propcheck(pc);
    std::ostringstream out;
    for (const auto& s : rep.suites) {
        out << s.name << ": " << s.passed << "/" << s.trials << " passed";
        if (s.vacuous) out << " (" << s.vacuous << " vacuous)";
        out << "\n";
        if (s.first_failure) {
            const auto& c = *s.first_failure;
            out << "  counterexample (trial " << c.trial << ", trial seed " << c.trial_seed << "): " << c.message
                << "\n  inputs: " << c.inputs.dump() << "\n";
            out << c.net_text;
        }
    }
    return {rep.to_json(), rep.passed() ? kExitOk : kExitPropertyFailure, out.str()};
}

template <class T>
void take(const json& j, const char* key, T& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& dst) {
    if (j.contains(key)) dst = j.at(key).get<T>();
}

}  // namespace

const char* to_string(Command c) { return kCommands[static_cast<int>(c)]; }

std::optional<Command> parse_command(const std::string& s) {
    for (int i = 0; i < 7; ++i)
        if (s == kCommands[i]) return static_cast<Command>(i);
    return std::nullopt;
}

void apply_config_json(RunConfig& cfg, const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "config file must hold a JSON object");
    if (j.contains("command")) {
        auto c = parse_command(j.at("command").get<std::string>());
        if (!c) throw Error(ErrorCode::InvalidArgument, "unknown command in config");
        cfg.command = *c;
    }
    take(j, "net", cfg.net_path);
    take(j, "net_text", cfg.net_text);
    take(j, "target", cfg.target);
    take(j, "formula", cfg.formula);
    take(j, "method", cfg.method);
    take(j, "max_len", cfg.max_len);
    take(j, "bounded_max_len", cfg.bounded_max_len);
    take(j, "state_cap", cfg.state_cap);
    take(j, "node_cap", cfg.node_cap);
    take(j, "trials", cfg.trials);
    take(j, "seed", cfg.seed);
    take(j, "c_prime", cfg.c_prime);
    take(j, "d", cfg.d);
    take(j, "json", cfg.json);
    take(j, "approximate", cfg.approximate);
    take(j, "i", cfg.i);
    take(j, "j", cfg.j);
    take(j, "m", cfg.m);
    take(j, "W", cfg.W);
    take(j, "k_prime", cfg.k_prime);
    take(j, "R", cfg.R);
    take(j, "U", cfg.U);
    take(j, "max_depth", cfg.max_depth);
    take(j, "mc_state_cap", cfg.mc_state_cap);
    take(j, "fallback_depth", cfg.fallback_depth);
    take(j, "places", cfg.gen_places);
    take(j, "transitions", cfg.gen_transitions);
    take(j, "max_weight", cfg.gen_max_weight);
    take(j, "max_initial", cfg.gen_max_initial);
    take(j, "target_vc", cfg.gen_target_vc);
    take(j, "suite", cfg.suites);
    take(j, "corrupt_transfer", cfg.corrupt_transfer);
}

void apply_env(RunConfig& cfg) {
    const char* s = std::getenv("PNVC_SEED");
    if (!s || !*s) return;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 0);
    if (*end != '\0') throw Error(ErrorCode::InvalidArgument, std::string("PNVC_SEED is not an integer: ") + s);
    cfg.seed = v;
}

Report report(const RunConfig& cfg) {
    switch (cfg.command) {
        case Command::Analyze: return cmd_analyze(cfg);
        case Command::Bounds: return cmd_bounds(cfg);
        case Command::Cover: return cmd_cover(cfg);
        case Command::Bounded: return cmd_bounded(cfg);
        case Command::Mc: return cmd_mc(cfg);
        case Command::Gen: return cmd_gen(cfg);
        case Command::Propcheck: return cmd_propcheck(cfg);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown command");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto r = report(cfg);
        if (cfg.json)
            out << r.body.dump(2) << "\n";
        else if (r.text)
            out << *r.text;
        else
            emit(out, r.body);
        return r.exit_code;
    } catch (const Error& e) {
        err << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace pnvc
