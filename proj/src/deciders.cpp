#include "pnvc/deciders.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

namespace pnvc {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<Tokens>& v) const noexcept {
        return boost::hash_range(v.begin(), v.end());
    }
};

bool vec_leq(const std::vector<Tokens>& a, const std::vector<Tokens>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool covers_target(const std::vector<Tokens>& m, const Marking& target) {
    for (std::size_t p = 0; p < m.size(); ++p)
        if (m[p] < target[p]) return false;
    return true;
}

bool enabled_vec(const PetriNet& net, const std::vector<Tokens>& m, TransitionId t) {
    for (PlaceId p = 0; p < net.num_places(); ++p)
        if (m[p] < static_cast<Tokens>(net.pre(p, t))) return false;
    return true;
}

std::vector<Tokens> fire_vec(const PetriNet& net, const std::vector<Tokens>& m, TransitionId t) {
    std::vector<Tokens> out(m);
    for (PlaceId p = 0; p < net.num_places(); ++p) out[p] = checked_add(out[p], net.delta(p, t));
    return out;
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

}  // namespace

// ---------------------------------------------------------------- ω-markings

bool OmegaMarking::has_omega() const {
    return std::any_of(values_.begin(), values_.end(), [](Tokens v) { return v == kOmega; });
}

bool OmegaMarking::leq(const OmegaMarking& o) const {
    for (std::size_t p = 0; p < values_.size(); ++p) {
        if (o.values_[p] == kOmega) continue;
        if (values_[p] == kOmega || values_[p] > o.values_[p]) return false;
    }
    return true;
}

bool OmegaMarking::covers(const Marking& m) const {
    for (std::size_t p = 0; p < values_.size(); ++p)
        if (values_[p] != kOmega && values_[p] < m[p]) return false;
    return true;
}

std::string OmegaMarking::to_string(const PetriNet& net) const {
    std::string out = "(";
    for (PlaceId p = 0; p < net.num_places(); ++p) {
        if (p) out += ",";
        out += is_omega(p) ? "w" : std::to_string(values_[p]);
    }
    return out + ")";
}

bool omega_enabled(const PetriNet& net, const OmegaMarking& m, TransitionId t) {
    for (PlaceId p = 0; p < net.num_places(); ++p)
        if (!m.is_omega(p) && m[p] < static_cast<Tokens>(net.pre(p, t))) return false;
    return true;
}

OmegaMarking omega_fire(const PetriNet& net, const OmegaMarking& m, TransitionId t) {
    std::vector<Tokens> v(m.values());
    for (PlaceId p = 0; p < net.num_places(); ++p)
        if (v[p] != kOmega) v[p] = checked_add(v[p], net.delta(p, t));
    return OmegaMarking(std::move(v));
}

const char* to_string(CoverVerdict v) {
    switch (v) {
        case CoverVerdict::Covered: return "covered";
        case CoverVerdict::NotCovered: return "not-covered";
        case CoverVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(CoverMethod m) {
    switch (m) {
        case CoverMethod::Backward: return "backward";
        case CoverMethod::Forward: return "forward";
        case CoverMethod::Both: return "both";
    }
    return "?";
}

const char* to_string(BoundedVerdict v) {
    switch (v) {
        case BoundedVerdict::Bounded: return "bounded";
        case BoundedVerdict::Unbounded: return "unbounded";
        case BoundedVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* to_string(BoundedMethod m) {
    switch (m) {
        case BoundedMethod::KarpMiller: return "karp-miller";
        case BoundedMethod::SelfCovering: return "self-covering";
        case BoundedMethod::Both: return "both";
    }
    return "?";
}

// ---------------------------------------------------------------- backward

CoverResult cover_backward(const PetriNet& net, const Marking& m0, const Marking& target, std::size_t basis_cap) {
    CoverResult res;
    res.method = CoverMethod::Backward;
    if (m0.covers(target)) {
        res.verdict = CoverVerdict::Covered;
        res.witness = FiringSequence{};
        return res;
    }
    struct Elem {
        std::vector<Tokens> m;
        TransitionId t;
        std::size_t next;
    };
    std::vector<Elem> arena{{target.values(), 0, kNone}};
    std::vector<std::size_t> basis{0};
    std::vector<std::size_t> level{0};
    const std::size_t m = net.num_places();
    while (!level.empty()) {
        std::vector<std::size_t> next_level;
        for (std::size_t idx : level) {
            for (TransitionId t = 0; t < net.num_transitions(); ++t) {
                std::vector<Tokens> pre(m);
                for (PlaceId p = 0; p < m; ++p) {
                    const Tokens need = arena[idx].m[p] - static_cast<Tokens>(net.post(p, t));
                    pre[p] = static_cast<Tokens>(net.pre(p, t)) + std::max<Tokens>(0, need);
                }
                bool dominated = false;
                for (std::size_t b : basis) {
                    if (vec_leq(arena[b].m, pre)) {
                        dominated = true;
                        break;
                    }
                }
                if (dominated) continue;
                std::erase_if(basis, [&](std::size_t b) { return vec_leq(pre, arena[b].m); });
                arena.push_back({std::move(pre), t, idx});
                const std::size_t id = arena.size() - 1;
                basis.push_back(id);
                next_level.push_back(id);
                res.stats.nodes = arena.size();
                res.stats.peak_frontier = std::max(res.stats.peak_frontier, basis.size());
                if (covers_target(m0.values(), Marking(arena[id].m))) {
                    FiringSequence w;
                    for (std::size_t cur = id; arena[cur].next != kNone; cur = arena[cur].next)
                        w.push_back(arena[cur].t);
                    res.verdict = CoverVerdict::Covered;
                    res.witness = std::move(w);
                    return res;
                }
                if (basis.size() > basis_cap) return res;
            }
        }
        level = std::move(next_level);
    }
    res.verdict = CoverVerdict::NotCovered;
    return res;
}

// ---------------------------------------------------------------- trees

bool KarpMillerTree::has_omega() const {
    return std::any_of(nodes.begin(), nodes.end(), [](const KMNode& n) { return n.marking.has_omega(); });
}

FiringSequence KarpMillerTree::path_to(std::size_t node) const {
    FiringSequence out;
    for (std::size_t cur = node; nodes.at(cur).parent; cur = *nodes[cur].parent) out.push_back(*nodes[cur].via);
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

// Sets ω wherever `m` strictly exceeds an ancestor it dominates.
template <class ParentOf, class MarkingOf>
void accelerate(OmegaMarking& m, std::size_t from, ParentOf parent_of, MarkingOf marking_of) {
    std::vector<Tokens> v(m.values());
    for (std::size_t a = from; a != kNone; a = parent_of(a)) {
        const OmegaMarking& anc = marking_of(a);
        OmegaMarking cur(v);
        if (anc.leq(cur) && !(anc == cur)) {
            for (std::size_t p = 0; p < v.size(); ++p)
                if (v[p] != kOmega && anc[p] < v[p]) v[p] = kOmega;
        }
    }
    m = OmegaMarking(std::move(v));
}

}  // namespace

KarpMillerTree karp_miller(const PetriNet& net, const OmegaMarking& m0, std::size_t node_cap) {
    KarpMillerTree tree;
    tree.nodes.push_back({m0, std::nullopt, std::nullopt, {}, false});
    auto parent_of = [&](std::size_t a) { return tree.nodes[a].parent ? *tree.nodes[a].parent : kNone; };
    auto marking_of = [&](std::size_t a) -> const OmegaMarking& { return tree.nodes[a].marking; };
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        if (tree.nodes[i].repeated) continue;
        for (TransitionId t = 0; t < net.num_transitions(); ++t) {
            if (!omega_enabled(net, tree.nodes[i].marking, t)) continue;
            OmegaMarking next = omega_fire(net, tree.nodes[i].marking, t);
            accelerate(next, i, parent_of, marking_of);
            bool repeated = false;
            for (std::size_t a = i; a != kNone; a = parent_of(a)) {
                if (tree.nodes[a].marking == next) {
                    repeated = true;
                    break;
                }
            }
            if (tree.nodes.size() >= node_cap) {
                tree.complete = false;
                return tree;
            }
            tree.nodes.push_back({std::move(next), i, t, {}, repeated});
            tree.nodes[i].children.push_back(tree.nodes.size() - 1);
        }
    }
    return tree;
}

CoverabilitySet coverability_set(const PetriNet& net, const OmegaMarking& m0, std::size_t node_cap) {
    CoverabilitySet set;
    std::vector<std::size_t> parent{kNone};
    set.nodes.push_back(m0);
    auto parent_of = [&](std::size_t a) { return parent[a]; };
    auto marking_of = [&](std::size_t a) -> const OmegaMarking& { return set.nodes[a]; };
    for (std::size_t i = 0; i < set.nodes.size(); ++i) {
        for (TransitionId t = 0; t < net.num_transitions(); ++t) {
            if (!omega_enabled(net, set.nodes[i], t)) continue;
            OmegaMarking next = omega_fire(net, set.nodes[i], t);
            accelerate(next, i, parent_of, marking_of);
            bool dominated = false;
            for (const auto& n : set.nodes) {
                if (next.leq(n)) {
                    dominated = true;
                    break;
                }
            }
            if (dominated) continue;
            if (set.nodes.size() >= node_cap) {
                set.complete = false;
                return set;
            }
            set.nodes.push_back(std::move(next));
            parent.push_back(i);
        }
    }
    return set;
}

// ---------------------------------------------------------------- forward

CoverResult cover_forward_bounded(const PetriNet& net, const Marking& m0, const Marking& target,
                                  const BoundValue& max_len, std::size_t state_cap) {
    CoverResult res;
    res.method = CoverMethod::Forward;
    if (m0.covers(target)) {
        res.verdict = CoverVerdict::Covered;
        res.witness = FiringSequence{};
        return res;
    }
    const std::uint64_t limit = max_len.saturated_u64();
    if (limit == 0) {
        res.verdict = CoverVerdict::NotCovered;
        return res;
    }
    {
        const auto cs = coverability_set(net, OmegaMarking(m0), std::min<std::size_t>(state_cap, 50'000));
        res.stats.nodes = cs.nodes.size();
        if (cs.complete &&
            std::none_of(cs.nodes.begin(), cs.nodes.end(), [&](const OmegaMarking& n) { return n.covers(target); })) {
            res.verdict = CoverVerdict::NotCovered;
            return res;
        }
    }
    struct Node {
        std::vector<Tokens> m;
        std::size_t parent;
        TransitionId t;
    };
    std::vector<Node> arena{{m0.values(), kNone, 0}};
    std::vector<std::size_t> antichain{0};
    std::vector<std::size_t> frontier{0};
    auto witness_of = [&](std::size_t id) {
        FiringSequence w;
        for (std::size_t cur = id; arena[cur].parent != kNone; cur = arena[cur].parent) w.push_back(arena[cur].t);
        std::reverse(w.begin(), w.end());
        return w;
    };
    for (std::uint64_t depth = 0; depth < limit; ++depth) {
        std::vector<std::size_t> next;
        for (std::size_t id : frontier) {
            for (TransitionId t = 0; t < net.num_transitions(); ++t) {
                if (!enabled_vec(net, arena[id].m, t)) continue;
                std::vector<Tokens> succ = fire_vec(net, arena[id].m, t);
                if (covers_target(succ, target)) {
                    arena.push_back({std::move(succ), id, t});
                    res.verdict = CoverVerdict::Covered;
                    res.witness = witness_of(arena.size() - 1);
                    res.stats.nodes += arena.size();
                    return res;
                }
                bool dominated = false;
                for (std::size_t a : antichain) {
                    if (vec_leq(succ, arena[a].m)) {
                        dominated = true;
                        break;
                    }
                }
                if (dominated) continue;
                std::erase_if(antichain, [&](std::size_t a) { return vec_leq(arena[a].m, succ); });
                arena.push_back({std::move(succ), id, t});
                antichain.push_back(arena.size() - 1);
                next.push_back(arena.size() - 1);
                if (arena.size() > state_cap) {
                    res.stats.nodes += arena.size();
                    return res;
                }
            }
        }
        res.stats.peak_frontier = std::max(res.stats.peak_frontier, next.size());
        if (next.empty()) break;
        frontier = std::move(next);
    }
    res.stats.nodes += arena.size();
    res.verdict = CoverVerdict::NotCovered;
    return res;
}

std::optional<std::size_t> shortest_cover_len(const PetriNet& net, const Marking& m0, const Marking& target,
                                              std::size_t hard_cap, std::size_t state_cap) {
    if (m0.covers(target)) return 0;
    std::unordered_map<std::vector<Tokens>, char, VecHash> seen;
    seen.emplace(m0.values(), 0);
    std::vector<std::vector<Tokens>> frontier{m0.values()};
    for (std::size_t depth = 1; depth <= hard_cap && !frontier.empty(); ++depth) {
        std::vector<std::vector<Tokens>> next;
        for (const auto& m : frontier) {
            for (TransitionId t = 0; t < net.num_transitions(); ++t) {
                if (!enabled_vec(net, m, t)) continue;
                auto succ = fire_vec(net, m, t);
                if (covers_target(succ, target)) return depth;
                if (seen.emplace(succ, 0).second) {
                    if (seen.size() > state_cap) return std::nullopt;
                    next.push_back(std::move(succ));
                }
            }
        }
        frontier = std::move(next);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- self-covering

bool is_self_covering(const PetriNet& net, const Marking& m0, const SelfCoveringWitness& w) {
    if (w.split >= w.sequence.size()) return false;
    try {
        const auto chain = fire_sequence(net, m0, w.sequence).chain;
        const Marking& a = chain[w.split];
        const Marking& b = chain.back();
        return b.covers(a) && !(a == b);
    } catch (const NotEnabledError&) {
        return false;
    }
}

namespace {

bool strictly_above(const std::vector<Tokens>& y, const std::vector<Tokens>& x) {
    return vec_leq(x, y) && x != y;
}

// Shortest then lex-first path from x to a strictly larger marking.
// Returns {path, exhausted-without-cap}.
std::pair<std::optional<FiringSequence>, bool> shortest_pump_from(const PetriNet& net, const std::vector<Tokens>& x,
                                                                   std::size_t limit, std::size_t state_cap,
                                                                   std::size_t& work) {
    struct Node {
        std::vector<Tokens> m;
        std::size_t parent;
        TransitionId t;
    };
    std::vector<Node> arena{{x, kNone, 0}};
    std::unordered_map<std::vector<Tokens>, char, VecHash> seen;
    seen.emplace(x, 0);
    std::vector<std::size_t> frontier{0};
    for (std::size_t depth = 1; depth <= limit && !frontier.empty(); ++depth) {
        std::vector<std::size_t> next;
        for (std::size_t id : frontier) {
            for (TransitionId t = 0; t < net.num_transitions(); ++t) {
                if (!enabled_vec(net, arena[id].m, t)) continue;
                ++work;
                auto succ = fire_vec(net, arena[id].m, t);
                if (strictly_above(succ, x)) {
                    FiringSequence w{t};
                    for (std::size_t cur = id; arena[cur].parent != kNone; cur = arena[cur].parent)
                        w.push_back(arena[cur].t);
                    std::reverse(w.begin(), w.end());
                    return {w, true};
                }
                if (!seen.emplace(succ, 0).second) continue;
                if (seen.size() > state_cap) return {std::nullopt, false};
                arena.push_back({std::move(succ), id, t});
                next.push_back(arena.size() - 1);
            }
        }
        frontier = std::move(next);
    }
    return {std::nullopt, true};
}

}  // namespace

SelfCoveringSearch search_self_covering(const PetriNet& net, const Marking& m0, std::size_t max_len,
                                        const SelfCoveringOptions& opts) {
    SelfCoveringSearch res;
    if (max_len == 0) {
        res.exhaustive = true;
        return res;
    }
    struct Node {
        std::vector<Tokens> m;
        std::size_t parent;
        TransitionId t;
    };
    std::vector<Node> arena{{m0.values(), kNone, 0}};
    std::unordered_map<std::vector<Tokens>, std::size_t, VecHash> index;
    index.emplace(m0.values(), 0);
    std::vector<std::vector<std::size_t>> levels{{0}};
    std::vector<bool> level_complete{true};
    bool capped = false;
    auto expand = [&]() {
        const std::size_t k = levels.size() - 1;
        std::vector<std::size_t> next;
        bool complete = true;
        for (std::size_t id : levels[k]) {
            for (TransitionId t = 0; t < net.num_transitions() && complete; ++t) {
                if (!enabled_vec(net, arena[id].m, t)) continue;
                auto succ = fire_vec(net, arena[id].m, t);
                if (index.count(succ)) continue;
                if (arena.size() >= opts.state_cap) {
                    capped = true;
                    complete = false;
                    break;
                }
                index.emplace(succ, arena.size());
                arena.push_back({std::move(succ), id, t});
                next.push_back(arena.size() - 1);
            }
            if (!complete) break;
        }
        levels.push_back(std::move(next));
        level_complete.push_back(complete);
    };
    auto path_to = [&](std::size_t id) {
        FiringSequence w;
        for (std::size_t cur = id; arena[cur].parent != kNone; cur = arena[cur].parent) w.push_back(arena[cur].t);
        std::reverse(w.begin(), w.end());
        return w;
    };

    // Cheap probe: a finite reachable set rules out any self-covering run.
    const std::size_t probe_cap = std::min<std::size_t>(opts.state_cap, 20'000);
    while (!capped && !levels.back().empty() && arena.size() < probe_cap) expand();
    if (!capped && levels.back().empty()) {
        res.exhaustive = true;
        res.reachable_set_finite = true;
        res.states = arena.size();
        return res;
    }

    // Shortest witness = min over reachable X of d(X) + s(X), with d the BFS
    // distance and s the shortest run from X to a strictly larger marking.
    std::optional<std::size_t> best_len;
    FiringSequence best_seq;
    bool incomplete = false;
    std::size_t work = 0;
    for (std::size_t k = 0; k + 1 <= best_len.value_or(max_len); ++k) {
        while (levels.size() <= k && !capped) expand();
        if (levels.size() <= k) {
            incomplete = true;
            break;
        }
        if (!level_complete[k]) incomplete = true;
        if (levels[k].empty()) break;
        for (std::size_t id : levels[k]) {
            const std::size_t limit = best_len.value_or(max_len) - k;
            auto [suffix, clean] = shortest_pump_from(net, arena[id].m, limit, opts.state_cap, work);
            if (!clean) incomplete = true;
            if (suffix) {
                FiringSequence cand = path_to(id);
                cand.insert(cand.end(), suffix->begin(), suffix->end());
                if (!best_len || cand.size() < *best_len || (cand.size() == *best_len && cand < best_seq)) {
                    best_len = cand.size();
                    best_seq = cand;
                    res.witness = SelfCoveringWitness{std::move(cand), k};
                }
            }
            if (work > opts.work_cap) break;
        }
        if (work > opts.work_cap) {
            incomplete = true;
            break;
        }
    }
    res.states = arena.size();
    res.exhaustive = !incomplete;
    return res;
}

std::optional<SelfCoveringWitness> find_self_covering(const PetriNet& net, const Marking& m0, std::size_t max_len) {
    return search_self_covering(net, m0, max_len).witness;
}

BoundedResult is_bounded(const PetriNet& net, const Marking& m0, const BoundedOptions& opts) {
    BoundedResult res;
    const KarpMillerTree tree = karp_miller(net, m0, opts.node_cap);
    res.km_nodes = tree.nodes.size();
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        if (tree.nodes[i].marking.has_omega()) {
            res.km_verdict = BoundedVerdict::Unbounded;
            res.omega_path = tree.path_to(i);
            break;
        }
    }
    if (res.km_verdict == BoundedVerdict::Inconclusive && tree.complete) res.km_verdict = BoundedVerdict::Bounded;

    const auto scs = search_self_covering(net, m0, opts.max_len, opts.scs);
    if (scs.witness) {
        res.scs_verdict = BoundedVerdict::Unbounded;
        res.self_covering = scs.witness;
    } else if (scs.reachable_set_finite) {
        res.scs_verdict = BoundedVerdict::Bounded;
    }

    const bool km = res.km_verdict != BoundedVerdict::Inconclusive;
    const bool sc = res.scs_verdict != BoundedVerdict::Inconclusive;
    if (km && sc) {
        res.method = BoundedMethod::Both;
        res.verdict = res.km_verdict;
    } else if (km) {
        res.method = BoundedMethod::KarpMiller;
        res.verdict = res.km_verdict;
    } else if (sc) {
        res.method = BoundedMethod::SelfCovering;
        res.verdict = res.scs_verdict;
    }
    return res;
}

// ---------------------------------------------------------------- pumping

FiringSequence PumpingDecomposition::flatten() const {
    FiringSequence out;
    for (const auto& [plain, pump] : segments) {
        out.insert(out.end(), plain.begin(), plain.end());
        out.insert(out.end(), pump.begin(), pump.end());
    }
    return out;
}

std::size_t PumpingDecomposition::length() const {
    std::size_t n = 0;
    for (const auto& [plain, pump] : segments) n += plain.size() + pump.size();
    return n;
}

void refresh_pumped_sets(const PetriNet& net, PumpingDecomposition& d) {
    d.pumped_set.clear();
    for (const auto& seg : d.segments) {
        PlaceSet s(net.num_places());
        for (PlaceId p = 0; p < net.num_places(); ++p)
            if (effect(net, seg.second, p) > 0) s.insert(p);
        d.pumped_set.push_back(std::move(s));
    }
}

namespace {

// Conditions 1 and 2; returns the failing condition or 0.
int structural_violation(const PetriNet& net, const PumpingDecomposition& d, const PlaceSet& x) {
    const std::size_t m = net.num_places();
    std::vector<bool> pumped(m, false);
    for (const auto& seg : d.segments) {
        if (seg.second.empty()) return 1;
        std::vector<Tokens> eff(m);
        for (PlaceId p = 0; p < m; ++p) {
            eff[p] = effect(net, seg.second, p);
            if (eff[p] < 0 && !pumped[p]) return 1;
        }
        for (PlaceId p = 0; p < m; ++p)
            if (eff[p] > 0) pumped[p] = true;
    }
    for (PlaceId p : x.members())
        if (!pumped[p]) return 2;
    return 0;
}

}  // namespace

bool is_pumping_sequence(const PetriNet& net, const Marking& m0, const PumpingDecomposition& d, const PlaceSet& x) {
    if (x.empty() || d.segments.empty()) return false;
    if (structural_violation(net, d, x) != 0) return false;
    try {
        fire_sequence(net, m0, d.flatten(), false);
    } catch (const NotEnabledError&) {
        return false;
    }
    return true;
}

int weak_pumping_violation(const PetriNet& net, const Marking& m0, const PumpingDecomposition& d, const PlaceSet& x) {
    if (x.empty()) throw Error(ErrorCode::EmptyX, "pumping target X must be nonempty");
    if (d.segments.empty()) return 2;
    if (int c = structural_violation(net, d, x)) return c;
    const std::size_t m = net.num_places();
    std::vector<bool> pumped(m, false);
    std::vector<Tokens> cur(m0.values());
    auto step = [&](TransitionId t) {
        for (PlaceId p = 0; p < m; ++p)
            if (!pumped[p] && cur[p] < static_cast<Tokens>(net.pre(p, t))) return false;
        for (PlaceId p = 0; p < m; ++p) cur[p] = checked_add(cur[p], net.delta(p, t));
        return true;
    };
    for (const auto& [plain, pump] : d.segments) {
        for (TransitionId t : plain)
            if (!step(t)) return 4;
        for (TransitionId t : pump)
            if (!step(t)) return 4;
        for (PlaceId p = 0; p < m; ++p)
            if (effect(net, pump, p) > 0) pumped[p] = true;
    }
    return 0;
}

namespace {

enum class MoveKind : unsigned char { Root, Fire, Start, End };

PumpingSearch pumping_bfs(const PetriNet& net, const Marking& m0, const PlaceSet& x, std::size_t max_len,
                          const PumpingSearchOptions& opts, bool weak) {
    if (x.empty()) throw Error(ErrorCode::EmptyX, "pumping target X must be nonempty");
    const std::size_t m = net.num_places();
    if (m > 62) throw Error(ErrorCode::InvalidArgument, "pumping search supports at most 62 places");
    std::uint64_t x_mask = 0;
    for (PlaceId p : x.members()) x_mask |= std::uint64_t{1} << p;

    struct State {
        std::vector<Tokens> m;
        std::vector<Tokens> start;  // empty outside a portion
        std::uint64_t pumped = 0;
        bool in = false;
        bool nonempty = false;
    };
    struct Node {
        State s;
        std::size_t parent;
        MoveKind move;
        TransitionId t;
    };
    auto key_of = [&](const State& s) {
        std::vector<Tokens> k(s.m);
        k.insert(k.end(), s.start.begin(), s.start.end());
        k.push_back(static_cast<Tokens>(s.pumped));
        k.push_back((s.in ? 2 : 0) + (s.nonempty ? 1 : 0));
        return k;
    };
    std::vector<Node> arena;
    std::unordered_map<std::vector<Tokens>, char, VecHash> seen;
    PumpingSearch res;

    auto build = [&](std::size_t id) {
        std::vector<std::pair<MoveKind, TransitionId>> moves;
        for (std::size_t cur = id; arena[cur].move != MoveKind::Root; cur = arena[cur].parent)
            moves.emplace_back(arena[cur].move, arena[cur].t);
        std::reverse(moves.begin(), moves.end());
        PumpingDecomposition d;
        FiringSequence plain, pump;
        bool in = false;
        for (auto [kind, t] : moves) {
            if (kind == MoveKind::Start) {
                in = true;
            } else if (kind == MoveKind::End) {
                d.segments.emplace_back(std::move(plain), std::move(pump));
                plain.clear();
                pump.clear();
                in = false;
            } else {
                (in ? pump : plain).push_back(t);
            }
        }
        refresh_pumped_sets(net, d);
        return d;
    };

    State root{m0.values(), {}, 0, false, false};
    seen.emplace(key_of(root), 0);
    arena.push_back({root, kNone, MoveKind::Root, 0});
    std::deque<std::size_t> level{0};
    bool capped = false;
    for (std::size_t depth = 0; !level.empty(); ++depth) {
        std::vector<std::size_t> next;
        // Zero-length moves extend the current level in place.
        for (std::size_t qi = 0; qi < level.size(); ++qi) {
            const std::size_t id = level[qi];
            auto push = [&](State s, MoveKind kind, TransitionId t, bool same_level) {
                if (!seen.emplace(key_of(s), 0).second) return;
                if (seen.size() > opts.state_cap) {
                    capped = true;
                    return;
                }
                arena.push_back({std::move(s), id, kind, t});
                if (same_level)
                    level.push_back(arena.size() - 1);
                else
                    next.push_back(arena.size() - 1);
            };
            const State s = arena[id].s;
            if (s.in && s.nonempty) {
                std::uint64_t gained = 0;
                bool ok = true;
                for (PlaceId p = 0; p < m; ++p) {
                    const Tokens d = s.m[p] - s.start[p];
                    const std::uint64_t bit = std::uint64_t{1} << p;
                    if (d < 0 && !(s.pumped & bit)) ok = false;
                    if (d > 0) gained |= bit;
                }
                const std::uint64_t now = s.pumped | gained;
                if (ok && now != s.pumped) {
                    State e{s.m, {}, now, false, false};
                    if ((now & x_mask) == x_mask) {
                        arena.push_back({std::move(e), id, MoveKind::End, 0});
                        res.found = build(arena.size() - 1);
                        res.states = seen.size();
                        return res;
                    }
                    push(std::move(e), MoveKind::End, 0, true);
                }
            }
            if (!s.in) push(State{s.m, s.m, s.pumped, true, false}, MoveKind::Start, 0, true);
            if (depth < max_len) {
                for (TransitionId t = 0; t < net.num_transitions(); ++t) {
                    bool ok = true;
                    for (PlaceId p = 0; p < m && ok; ++p) {
                        const bool relaxed = weak && (s.pumped >> p & 1);
                        if (!relaxed && s.m[p] < static_cast<Tokens>(net.pre(p, t))) ok = false;
                    }
                    if (!ok) continue;
                    State f{fire_vec(net, s.m, t), s.start, s.pumped, s.in, s.in};
                    push(std::move(f), MoveKind::Fire, t, false);
                }
            }
            if (capped) break;
        }
        if (capped) break;
        level.assign(next.begin(), next.end());
    }
    res.states = seen.size();
    res.exhaustive = !capped;
    return res;
}

}  // namespace

PumpingSearch search_pumping(const PetriNet& net, const Marking& m0, const PlaceSet& x, std::size_t max_len,
                             const PumpingSearchOptions& opts) {
    return pumping_bfs(net, m0, x, max_len, opts, false);
}

std::optional<PumpingDecomposition> find_pumping(const PetriNet& net, const Marking& m0, const PlaceSet& x,
                                                 std::size_t max_len) {
    return search_pumping(net, m0, x, max_len).found;
}

PumpingSearch search_weak_pumping(const PetriNet& net, const Marking& m0, const PlaceSet& x, std::size_t max_len,
                                  const PumpingSearchOptions& opts) {
    return pumping_bfs(net, m0, x, max_len, opts, true);
}

std::vector<BigInt> pumping_repetitions(std::size_t alpha, std::size_t total_len, Weight w) {
    std::vector<BigInt> n(alpha + 1, 0);  // 1-based
    if (alpha == 0) return {};
    const BigInt unit = BigInt(total_len == 0 ? 0 : total_len - 1) * w;
    n[alpha] = 1;
    for (std::size_t l = alpha - 1; l >= 1; --l) {
        BigInt v = BigInt(alpha - l) * unit;
        for (std::size_t u = l + 1; u <= alpha; ++u) v += unit * n[u];
        n[l] = v;
    }
    return std::vector<BigInt>(n.begin() + 1, n.end());
}

PumpingDecomposition strengthen_pumping_decomposition(const PetriNet& net, const Marking& m0,
                                                      const PumpingDecomposition& weak, const PlaceSet& x,
                                                      std::size_t max_output) {
    if (int c = weak_pumping_violation(net, m0, weak, x))
        throw PreconditionError(c, "weakly enabled pumping condition " + std::to_string(c) + " fails");
    const auto reps = pumping_repetitions(weak.alpha(), weak.length(), net.max_weight());
    BigInt total = 0;
    for (std::size_t l = 0; l < weak.alpha(); ++l)
        total += weak.segments[l].first.size() + reps[l] * weak.segments[l].second.size();
    if (total > max_output)
        throw Error(ErrorCode::Overflow, "strengthened sequence would have " + total.str() + " transitions");
    PumpingDecomposition out;
    for (std::size_t l = 0; l < weak.alpha(); ++l) {
        const auto& [plain, pump] = weak.segments[l];
        FiringSequence repeated;
        const auto n = reps[l].convert_to<std::size_t>();
        for (std::size_t r = 0; r < n; ++r) repeated.insert(repeated.end(), pump.begin(), pump.end());
        out.segments.emplace_back(plain, std::move(repeated));
    }
    refresh_pumped_sets(net, out);
    return out;
}

FiringSequence strengthen_pumping(const PetriNet& net, const Marking& m0, const PumpingDecomposition& weak,
                                  const PlaceSet& x, std::size_t max_output) {
    return strengthen_pumping_decomposition(net, m0, weak, x, max_output).flatten();
}

}  // namespace pnvc
