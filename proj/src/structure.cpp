#include "pnvc/structure.hpp"

#include <algorithm>
#include <set>

#include <boost/multiprecision/cpp_int.hpp>

namespace pnvc {

using boost::multiprecision::cpp_int;

bool AssociationGraph::has_edge(PlaceId a, PlaceId b) const {
    const auto& adj = adjacency.at(a);
    return std::binary_search(adj.begin(), adj.end(), b);
}

std::vector<std::pair<PlaceId, PlaceId>> AssociationGraph::edges() const {
    std::vector<std::pair<PlaceId, PlaceId>> out;
    for (PlaceId a = 0; a < num_vertices; ++a)
        for (PlaceId b : adjacency[a])
            if (a < b) out.emplace_back(a, b);
    return out;
}

AssociationGraph build_graph(const PetriNet& net) {
    const std::size_t m = net.num_places();
    AssociationGraph g;
    g.num_vertices = m;
    g.adjacency.assign(m, {});
    g.self_loop.assign(m, false);
    std::vector<std::vector<bool>> adj(m, std::vector<bool>(m, false));
    for (TransitionId t = 0; t < net.num_transitions(); ++t) {
        std::vector<PlaceId> touched;
        for (PlaceId p = 0; p < m; ++p) {
            if (net.touches(p, t)) touched.push_back(p);
            if (net.pre(p, t) >= 1 && net.post(p, t) >= 1) g.self_loop[p] = true;
        }
        for (std::size_t a = 0; a < touched.size(); ++a)
            for (std::size_t b = a + 1; b < touched.size(); ++b)
                adj[touched[a]][touched[b]] = adj[touched[b]][touched[a]] = true;
    }
    for (PlaceId a = 0; a < m; ++a)
        for (PlaceId b = 0; b < m; ++b)
            if (adj[a][b]) g.adjacency[a].push_back(b);
    return g;
}

bool is_vertex_cover(const AssociationGraph& g, const PlaceSet& s) {
    for (PlaceId p = 0; p < g.num_vertices; ++p)
        if (g.self_loop[p] && !s.contains(p)) return false;
    for (auto [a, b] : g.edges())
        if (!s.contains(a) && !s.contains(b)) return false;
    return true;
}

namespace {

enum class Status : unsigned char { Free, In, Out };

// Bounded branching: is there a cover with at most `budget` further vertices
// consistent with the current statuses?
class CoverSearch {
public:
    explicit CoverSearch(const AssociationGraph& g) : g_(g) {}

    bool feasible(std::vector<Status>& st, std::size_t budget) {
        // Propagate: an Out vertex forces its neighbours in.
        std::vector<PlaceId> forced;
        for (PlaceId v = 0; v < g_.num_vertices; ++v) {
            if (st[v] != Status::Out) continue;
            if (g_.self_loop[v]) return false;
            for (PlaceId u : g_.adjacency[v]) {
                if (st[u] == Status::Out) return false;
                if (st[u] == Status::Free) {
                    st[u] = Status::In;
                    forced.push_back(u);
                }
            }
        }
        bool ok = false;
        if (forced.size() <= budget) ok = branch(st, budget - forced.size());
        for (PlaceId u : forced) st[u] = Status::Free;
        return ok;
    }

private:
    bool branch(std::vector<Status>& st, std::size_t budget) {
        // Highest-degree free vertex with a free neighbour still uncovered.
        PlaceId pick = g_.num_vertices;
        std::size_t best = 0;
        std::size_t uncovered = 0;
        for (PlaceId v = 0; v < g_.num_vertices; ++v) {
            if (st[v] != Status::Free) continue;
            std::size_t d = 0;
            for (PlaceId u : g_.adjacency[v])
                if (st[u] == Status::Free) ++d;
            uncovered += d;
            if (d > best) {
                best = d;
                pick = v;
            }
        }
        if (pick == g_.num_vertices) return true;
        if (budget == 0) return false;
        // Each vertex covers at most `best` edges.
        if ((uncovered / 2 + best - 1) / best > budget) return false;
        st[pick] = Status::In;
        if (branch(st, budget - 1)) {
            st[pick] = Status::Free;
            return true;
        }
        // Excluding `pick` forces all its free neighbours in.
        st[pick] = Status::Out;
        std::vector<PlaceId> forced;
        for (PlaceId u : g_.adjacency[pick])
            if (st[u] == Status::Free) forced.push_back(u);
        bool ok = false;
        if (forced.size() <= budget) {
            for (PlaceId u : forced) st[u] = Status::In;
            ok = branch(st, budget - forced.size());
            for (PlaceId u : forced) st[u] = Status::Free;
        }
        st[pick] = Status::Free;
        return ok;
    }

    const AssociationGraph& g_;
};

}  // namespace

VertexCover min_vertex_cover(const AssociationGraph& g, std::optional<std::size_t> budget) {
    const std::size_t m = g.num_vertices;
    std::vector<Status> st(m, Status::Free);
    std::size_t forced = 0;
    for (PlaceId v = 0; v < m; ++v) {
        if (g.self_loop[v]) {
            st[v] = Status::In;
            ++forced;
        }
    }
    CoverSearch search(g);
    std::size_t k = forced;
    while (true) {
        if (budget && k > *budget)
            throw BudgetExceededError(*budget + 1, "minimum vertex cover exceeds budget " +
                                                       std::to_string(*budget));
        auto trial = st;
        if (search.feasible(trial, k - forced)) break;
        ++k;
    }
    // Lexicographic tie-break: include each vertex whenever a size-k cover
    // with the decisions made so far still exists.
    std::size_t used = forced;
    for (PlaceId v = 0; v < m; ++v) {
        if (st[v] != Status::Free) continue;
        st[v] = Status::In;
        auto trial = st;
        if (used + 1 <= k && search.feasible(trial, k - used - 1)) {
            ++used;
            continue;
        }
        // Its free neighbours are forced in when reached.
        st[v] = Status::Out;
    }
    VertexCover vc{PlaceSet(m), true};
    for (PlaceId v = 0; v < m; ++v)
        if (st[v] == Status::In) vc.members.insert(v);
    return vc;
}

VertexCover greedy_vertex_cover(const AssociationGraph& g) {
    VertexCover vc{PlaceSet(g.num_vertices), false};
    for (PlaceId v = 0; v < g.num_vertices; ++v)
        if (g.self_loop[v]) vc.members.insert(v);
    for (auto [a, b] : g.edges()) {
        if (!vc.members.contains(a) && !vc.members.contains(b)) {
            vc.members.insert(a);
            vc.members.insert(b);
        }
    }
    return vc;
}

TypeClassification classify_types(const PetriNet& net, const VertexCover& vc) {
    const auto cover = vc.members.members();
    const std::size_t n = net.num_transitions();
    std::vector<std::vector<std::pair<Weight, Weight>>> sigs(n);
    for (TransitionId t = 0; t < n; ++t)
        for (PlaceId p : cover) sigs[t].emplace_back(net.pre(p, t), net.post(p, t));
    std::vector<std::vector<std::pair<Weight, Weight>>> distinct(sigs.begin(), sigs.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    TypeClassification out;
    out.types.resize(distinct.size());
    out.assignment.resize(n);
    for (std::size_t j = 0; j < distinct.size(); ++j) out.types[j].signature = distinct[j];
    for (TransitionId t = 0; t < n; ++t) {
        auto it = std::lower_bound(distinct.begin(), distinct.end(), sigs[t]);
        std::size_t j = static_cast<std::size_t>(it - distinct.begin());
        out.assignment[t] = j;
        out.types[j].members.push_back(t);
    }
    return out;
}

bool Variety::empty() const {
    return std::all_of(deltas.begin(), deltas.end(), [](const auto& d) { return d.empty(); });
}

bool Variety::contains(std::size_t type, Tokens w) const {
    if (type >= deltas.size()) return false;
    return std::binary_search(deltas[type].begin(), deltas[type].end(), w);
}

VarietyMap compute_varieties(const PetriNet& net, const VertexCover& vc,
                             const TypeClassification& types) {
    VarietyMap out;
    for (PlaceId p = 0; p < net.num_places(); ++p) {
        if (vc.members.contains(p)) continue;
        std::vector<std::set<Tokens>> sets(types.types.size());
        for (TransitionId t = 0; t < net.num_transitions(); ++t) {
            const Weight a = net.pre(p, t), b = net.post(p, t);
            if (a == 0 && b == 0) continue;
            if (a != 0 && b != 0)
                throw Error(ErrorCode::MalformedNet,
                            "non-cover place '" + net.place_name(p) + "' has both an input and an output arc on '" +
                                net.transition_name(t) + "'");
            sets[types.assignment.at(t)].insert(static_cast<Tokens>(b) - static_cast<Tokens>(a));
        }
        Variety v;
        for (auto& s : sets) v.deltas.emplace_back(s.begin(), s.end());
        out.emplace(p, std::move(v));
    }
    return out;
}

bool Decomposition::same_variety(PlaceId a, PlaceId b) const {
    if (a == b) return true;
    auto ia = variety_id.find(a), ib = variety_id.find(b);
    if (ia == variety_id.end() || ib == variety_id.end()) return false;
    return ia->second == ib->second;
}

PlaceId Decomposition::representative_of(PlaceId p) const {
    auto it = variety_id.find(p);
    if (it == variety_id.end()) return p;
    return representatives.at(it->second);
}

Decomposition decompose(const PetriNet& net, const VertexCover& vc) {
    const auto g = build_graph(net);
    if (vc.members.universe() != net.num_places() || !is_vertex_cover(g, vc.members))
        throw Error(ErrorCode::InvalidArgument, "place set is not a vertex cover of the association graph");
    Decomposition d;
    d.vc = vc;
    d.types = classify_types(net, vc);
    d.varieties = compute_varieties(net, vc, d.types);
    d.special = vc.members;
    d.independent = PlaceSet(net.num_places());
    std::vector<const Variety*> seen;
    for (const auto& [p, v] : d.varieties) {
        std::size_t id = seen.size();
        for (std::size_t i = 0; i < seen.size(); ++i) {
            if (*seen[i] == v) {
                id = i;
                break;
            }
        }
        if (id == seen.size()) {
            seen.push_back(&v);
            d.representatives.push_back(p);
            d.special.insert(p);
        } else {
            d.independent.insert(p);
        }
        d.variety_id[p] = id;
    }
    return d;
}

Decomposition analyze_structure(const PetriNet& net, bool approximate) {
    const auto g = build_graph(net);
    return decompose(net, approximate ? greedy_vertex_cover(g) : min_vertex_cover(g));
}

namespace {

cpp_int type_cap(Weight w, std::size_t k) {
    return boost::multiprecision::pow(cpp_int(w) + 1, static_cast<unsigned>(2 * k));
}

}  // namespace

bool within_type_cap(std::size_t num_types, Weight w, std::size_t k) {
    return cpp_int(num_types) <= type_cap(w, k);
}

bool within_variety_cap(std::size_t num_varieties, Weight w, std::size_t k) {
    const cpp_int exponent = 2 * cpp_int(w) * type_cap(w, k);
    if (exponent >= 64) return true;  // size_t cannot reach 2^64
    const unsigned e = exponent.convert_to<unsigned>();
    return cpp_int(num_varieties) <= (cpp_int(1) << e);
}

}  // namespace pnvc
