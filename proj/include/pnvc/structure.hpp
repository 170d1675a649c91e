#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pnvc/net.hpp"

namespace pnvc {

struct AssociationGraph {
    std::size_t num_vertices = 0;
    std::vector<std::vector<PlaceId>> adjacency;  // sorted, no self entries
    std::vector<bool> self_loop;

    bool has_edge(PlaceId a, PlaceId b) const;
    std::vector<std::pair<PlaceId, PlaceId>> edges() const;  // a < b, lexicographic
    std::size_t degree(PlaceId p) const { return adjacency.at(p).size(); }
};

AssociationGraph build_graph(const PetriNet& net);

struct VertexCover {
    PlaceSet members;
    bool optimal = true;  // false for the greedy approximation

    std::size_t size() const { return members.count(); }
};

bool is_vertex_cover(const AssociationGraph& g, const PlaceSet& s);

// Minimum cover containing every self-loop vertex. Among minimum covers the
// lexicographically smallest member list (declaration order) is returned.
// Throws BudgetExceededError when the minimum is larger than `budget`.
VertexCover min_vertex_cover(const AssociationGraph& g,
                             std::optional<std::size_t> budget = std::nullopt);

// Maximal-matching 2-approximation plus forced self-loop vertices.
VertexCover greedy_vertex_cover(const AssociationGraph& g);

struct TransitionType {
    // (Pre, Post) per cover place, cover places in declaration order.
    std::vector<std::pair<Weight, Weight>> signature;
    std::vector<TransitionId> members;
};

struct TypeClassification {
    std::vector<TransitionType> types;    // sorted by signature
    std::vector<std::size_t> assignment;  // transition -> type index
};

TypeClassification classify_types(const PetriNet& net, const VertexCover& vc);

// Per type index, the sorted set of nonzero signed weights a place exhibits.
struct Variety {
    std::vector<std::vector<Tokens>> deltas;

    bool empty() const;
    bool contains(std::size_t type, Tokens w) const;
    friend bool operator==(const Variety&, const Variety&) = default;
    friend auto operator<=>(const Variety&, const Variety&) = default;
};

// Keyed by non-cover place.
using VarietyMap = std::map<PlaceId, Variety>;

VarietyMap compute_varieties(const PetriNet& net, const VertexCover& vc,
                             const TypeClassification& types);

struct Decomposition {
    VertexCover vc;
    TypeClassification types;
    VarietyMap varieties;
    std::map<PlaceId, std::size_t> variety_id;   // ids by first appearance
    std::vector<PlaceId> representatives;        // indexed by variety id
    PlaceSet special;
    PlaceSet independent;

    std::size_t k() const { return vc.size(); }
    std::size_t k_prime() const { return special.count(); }
    std::size_t num_varieties() const { return representatives.size(); }

    bool in_cover(PlaceId p) const { return vc.members.contains(p); }
    // Equal varieties; cover places only match themselves.
    bool same_variety(PlaceId a, PlaceId b) const;
    PlaceId representative_of(PlaceId p) const;
};

// Throws InvalidArgument if `vc` is not a cover of the net's graph.
Decomposition decompose(const PetriNet& net, const VertexCover& vc);

// Convenience: minimum cover (or greedy when `approximate`) then decompose.
Decomposition analyze_structure(const PetriNet& net, bool approximate = false);

// (W+1)^{2k} and the variety cap 2^{2W(W+1)^{2k}} compared exactly.
bool within_type_cap(std::size_t num_types, Weight w, std::size_t k);
bool within_variety_cap(std::size_t num_varieties, Weight w, std::size_t k);

}  // namespace pnvc
