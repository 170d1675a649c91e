#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pnvc/bounds.hpp"
#include "pnvc/net.hpp"

namespace pnvc {

inline constexpr Tokens kOmega = std::numeric_limits<Tokens>::max();

// Marking over N ∪ {ω}; ω is stored as kOmega and absorbs addition.
class OmegaMarking {
public:
    OmegaMarking() = default;
    explicit OmegaMarking(std::vector<Tokens> values) : values_(std::move(values)) {}
    explicit OmegaMarking(const Marking& m) : values_(m.values()) {}

    std::size_t size() const noexcept { return values_.size(); }
    Tokens operator[](PlaceId p) const { return values_[p]; }
    bool is_omega(PlaceId p) const { return values_[p] == kOmega; }
    bool has_omega() const;
    void set_omega(PlaceId p) { values_[p] = kOmega; }
    const std::vector<Tokens>& values() const noexcept { return values_; }

    bool leq(const OmegaMarking& o) const;  // componentwise, ω is top
    bool covers(const Marking& m) const;
    std::string to_string(const PetriNet& net) const;

    friend bool operator==(const OmegaMarking&, const OmegaMarking&) = default;

private:
    std::vector<Tokens> values_;
};

bool omega_enabled(const PetriNet& net, const OmegaMarking& m, TransitionId t);
OmegaMarking omega_fire(const PetriNet& net, const OmegaMarking& m, TransitionId t);

struct SearchStats {
    std::size_t nodes = 0;
    std::size_t peak_frontier = 0;
};

// --- coverability ---

enum class CoverVerdict { Covered, NotCovered, Inconclusive };
enum class CoverMethod { Backward, Forward, Both };
const char* to_string(CoverVerdict v);
const char* to_string(CoverMethod m);

struct CoverResult {
    CoverVerdict verdict = CoverVerdict::Inconclusive;
    std::optional<FiringSequence> witness;
    CoverMethod method = CoverMethod::Backward;
    SearchStats stats;
};

// Complete backward algorithm over minimal bases; inconclusive only when the
// basis outgrows `basis_cap`. The witness has shortest length.
CoverResult cover_backward(const PetriNet& net, const Marking& m0, const Marking& target,
                           std::size_t basis_cap = 1'000'000);

// Refutation on the accelerated coverability set, then a dominance-pruned
// level-synchronous search of depth at most `max_len`.
CoverResult cover_forward_bounded(const PetriNet& net, const Marking& m0, const Marking& target,
                                  const BoundValue& max_len, std::size_t state_cap = 1'000'000);

// Exact breadth-first shortest covering length (no dominance pruning).
// Absent when no witness of length <= hard_cap exists or the search stops at
// `state_cap` visited markings.
std::optional<std::size_t> shortest_cover_len(const PetriNet& net, const Marking& m0, const Marking& target,
                                              std::size_t hard_cap, std::size_t state_cap = 2'000'000);

// --- ω-trees and coverability sets ---

struct KMNode {
    OmegaMarking marking;
    std::optional<std::size_t> parent;
    std::optional<TransitionId> via;
    std::vector<std::size_t> children;
    bool repeated = false;  // equal to an ancestor, not expanded
};

struct KarpMillerTree {
    std::vector<KMNode> nodes;
    bool complete = true;

    bool has_omega() const;
    FiringSequence path_to(std::size_t node) const;
};

KarpMillerTree karp_miller(const PetriNet& net, const OmegaMarking& m0, std::size_t node_cap = 100'000);
inline KarpMillerTree karp_miller(const PetriNet& net, const Marking& m0, std::size_t node_cap = 100'000) {
    return karp_miller(net, OmegaMarking(m0), node_cap);
}

// Accelerated exploration where a new node dominated by any existing node is
// dropped. Its downward closure is the cover of the reachability set.
struct CoverabilitySet {
    std::vector<OmegaMarking> nodes;
    bool complete = true;
};

CoverabilitySet coverability_set(const PetriNet& net, const OmegaMarking& m0, std::size_t node_cap = 100'000);

// --- boundedness ---

enum class BoundedVerdict { Bounded, Unbounded, Inconclusive };
enum class BoundedMethod { KarpMiller, SelfCovering, Both };
const char* to_string(BoundedVerdict v);
const char* to_string(BoundedMethod m);

struct SelfCoveringWitness {
    FiringSequence sequence;
    std::size_t split = 0;  // r': M_{r'} < M_r with r = |sequence|
};

struct SelfCoveringSearch {
    std::optional<SelfCoveringWitness> witness;
    // True when absence (or shortest-ness of the witness) is proven, either
    // for every length because the reachable set was enumerated, or up to
    // max_len.
    bool exhaustive = false;
    bool reachable_set_finite = false;
    std::size_t states = 0;
};

struct SelfCoveringOptions {
    std::size_t state_cap = 200'000;
    std::size_t work_cap = 5'000'000;
};

SelfCoveringSearch search_self_covering(const PetriNet& net, const Marking& m0, std::size_t max_len,
                                        const SelfCoveringOptions& opts = {});

// Shortest, then lexicographically smallest, self-covering sequence.
std::optional<SelfCoveringWitness> find_self_covering(const PetriNet& net, const Marking& m0, std::size_t max_len);

bool is_self_covering(const PetriNet& net, const Marking& m0, const SelfCoveringWitness& w);

struct BoundedResult {
    BoundedVerdict verdict = BoundedVerdict::Inconclusive;
    BoundedMethod method = BoundedMethod::KarpMiller;
    BoundedVerdict km_verdict = BoundedVerdict::Inconclusive;
    BoundedVerdict scs_verdict = BoundedVerdict::Inconclusive;
    std::optional<SelfCoveringWitness> self_covering;
    std::optional<FiringSequence> omega_path;  // path to the first ω node
    std::size_t km_nodes = 0;
};

struct BoundedOptions {
    std::size_t node_cap = 100'000;
    std::size_t max_len = 10'000;
    SelfCoveringOptions scs;
};

BoundedResult is_bounded(const PetriNet& net, const Marking& m0, const BoundedOptions& opts = {});

// --- pumping sequences ---

struct PumpingDecomposition {
    // (non-pumping, pumping) pairs in order; pumping parts are nonempty.
    std::vector<std::pair<FiringSequence, FiringSequence>> segments;
    // Places with positive effect per pumping portion.
    std::vector<PlaceSet> pumped_set;

    std::size_t alpha() const { return segments.size(); }
    FiringSequence flatten() const;
    std::size_t length() const;
};

// Recomputes pumped_set from the portions.
void refresh_pumped_sets(const PetriNet& net, PumpingDecomposition& d);

// Conditions 1-2 of an X-pumping sequence plus strict enabledness at m0.
bool is_pumping_sequence(const PetriNet& net, const Marking& m0, const PumpingDecomposition& d, const PlaceSet& x);

// First violated condition of the ∅-neglecting weakly (m0, P, ω)-enabled
// definition (1, 2 or 4), or 0 when all hold. Condition 4 is read as "a
// place not yet pumped is never required below its input weight".
int weak_pumping_violation(const PetriNet& net, const Marking& m0, const PumpingDecomposition& d,
                           const PlaceSet& x);

struct PumpingSearchOptions {
    std::size_t state_cap = 500'000;
};

struct PumpingSearch {
    std::optional<PumpingDecomposition> found;
    bool exhaustive = false;  // every sequence of length <= max_len examined
    std::size_t states = 0;
};

// Strictly enabled X-pumping sequences with at most m portions, shortest first.
PumpingSearch search_pumping(const PetriNet& net, const Marking& m0, const PlaceSet& x, std::size_t max_len,
                             const PumpingSearchOptions& opts = {});
std::optional<PumpingDecomposition> find_pumping(const PetriNet& net, const Marking& m0, const PlaceSet& x,
                                                 std::size_t max_len);

// Same search over ∅-neglecting weakly enabled sequences.
PumpingSearch search_weak_pumping(const PetriNet& net, const Marking& m0, const PlaceSet& x, std::size_t max_len,
                                  const PumpingSearchOptions& opts = {});

// Repetition counts n_alpha = 1, n_l = (alpha-l)(|s|-1)W + sum_{u>l} (|s|-1) W n_u.
std::vector<BigInt> pumping_repetitions(std::size_t alpha, std::size_t total_len, Weight w);

// Expands a weak decomposition into a strictly enabled X-pumping sequence.
// Throws PreconditionError naming the failing condition.
FiringSequence strengthen_pumping(const PetriNet& net, const Marking& m0, const PumpingDecomposition& weak,
                                  const PlaceSet& x, std::size_t max_output = 10'000'000);
// Same, keeping the portions: the i-th pumping part is repeated n_i times.
PumpingDecomposition strengthen_pumping_decomposition(const PetriNet& net, const Marking& m0,
                                                      const PumpingDecomposition& weak, const PlaceSet& x,
                                                      std::size_t max_output = 10'000'000);

}  // namespace pnvc
