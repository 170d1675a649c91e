#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnvc/errors.hpp"

namespace pnvc {

using Tokens = std::int64_t;
using Weight = std::uint32_t;
using PlaceId = std::size_t;
using TransitionId = std::size_t;
using FiringSequence = std::vector<TransitionId>;

// Checked token arithmetic; overflow raises ErrorCode::Overflow.
Tokens checked_add(Tokens a, Tokens b);
Tokens checked_sub(Tokens a, Tokens b);
Tokens checked_mul(Tokens a, Tokens b);

class PetriNet {
public:
    PetriNet() = default;

    // `pre` and `post` are row-major m x n (place-major). Throws on invalid
    // identifiers or dimension mismatch.
    PetriNet(std::string name,
             std::vector<std::string> places,
             std::vector<std::string> transitions,
             std::vector<Weight> pre,
             std::vector<Weight> post);

    const std::string& name() const noexcept { return name_; }
    std::size_t num_places() const noexcept { return places_.size(); }
    std::size_t num_transitions() const noexcept { return transitions_.size(); }
    const std::vector<std::string>& places() const noexcept { return places_; }
    const std::vector<std::string>& transitions() const noexcept { return transitions_; }
    const std::string& place_name(PlaceId p) const { return places_.at(p); }
    const std::string& transition_name(TransitionId t) const { return transitions_.at(t); }

    Weight pre(PlaceId p, TransitionId t) const { return pre_[p * transitions_.size() + t]; }
    Weight post(PlaceId p, TransitionId t) const { return post_[p * transitions_.size() + t]; }
    Tokens delta(PlaceId p, TransitionId t) const {
        return static_cast<Tokens>(post(p, t)) - static_cast<Tokens>(pre(p, t));
    }
    bool touches(PlaceId p, TransitionId t) const { return pre(p, t) + post(p, t) > 0; }

    // Maximum matrix entry, or 1 when every entry is 0.
    Weight max_weight() const noexcept { return max_weight_; }

    std::optional<PlaceId> find_place(std::string_view name) const;
    std::optional<TransitionId> find_transition(std::string_view name) const;
    PlaceId place_index(std::string_view name) const;

    // Copy of the net without the given transition.
    PetriNet without_transition(TransitionId t) const;

    friend bool operator==(const PetriNet&, const PetriNet&) = default;

private:
    std::string name_;
    std::vector<std::string> places_;
    std::vector<std::string> transitions_;
    std::vector<Weight> pre_;
    std::vector<Weight> post_;
    Weight max_weight_ = 1;
};

// Natural-valued token assignment over the net's places.
class Marking {
public:
    Marking() = default;
    explicit Marking(std::size_t num_places) : values_(num_places, 0) {}
    explicit Marking(std::vector<Tokens> values);

    std::size_t size() const noexcept { return values_.size(); }
    Tokens operator[](PlaceId p) const { return values_[p]; }
    void set(PlaceId p, Tokens v);
    const std::vector<Tokens>& values() const noexcept { return values_; }
    Tokens max_value() const noexcept;

    // Componentwise >=.
    bool covers(const Marking& other) const;

    friend bool operator==(const Marking&, const Marking&) = default;
    friend auto operator<=>(const Marking&, const Marking&) = default;

private:
    std::vector<Tokens> values_;
};

// Integer-valued assignment used by Q-relaxed firing.
class RelaxedMarking {
public:
    RelaxedMarking() = default;
    explicit RelaxedMarking(std::vector<Tokens> values) : values_(std::move(values)) {}
    explicit RelaxedMarking(const Marking& m) : values_(m.values()) {}

    std::size_t size() const noexcept { return values_.size(); }
    Tokens operator[](PlaceId p) const { return values_[p]; }
    Tokens& operator[](PlaceId p) { return values_[p]; }
    const std::vector<Tokens>& values() const noexcept { return values_; }

    friend bool operator==(const RelaxedMarking&, const RelaxedMarking&) = default;

private:
    std::vector<Tokens> values_;
};

class PlaceSet {
public:
    PlaceSet() = default;
    explicit PlaceSet(std::size_t num_places) : bits_(num_places, false) {}
    static PlaceSet all(std::size_t num_places);
    static PlaceSet of(std::size_t num_places, std::initializer_list<PlaceId> members);

    bool contains(PlaceId p) const { return p < bits_.size() && bits_[p]; }
    void insert(PlaceId p) { bits_.at(p) = true; }
    void erase(PlaceId p) { bits_.at(p) = false; }
    std::size_t universe() const noexcept { return bits_.size(); }
    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }
    std::vector<PlaceId> members() const;

    friend bool operator==(const PlaceSet&, const PlaceSet&) = default;

private:
    std::vector<bool> bits_;
};

struct NetSize {
    std::uint64_t bits = 0;
};

struct ParsedNet {
    PetriNet net;
    Marking initial;
};

// --- firing semantics ---

bool is_enabled(const PetriNet& net, const Marking& m, TransitionId t);

// Throws NotEnabledError naming the first deficient place.
Marking fire(const PetriNet& net, const Marking& m, TransitionId t);

struct Replay {
    Marking final;
    std::vector<Marking> chain;  // M, M1, ..., Mr; empty when not requested
};

Replay fire_sequence(const PetriNet& net, const Marking& m, const FiringSequence& seq,
                     bool keep_chain = true);

// Streaming replay: `visit(index, marking)` is called for every marking of the
// chain (index 0 is `m`). Throws NotEnabledError with the failing step.
Marking replay(const PetriNet& net, const Marking& m, const FiringSequence& seq,
               const std::function<void(std::size_t, const Marking&)>& visit);

struct RelaxedReplay {
    RelaxedMarking final;
    std::vector<RelaxedMarking> chain;
    // Index in the chain of the first marking with a negative Q place.
    std::optional<std::size_t> violation;
};

RelaxedReplay fire_relaxed(const PetriNet& net, const RelaxedMarking& m,
                           const FiringSequence& seq, const PlaceSet& q);

Tokens effect(const PetriNet& net, const FiringSequence& seq, PlaceId p);

NetSize net_size(const PetriNet& net, const Marking& m0);

// --- text and JSON formats ---

ParsedNet parse_net(std::string_view text);
std::string to_text(const PetriNet& net, const Marking& m0);

ParsedNet parse_net_json(std::string_view json_text);
std::string to_json_text(const PetriNet& net, const Marking& m0);

// Loads either format; JSON is detected by a leading '{'.
ParsedNet load_net_file(const std::string& path);

// "p1:1,p2:3" -> marking over the net's places; unlisted places are 0.
Marking parse_marking_list(const PetriNet& net, std::string_view text);

std::string format_marking(const PetriNet& net, const Marking& m);
std::string format_sequence(const PetriNet& net, const FiringSequence& seq);

}  // namespace pnvc
