#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pnvc/net.hpp"
#include "pnvc/structure.hpp"

namespace pnvc {

struct SubWord {
    std::vector<std::size_t> positions;  // strictly increasing

    std::size_t size() const noexcept { return positions.size(); }
};

// Throws InvalidArgument when positions are not increasing or out of range.
void validate_sub_word(const FiringSequence& host, const SubWord& sw);

struct Replacement {
    std::size_t position;
    TransitionId from;
    TransitionId to;
};

struct TransferResult {
    FiringSequence new_sequence;
    std::vector<Replacement> replaced;
};

// Every prefix of the sub-word has nonnegative effect on p.
bool is_safe_for_transfer(const PetriNet& net, const FiringSequence& seq, const SubWord& sw, PlaceId p);

TransferResult transfer(const PetriNet& net, const FiringSequence& seq, const SubWord& sw,
                        PlaceId p1, PlaceId p2, const Decomposition& decomp);

struct TruncationResult {
    SubWord sub_word;
    TransferResult transfer;
    std::size_t m1_prime = 0;  // chain index where the ascent starts
    std::size_t m2 = 0;
    std::size_t m3_prime = 0;  // chain index where the descent ends
    Weight w1 = 0;             // weight of the removed adders
    Weight w2 = 0;             // weight of the removed removers
};

// Chain indices refer to the markings M0 = chain[0], ..., chain[|seq|].
TruncationResult truncate(const PetriNet& net, const FiringSequence& seq, const Marking& m0,
                          PlaceId p1, PlaceId p2, Tokens e, std::size_t idx1, std::size_t idx2,
                          std::size_t idx3, const Decomposition& decomp);

struct TruncationCheck {
    bool zero_effect = false;     // sub-word effect on p1 is 0
    bool peak_decreased = false;  // p1 at M2 strictly smaller after transfer
    bool nonnegative = false;     // transferred sequence keeps p1 >= 0
    bool enabled = false;         // transferred sequence replays strictly

    bool all() const { return zero_effect && peak_decreased && nonnegative; }
};

// Replays the original and transferred sequences and evaluates the three
// conclusions of the truncation construction.
TruncationCheck check_truncation(const PetriNet& net, const FiringSequence& seq, const Marking& m0,
                                 PlaceId p1, const TruncationResult& r);

struct ReduceResult {
    FiringSequence sequence;
    bool within_cap = false;  // every independent place <= cap throughout
    std::size_t truncations = 0;
    std::string reason;       // set when within_cap is false
};

ReduceResult reduce_peaks(const PetriNet& net, const FiringSequence& seq, const Marking& m0,
                          const Decomposition& decomp, Tokens cap);

}  // namespace pnvc
