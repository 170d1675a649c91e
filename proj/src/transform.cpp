#include "pnvc/transform.hpp"

#include <algorithm>
#include <map>

namespace pnvc {

void validate_sub_word(const FiringSequence& host, const SubWord& sw) {
    for (std::size_t i = 0; i < sw.positions.size(); ++i) {
        if (sw.positions[i] >= host.size())
            throw Error(ErrorCode::InvalidArgument, "sub-word position " + std::to_string(sw.positions[i]) +
                                                        " outside host of length " + std::to_string(host.size()));
        if (i > 0 && sw.positions[i] <= sw.positions[i - 1])
            throw Error(ErrorCode::InvalidArgument, "sub-word positions must be strictly increasing");
    }
}

bool is_safe_for_transfer(const PetriNet& net, const FiringSequence& seq, const SubWord& sw, PlaceId p) {
    validate_sub_word(seq, sw);
    Tokens sum = 0;
    bool safe = true;
    for (std::size_t pos : sw.positions) {
        const TransitionId t = seq[pos];
        if (!net.touches(p, t))
            throw Error(ErrorCode::PositionWithoutArc, "transition '" + net.transition_name(t) + "' at position " +
                                                           std::to_string(pos) + " has no arc on '" +
                                                           net.place_name(p) + "'");
        sum += net.delta(p, t);
        if (sum < 0) safe = false;
    }
    return safe;
}

TransferResult transfer(const PetriNet& net, const FiringSequence& seq, const SubWord& sw,
                        PlaceId p1, PlaceId p2, const Decomposition& decomp) {
    validate_sub_word(seq, sw);
    if (!decomp.same_variety(p1, p2))
        throw Error(ErrorCode::VarietyMismatch, "places '" + net.place_name(p1) + "' and '" +
                                                    net.place_name(p2) + "' have different varieties");
    TransferResult out{seq, {}};
    const auto& assign = decomp.types.assignment;
    for (std::size_t pos : sw.positions) {
        const TransitionId t = seq[pos];
        if (!net.touches(p1, t))
            throw Error(ErrorCode::ArcMissing, "transition '" + net.transition_name(t) + "' has no arc on '" +
                                                   net.place_name(p1) + "'");
        const Tokens w = net.delta(p1, t);
        std::optional<TransitionId> chosen;
        for (TransitionId u = 0; u < net.num_transitions() && !chosen; ++u) {
            if (assign[u] == assign[t] && net.touches(p2, u) && net.delta(p2, u) == w) chosen = u;
        }
        if (!chosen)
            throw Error(ErrorCode::ArcMissing, "no transition of the type of '" + net.transition_name(t) +
                                                   "' has weight " + std::to_string(w) + " on '" +
                                                   net.place_name(p2) + "'");
        out.new_sequence[pos] = *chosen;
        out.replaced.push_back({pos, t, *chosen});
    }
    return out;
}

namespace {

std::vector<Tokens> trajectory(const PetriNet& net, const Marking& m0, const FiringSequence& seq, PlaceId p) {
    std::vector<Tokens> out;
    out.reserve(seq.size() + 1);
    replay(net, m0, seq, [&](std::size_t, const Marking& m) { out.push_back(m[p]); });
    return out;
}

[[noreturn]] void unmet(TruncationHypothesis h, const std::string& detail) {
    throw HypothesesUnmetError(h, std::string("truncation hypothesis violated (") + to_string(h) + "): " + detail);
}

}  // namespace

TruncationResult truncate(const PetriNet& net, const FiringSequence& seq, const Marking& m0,
                          PlaceId p1, PlaceId p2, Tokens e, std::size_t idx1, std::size_t idx2,
                          std::size_t idx3, const Decomposition& decomp) {
    if (p1 == p2) throw Error(ErrorCode::InvalidArgument, "truncation needs two distinct places");
    if (decomp.in_cover(p1) || decomp.in_cover(p2) || !decomp.same_variety(p1, p2))
        unmet(TruncationHypothesis::VarietyEqual, "places must be off the cover with equal varieties");
    if (!(idx1 < idx2 && idx2 < idx3 && idx3 <= seq.size()))
        unmet(TruncationHypothesis::IndexOrder, "got " + std::to_string(idx1) + ", " + std::to_string(idx2) +
                                                    ", " + std::to_string(idx3));
    std::vector<Tokens> val;
    try {
        val = trajectory(net, m0, seq, p1);
    } catch (const NotEnabledError& err) {
        unmet(TruncationHypothesis::Enabled, err.what());
    }
    const Tokens W = net.max_weight();
    if (val[idx1] != e) unmet(TruncationHypothesis::StartValue, "M1(p1) = " + std::to_string(val[idx1]));
    if (val[idx3] > e) unmet(TruncationHypothesis::EndValue, "M3(p1) = " + std::to_string(val[idx3]));
    if (val[idx2] < e + W * W + W * W * W)
        unmet(TruncationHypothesis::PeakValue, "M2(p1) = " + std::to_string(val[idx2]));
    for (std::size_t i = idx1; i <= idx3; ++i)
        if (val[i] > val[idx2]) unmet(TruncationHypothesis::PeakMaximal, "chain index " + std::to_string(i) + " is higher");

    const Tokens low = e + W * W;
    TruncationResult r;
    r.m2 = idx2;
    r.m1_prime = idx1;
    for (std::size_t i = idx1; i < idx2; ++i)
        if (val[i] <= low) r.m1_prime = i;
    r.m3_prime = idx3;
    for (std::size_t i = idx2 + 1; i <= idx3; ++i) {
        if (val[i] <= low) {
            r.m3_prime = i;
            break;
        }
    }
    // Occurrences grouped by weight: adders in the ascent, removers in the descent.
    std::vector<std::vector<std::size_t>> adders(W + 1), removers(W + 1);
    for (std::size_t pos = r.m1_prime; pos < r.m2; ++pos) {
        const Tokens d = net.delta(p1, seq[pos]);
        if (d > 0) adders[d].push_back(pos);
    }
    for (std::size_t pos = r.m2; pos < r.m3_prime; ++pos) {
        const Tokens d = net.delta(p1, seq[pos]);
        if (d < 0) removers[-d].push_back(pos);
    }
    for (Tokens w = 1; w <= W && !r.w1; ++w)
        if (static_cast<Tokens>(adders[w].size()) >= W) r.w1 = static_cast<Weight>(w);
    for (Tokens w = 1; w <= W && !r.w2; ++w)
        if (static_cast<Tokens>(removers[w].size()) >= W) r.w2 = static_cast<Weight>(w);
    if (!r.w1 || !r.w2)
        throw Error(ErrorCode::InvalidArgument, "internal: pigeonhole weights not found");
    for (std::size_t i = 0; i < r.w2; ++i) r.sub_word.positions.push_back(adders[r.w1][i]);
    for (std::size_t i = 0; i < r.w1; ++i) r.sub_word.positions.push_back(removers[r.w2][i]);
    r.transfer = transfer(net, seq, r.sub_word, p1, p2, decomp);
    return r;
}

TruncationCheck check_truncation(const PetriNet& net, const FiringSequence& seq, const Marking& m0,
                                 PlaceId p1, const TruncationResult& r) {
    TruncationCheck c;
    Tokens eff = 0;
    for (std::size_t pos : r.sub_word.positions) eff += net.delta(p1, seq[pos]);
    c.zero_effect = eff == 0;
    const auto before = trajectory(net, m0, seq, p1);
    // Relaxed replay: conclusion 3 is about p1 only.
    const auto relaxed = fire_relaxed(net, RelaxedMarking(m0), r.transfer.new_sequence, PlaceSet(net.num_places()));
    c.peak_decreased = relaxed.chain[r.m2][p1] < before[r.m2];
    c.nonnegative = true;
    for (const auto& mk : relaxed.chain)
        if (mk[p1] < 0) c.nonnegative = false;
    try {
        fire_sequence(net, m0, r.transfer.new_sequence, false);
        c.enabled = true;
    } catch (const NotEnabledError&) {
        c.enabled = false;
    }
    return c;
}

ReduceResult reduce_peaks(const PetriNet& net, const FiringSequence& seq, const Marking& m0,
                          const Decomposition& decomp, Tokens cap) {
    ReduceResult out{seq, false, 0, {}};
    const Tokens W = net.max_weight();
    const Tokens e_star = cap + 1 - W * W - W * W * W;
    const auto indep = decomp.independent.members();
    // Each truncation lowers the summed independent-place trajectory, so the
    // loop terminates; the guard only protects against bugs.
    const std::size_t guard = 10'000'000;
    while (out.truncations < guard) {
        const auto chain = fire_sequence(net, m0, out.sequence).chain;
        std::optional<std::size_t> v;
        PlaceId p1 = 0;
        for (std::size_t i = 0; i < chain.size() && !v; ++i) {
            for (PlaceId p : indep) {
                if (chain[i][p] > cap) {
                    v = i;
                    p1 = p;
                    break;
                }
            }
        }
        if (!v) {
            out.within_cap = true;
            return out;
        }
        if (e_star < 0) {
            out.reason = "cap " + std::to_string(cap) + " is below W^2 + W^3 - 1";
            return out;
        }
        std::optional<std::size_t> a;
        for (std::size_t i = 0; i < *v; ++i)
            if (chain[i][p1] <= e_star) a = i;
        if (!a) {
            out.reason = "place '" + net.place_name(p1) + "' starts above the truncation level";
            return out;
        }
        const Tokens e = chain[*a][p1];
        std::optional<std::size_t> b;
        for (std::size_t i = *v + 1; i < chain.size() && !b; ++i)
            if (chain[i][p1] <= e) b = i;
        if (!b) {
            out.reason = "place '" + net.place_name(p1) + "' never returns to " + std::to_string(e) + " tokens";
            return out;
        }
        std::size_t peak = *a + 1;
        for (std::size_t i = *a + 1; i < *b; ++i)
            if (chain[i][p1] > chain[peak][p1]) peak = i;
        const PlaceId p2 = decomp.representative_of(p1);
        const auto r = truncate(net, out.sequence, m0, p1, p2, e, *a, peak, *b, decomp);
        out.sequence = r.transfer.new_sequence;
        ++out.truncations;
    }
    out.reason = "iteration guard reached";
    return out;
}

}  // namespace pnvc
