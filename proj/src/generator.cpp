#include "pnvc/generator.hpp"

#include <algorithm>

namespace pnvc {

std::uint64_t Rng::uniform(std::uint64_t lo, std::uint64_t hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return next();
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + x % span;
}

bool Rng::chance(double p) { return static_cast<double>(next() >> 11) * 0x1.0p-53 < p; }

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

std::vector<PlaceId> sample(Rng& rng, std::vector<PlaceId> pool, std::size_t n) {
    rng.shuffle(pool);
    pool.resize(std::min(n, pool.size()));
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

GeneratedNet gen_net(const GenSpec& spec, std::uint64_t seed) {
    const std::size_t m = spec.places;
    if (m == 0) throw Error(ErrorCode::InfeasibleSpec, "a net needs at least one place");
    if (spec.max_weight < 1) throw Error(ErrorCode::InfeasibleSpec, "max_weight must be >= 1");
    if (spec.target_vc) {
        if (*spec.target_vc > m) throw Error(ErrorCode::InfeasibleSpec, "target_vc exceeds the number of places");
        if (*spec.target_vc == 0 && spec.transitions > 0)
            throw Error(ErrorCode::InfeasibleSpec,
                        "target_vc = 0 leaves every transition a self-loop on a single uncovered place");
    }

    Rng rng(seed);
    const bool gadget = spec.transitions > 0 && rng.chance(spec.pumping_bias);

    std::vector<PlaceId> all(m);
    for (PlaceId p = 0; p < m; ++p) all[p] = p;
    std::vector<PlaceId> cover, outside;
    if (spec.target_vc) {
        cover = sample(rng, all, *spec.target_vc);
        for (PlaceId p : all)
            if (!std::binary_search(cover.begin(), cover.end(), p)) outside.push_back(p);
    }

    std::vector<std::string> places, transitions;
    for (std::size_t p = 0; p < m; ++p) places.push_back("p" + std::to_string(p + 1));
    for (std::size_t t = 0; t < spec.transitions; ++t) transitions.push_back("t" + std::to_string(t + 1));
    std::vector<Weight> pre(m * spec.transitions, 0), post(m * spec.transitions, 0);
    auto weight = [&]() { return static_cast<Weight>(rng.uniform(1, spec.max_weight)); };
    auto arc = [&](std::vector<Weight>& mat, PlaceId p, std::size_t t) { mat[p * spec.transitions + t] = weight(); };

    for (std::size_t t = 0; t < spec.transitions; ++t) {
        if (!spec.target_vc) {
            for (PlaceId p : sample(rng, all, rng.uniform(1, std::min<std::size_t>(3, m)))) arc(pre, p, t);
            for (PlaceId p : sample(rng, all, rng.uniform(1, std::min<std::size_t>(3, m)))) arc(post, p, t);
            continue;
        }
        // At most one uncovered place per transition, and never on both sides.
        std::optional<PlaceId> q;
        if (!outside.empty() && rng.chance(0.6)) q = rng.pick(outside);
        std::vector<PlaceId> in_pool = cover, out_pool = cover;
        int q_side = q ? static_cast<int>(rng.uniform(0, 1)) : -1;
        if (q_side == 0) in_pool.push_back(*q);
        if (q_side == 1) out_pool.push_back(*q);
        auto in = sample(rng, in_pool, rng.uniform(1, std::min<std::size_t>(3, in_pool.size())));
        auto out = sample(rng, out_pool, rng.uniform(1, std::min<std::size_t>(3, out_pool.size())));
        // Make sure the chosen uncovered place is actually attached.
        if (q_side == 0 && !std::binary_search(in.begin(), in.end(), *q)) in.back() = *q;
        if (q_side == 1 && !std::binary_search(out.begin(), out.end(), *q)) out.back() = *q;
        for (PlaceId p : in) arc(pre, p, t);
        for (PlaceId p : out) arc(post, p, t);
    }

    std::vector<Tokens> tokens(m);
    for (auto& v : tokens) v = static_cast<Tokens>(rng.uniform(0, static_cast<std::uint64_t>(spec.max_initial)));

    if (gadget) {
        // Last transition becomes p -> p + r on a marked place p, which pumps r.
        const std::size_t t = spec.transitions - 1;
        const PlaceId p = spec.target_vc ? rng.pick(cover) : rng.pick(all);
        std::vector<PlaceId> others;
        for (PlaceId r : all)
            if (r != p) others.push_back(r);
        for (PlaceId r = 0; r < m; ++r) pre[r * spec.transitions + t] = post[r * spec.transitions + t] = 0;
        pre[p * spec.transitions + t] = 1;
        if (!others.empty()) {
            post[p * spec.transitions + t] = 1;
            post[rng.pick(others) * spec.transitions + t] = 1;
        } else {
            post[p * spec.transitions + t] = std::min<Weight>(2, spec.max_weight);
        }
        tokens[p] = std::max<Tokens>(tokens[p], 1);
    }

    GeneratedNet out{PetriNet("gen-" + std::to_string(seed), places, transitions, pre, post), Marking(tokens),
                     std::nullopt, gadget};
    if (spec.target_vc) {
        PlaceSet s(m);
        for (PlaceId p : cover) s.insert(p);
        out.planted_cover = s;
    }
    return out;
}

}  // namespace pnvc
