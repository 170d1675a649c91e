#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "pnvc/net.hpp"

namespace pnvc {

// Deterministic across platforms: the standard distributions are
// implementation-defined, so draws go through these helpers.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    // Uniform in [lo, hi].
    std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);
    bool chance(double p);
    template <class T>
    const T& pick(const std::vector<T>& v) { return v.at(uniform(0, v.size() - 1)); }
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform(0, i - 1)]);
    }

private:
    std::mt19937_64 eng_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

struct GenSpec {
    std::size_t places = 4;
    std::size_t transitions = 5;
    Weight max_weight = 2;
    Tokens max_initial = 2;
    std::optional<std::size_t> target_vc;
    double pumping_bias = 0.3;
};

struct GeneratedNet {
    PetriNet net;
    Marking m0;
    std::optional<PlaceSet> planted_cover;
    bool pumping_gadget = false;
};

// Throws InfeasibleSpec (e.g. target_vc = 0 while transitions > 0, since
// every transition needs an input and an output arc).
GeneratedNet gen_net(const GenSpec& spec, std::uint64_t seed);

}  // namespace pnvc
