#pragma once

#include <string>

#include "pnvc/net.hpp"

namespace pnvc::test {

inline std::string fixture(const std::string& name) { return std::string(PNVC_FIXTURE_DIR) + "/" + name; }

inline ParsedNet net_a() { return load_net_file(fixture("net_a.pn")); }
inline ParsedNet net_b() { return load_net_file(fixture("net_b.pn")); }

inline Marking mk(std::initializer_list<Tokens> v) { return Marking(std::vector<Tokens>(v)); }

inline FiringSequence seq(const PetriNet& net, std::initializer_list<const char*> names) {
    FiringSequence s;
    for (const char* n : names) s.push_back(*net.find_transition(n));
    return s;
}

inline FiringSequence repeat(const FiringSequence& s, std::size_t n) {
    FiringSequence out;
    for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), s.begin(), s.end());
    return out;
}

}  // namespace pnvc::test
