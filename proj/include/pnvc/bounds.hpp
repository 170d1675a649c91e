#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pnvc/net.hpp"

namespace pnvc {

using BigInt = boost::multiprecision::cpp_int;

// Exact natural when it fits under 2^4096, otherwise only its log2.
class BoundValue {
public:
    static constexpr unsigned kMaterializationBits = 4096;

    BoundValue() : exact_(BigInt(0)), log2_(-HUGE_VAL) {}
    BoundValue(std::uint64_t v) : BoundValue(of(BigInt(v))) {}  // NOLINT: implicit by design

    static BoundValue of(const BigInt& v);
    static BoundValue from_log2(double log2);

    bool materialized() const noexcept { return exact_.has_value(); }
    const std::optional<BigInt>& exact() const noexcept { return exact_; }
    double log2() const noexcept { return log2_; }
    bool is_zero() const { return exact_ && *exact_ == 0; }

    // Decimal string, or "2^<log2>" when not materialized.
    std::string to_string() const;
    // Saturates at UINT64_MAX.
    std::uint64_t saturated_u64() const;

private:
    std::optional<BigInt> exact_;
    double log2_;
};

double log2_of(const BigInt& v);

BoundValue operator+(const BoundValue& a, const BoundValue& b);
BoundValue operator*(const BoundValue& a, const BoundValue& b);
BoundValue pow(const BoundValue& base, const BigInt& exponent);

// Exact when both sides are materialized, log space otherwise.
bool operator<=(const BoundValue& a, const BoundValue& b);
bool operator<(const BoundValue& a, const BoundValue& b);
inline bool operator>=(const BoundValue& a, const BoundValue& b) { return b <= a; }
const BoundValue& max(const BoundValue& a, const BoundValue& b);

struct BoundParams {
    std::uint64_t m = 1;
    std::uint64_t W = 1;
    std::uint64_t k_prime = 0;
    BigInt R = 0;
    BigInt U_prime = 0;
    // Unpinned existential constants; reported with every result.
    std::uint64_t c_prime = 2;
    std::uint64_t d = 2;

    BigInt R_prime() const;  // R + W + W^2 + W^3
    BigInt h() const;        // c' k'^3

    // The two readings of U' used by the self-covering bounds.
    static BigInt u_prime_short_scs(const BigInt& U, std::uint64_t W);  // U + W + W^2 + W^3
    static BigInt u_prime_theorem(const BigInt& U, std::uint64_t W);    // U + W^2 + W^3
};

// Recurrence value first; closed form absent when h < 2.
struct DualBound {
    BoundValue recurrence;
    std::optional<BoundValue> closed;
};

// l(0) = mR, l(i+1) = R'^m (W l(i) + R)^(i+1) + l(i).
BoundValue cover_bound_rec(std::uint64_t i, const BoundParams& p);
// (2 m W R R')^(m (i+1)!).
BoundValue cover_bound_closed(std::uint64_t i, const BoundParams& p);
// Same with R given as a possibly unmaterialized bound.
BoundValue cover_bound_closed(std::uint64_t i, std::uint64_t m, std::uint64_t W, const BoundValue& R);

DualBound scs_bound(std::uint64_t i, std::uint64_t j, const BoundParams& p);
DualBound pump_bound(std::uint64_t i, std::uint64_t j, const BoundParams& p);

struct BoundFunction {
    // f[level][place], levels 0..D-1.
    std::vector<std::vector<BoundValue>> f;
    // l'(f(level)) for every level; a child at tree height `level` is searched
    // up to ell_prime[level] steps.
    std::vector<BoundValue> ell_prime;
};

// ratios[i] is ratio(i); needs D >= 1 and ratios.size() == D.
BoundFunction ef_bound_fn(std::size_t D, const std::vector<std::uint64_t>& ratios,
                          const PetriNet& net, const Marking& m0, std::uint64_t k_prime);

}  // namespace pnvc
