#include "pnvc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pnvc {

namespace mp = boost::multiprecision;

double log2_of(const BigInt& v) {
    if (v <= 0) return -HUGE_VAL;
    const std::size_t bits = mp::msb(v) + 1;
    if (bits <= 1000) return std::log2(v.convert_to<double>());
    const std::size_t shift = bits - 64;
    const BigInt top = v >> shift;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

BoundValue BoundValue::of(const BigInt& v) {
    BoundValue b;
    b.log2_ = log2_of(v);
    if (v == 0 || mp::msb(v) < kMaterializationBits) {
        b.exact_ = v;
    } else {
        b.exact_.reset();
    }
    return b;
}

BoundValue BoundValue::from_log2(double log2) {
    // Only reached for values past the materialization cap.
    BoundValue b;
    b.exact_.reset();
    b.log2_ = log2;
    return b;
}

std::string BoundValue::to_string() const {
    if (exact_) return exact_->str();
    std::ostringstream os;
    os.precision(12);
    os << "2^" << log2_;
    return os.str();
}

std::uint64_t BoundValue::saturated_u64() const {
    if (!exact_ || *exact_ > std::numeric_limits<std::uint64_t>::max())
        return std::numeric_limits<std::uint64_t>::max();
    return exact_->convert_to<std::uint64_t>();
}

namespace {

// log2(2^a + 2^b)
double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (std::isinf(b) && b < 0) return a;
    return a + std::log2(1.0 + std::exp2(b - a));
}

}  // namespace

BoundValue operator+(const BoundValue& a, const BoundValue& b) {
    if (a.materialized() && b.materialized()) return BoundValue::of(*a.exact() + *b.exact());
    return BoundValue::from_log2(log_add(a.log2(), b.log2()));
}

BoundValue operator*(const BoundValue& a, const BoundValue& b) {
    if (a.is_zero() || b.is_zero()) return BoundValue(0);
    if (a.materialized() && b.materialized()) return BoundValue::of(*a.exact() * *b.exact());
    return BoundValue::from_log2(a.log2() + b.log2());
}

BoundValue pow(const BoundValue& base, const BigInt& exponent) {
    if (exponent == 0) return BoundValue(1);
    if (base.is_zero()) return BoundValue(0);
    if (base.materialized() && *base.exact() == 1) return BoundValue(1);
    const double est = exponent.convert_to<double>() * base.log2();
    if (base.materialized() && est <= BoundValue::kMaterializationBits + 2)
        return BoundValue::of(mp::pow(*base.exact(), exponent.convert_to<unsigned>()));
    return BoundValue::from_log2(est);
}

bool operator<=(const BoundValue& a, const BoundValue& b) {
    if (a.materialized() && b.materialized()) return *a.exact() <= *b.exact();
    if (a.materialized()) return true;   // b is past the cap
    if (b.materialized()) return false;
    return a.log2() <= b.log2();
}

bool operator<(const BoundValue& a, const BoundValue& b) {
    if (a.materialized() && b.materialized()) return *a.exact() < *b.exact();
    if (a.materialized()) return true;
    if (b.materialized()) return false;
    return a.log2() < b.log2();
}

const BoundValue& max(const BoundValue& a, const BoundValue& b) { return a < b ? b : a; }

BigInt BoundParams::R_prime() const {
    const BigInt w(W);
    return R + w + w * w + w * w * w;
}

BigInt BoundParams::h() const {
    const BigInt k(k_prime);
    return BigInt(c_prime) * k * k * k;
}

BigInt BoundParams::u_prime_short_scs(const BigInt& U, std::uint64_t W) {
    const BigInt w(W);
    return U + w + w * w + w * w * w;
}

BigInt BoundParams::u_prime_theorem(const BigInt& U, std::uint64_t W) {
    const BigInt w(W);
    return U + w * w + w * w * w;
}

BoundValue cover_bound_rec(std::uint64_t i, const BoundParams& p) {
    const BoundValue R = BoundValue::of(p.R);
    const BoundValue W = BoundValue(p.W);
    const BoundValue rm = pow(BoundValue::of(p.R_prime()), BigInt(p.m));
    BoundValue ell = BoundValue(p.m) * R;
    for (std::uint64_t s = 0; s < i; ++s) ell = rm * pow(W * ell + R, BigInt(s + 1)) + ell;
    return ell;
}

BoundValue cover_bound_closed(std::uint64_t i, std::uint64_t m, std::uint64_t W, const BoundValue& R) {
    BigInt fact = 1;
    for (std::uint64_t s = 2; s <= i + 1; ++s) fact *= s;
    const BigInt w(W);
    const BoundValue r_prime = R + BoundValue::of(w + w * w + w * w * w);
    const BoundValue base = BoundValue(2 * m * W) * R * r_prime;
    return pow(base, BigInt(m) * fact);
}

BoundValue cover_bound_closed(std::uint64_t i, const BoundParams& p) {
    return cover_bound_closed(i, p.m, p.W, BoundValue::of(p.R));
}

namespace {

// max(1, U' + jW)
BigInt clamped_base(const BoundParams& p, std::uint64_t j) {
    const BigInt v = p.U_prime + BigInt(j) * p.W;
    return v < 1 ? BigInt(1) : v;
}

BigInt m4c(const BoundParams& p) {
    const BigInt m(p.m);
    return BigInt(p.c_prime) * m * m * m * m;
}

BoundValue scs_rec(std::uint64_t i, std::uint64_t j, const BoundParams& p) {
    const BigInt base = clamped_base(p, j);
    if (i == 0) return pow(BoundValue::of(base), mp::pow(BigInt(p.m), static_cast<unsigned>(p.d)));
    const BoundValue inner = BoundValue(2 * p.W) * scs_rec(i - 1, j + 1, p);
    return BoundValue(8 * p.k_prime) * pow(inner, p.h()) * pow(BoundValue::of(base * p.W), m4c(p));
}

BoundValue pump_rec(std::uint64_t i, std::uint64_t j, const BoundParams& p) {
    const BigInt base = clamped_base(p, j);
    if (i == 0)
        return BoundValue(8 * p.m * p.k_prime) * pow(BoundValue::of(2 * base * p.W), m4c(p));
    const BoundValue inner = BoundValue(2 * p.W) * pump_rec(i - 1, j + 1, p);
    return BoundValue(10 * p.m * p.k_prime) * pow(inner, p.h()) * pow(BoundValue::of(base * p.W), m4c(p));
}

}  // namespace

DualBound scs_bound(std::uint64_t i, std::uint64_t j, const BoundParams& p) {
    DualBound out{scs_rec(i, j, p), std::nullopt};
    const BigInt h = p.h();
    if (h >= 2) {
        const BigInt hi = mp::pow(h, static_cast<unsigned>(i));
        const BigInt poly1 = (h + m4c(p)) * (hi - 1);
        const BigInt poly2 = hi * mp::pow(BigInt(p.m), static_cast<unsigned>(p.d)) + m4c(p) * (hi - 1);
        out.closed = pow(BoundValue(8 * p.k_prime), mp::pow(1 + h, static_cast<unsigned>(i))) *
                     pow(BoundValue(2 * p.W), poly1) *
                     pow(BoundValue::of(clamped_base(p, j + i)), poly2);
    }
    return out;
}

DualBound pump_bound(std::uint64_t i, std::uint64_t j, const BoundParams& p) {
    DualBound out{pump_rec(i, j, p), std::nullopt};
    const BigInt h = p.h();
    if (h >= 2) {
        const BigInt hi = mp::pow(h, static_cast<unsigned>(i));
        const BigInt poly1 = hi * m4c(p) + (h + m4c(p)) * (hi - 1);
        const BigInt poly2 = hi * m4c(p) + m4c(p) * (hi - 1);
        out.closed = pow(BoundValue(10 * p.m * p.k_prime), mp::pow(1 + h, static_cast<unsigned>(i))) *
                     pow(BoundValue(2 * p.W), poly1) *
                     pow(BoundValue::of(clamped_base(p, j + i)), poly2);
    }
    return out;
}

BoundFunction ef_bound_fn(std::size_t D, const std::vector<std::uint64_t>& ratios,
                          const PetriNet& net, const Marking& m0, std::uint64_t k_prime) {
    if (D == 0) throw Error(ErrorCode::DepthZero, "bound function needs depth D >= 1");
    if (ratios.size() != D) throw Error(ErrorCode::InvalidArgument, "need one ratio per tree level");
    const std::size_t m = net.num_places();
    const std::uint64_t W = net.max_weight();
    BoundFunction out;
    out.f.assign(D, std::vector<BoundValue>(m));
    out.ell_prime.assign(D, BoundValue(0));
    auto level_max = [&](std::size_t level) {
        BoundValue r(0);
        for (const auto& v : out.f[level]) r = max(r, v);
        return r;
    };
    auto ell = [&](std::size_t level) { return cover_bound_closed(k_prime, m, W, level_max(level)); };
    if (D >= 2) {
        for (std::size_t p = 0; p < m; ++p) out.f[D - 1][p] = BoundValue(ratios[D - 1]);
        out.ell_prime[D - 1] = ell(D - 1);
        for (std::size_t level = D - 1; level-- > 1;) {
            const BoundValue step = BoundValue(W) * out.ell_prime[level + 1];
            for (std::size_t p = 0; p < m; ++p)
                out.f[level][p] = max(BoundValue(ratios[level]), step + out.f[level + 1][p]);
            out.ell_prime[level] = ell(level);
        }
    }
    for (std::size_t p = 0; p < m; ++p) out.f[0][p] = BoundValue(static_cast<std::uint64_t>(m0[p]));
    out.ell_prime[0] = ell(0);
    return out;
}

}  // namespace pnvc
