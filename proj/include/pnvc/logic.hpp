#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnvc/bounds.hpp"
#include "pnvc/deciders.hpp"
#include "pnvc/net.hpp"

namespace pnvc {

// Kleene three-valued truth.
enum class Truth { False, True, Unknown };
const char* to_string(Truth t);
Truth truth_not(Truth a);
Truth truth_and(Truth a, Truth b);
Truth truth_or(Truth a, Truth b);
inline Truth truth_of(bool b) { return b ? Truth::True : Truth::False; }

struct Term {
    std::vector<Tokens> coeffs;  // per place, natural

    std::vector<PlaceId> support() const;
    friend bool operator==(const Term&, const Term&) = default;
};

struct Atom {
    Term term;
    Tokens c = 0;

    friend bool operator==(const Atom&, const Atom&) = default;
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { Atom, Bounded, Not, And, Or, EF };
    Kind kind = Kind::Atom;
    Atom atom;                 // Kind::Atom
    std::vector<Term> terms;   // Kind::Bounded: {t1, ..., tr} < omega
    std::vector<FormulaPtr> kids;

    bool is_kappa() const;  // τ>=c, ∧, ∨, EF only
    bool is_beta() const;   // bounded atoms under ¬, ∨, ∧
    std::size_t ef_depth() const;
};

// Syntax: `EF( ... )`, `&&`, `||`, `!`, `2*p1 + p2 >= 3`,
// `{p1 + p2, p3} < omega`. Precedence ! > && > ||.
FormulaPtr parse_formula(std::string_view text, const PetriNet& net);
std::string to_string(const Formula& f, const PetriNet& net);

Tokens eval_term(const Term& t, const Marking& m);
bool eval_atom(const Atom& a, const Marking& m);
// max ceil(c / L(p)) over the support.
std::uint64_t ratio(const Atom& a);

// γ ∧ EF(κ1) ∧ ... ∧ EF(κr) with the children already resolved.
struct ObligationTree {
    std::vector<Atom> content;
    std::vector<ObligationTree> children;

    std::size_t depth() const;  // D: number of levels
    // ratio(i) for i = 0..D-1 (max over contents at height i, 0 if none).
    std::vector<std::uint64_t> ratios() const;
};

// Streams every disjunct resolution, left disjunct first, depth first.
// The visitor returns false to stop. Returns false if stopped.
bool for_each_obligation_tree(const Formula& kappa, const std::function<bool(const ObligationTree&)>& visit);
std::vector<ObligationTree> obligation_trees(const Formula& kappa, std::size_t limit = 100'000);

struct CheckOptions {
    std::size_t max_depth = 6;          // refuse larger D
    std::size_t state_cap = 20'000;     // per child search
    std::size_t node_cap = 50'000;      // ω trees and coverability sets
    std::uint64_t fallback_depth = 10'000;
    std::optional<std::uint64_t> k_prime;  // computed from the net when absent
};

struct KappaReport {
    Truth verdict = Truth::Unknown;
    std::size_t trees_checked = 0;
    std::size_t depth = 0;
    std::optional<BoundFunction> bound;  // f of the last tree examined
    bool used_omega_fallback = false;
};

KappaReport check_kappa(const PetriNet& net, const Marking& m0, const Formula& kappa, const CheckOptions& opts = {});

struct BetaReport {
    Truth verdict = Truth::Unknown;
    bool tree_complete = false;
    std::size_t km_nodes = 0;
};

BetaReport check_beta(const PetriNet& net, const Marking& m0, const Formula& beta, const CheckOptions& opts = {});
// Atom {τ1..τr} < ω against a given tree.
Truth beta_atom_verdict(const KarpMillerTree& tree, const std::vector<Term>& terms);

struct PhiReport {
    Truth verdict = Truth::Unknown;
    std::vector<std::string> notes;
};

PhiReport check_phi(const PetriNet& net, const Marking& m0, const Formula& phi, const CheckOptions& opts = {});

// Sets X with one support place from every term.
std::vector<PlaceSet> candidate_sets(const std::vector<Term>& terms, std::size_t num_places);
bool km_pumps_all(const KarpMillerTree& tree, const PlaceSet& x);

struct WeakPumpingCrosscheck {
    std::optional<PumpingDecomposition> weak;
    std::optional<FiringSequence> strengthened;
    bool strengthened_valid = false;  // replays enabled and pumps X
    bool exhaustive = false;
};

WeakPumpingCrosscheck find_weak_pumping_crosscheck(const PetriNet& net, const Marking& m0, const PlaceSet& x,
                                                   std::size_t max_len, std::size_t state_cap = 500'000);

// g(α) = min(witness, f(level)) componentwise.
Marking guess_function(const Marking& witness, const std::vector<BoundValue>& f_level);

}  // namespace pnvc
