#include "pnvc/logic.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "pnvc/structure.hpp"

namespace pnvc {

const char* to_string(Truth t) {
    switch (t) {
        case Truth::False: return "false";
        case Truth::True: return "true";
        case Truth::Unknown: return "inconclusive";
    }
    return "?";
}

Truth truth_not(Truth a) {
    if (a == Truth::Unknown) return a;
    return a == Truth::True ? Truth::False : Truth::True;
}

Truth truth_and(Truth a, Truth b) {
    if (a == Truth::False || b == Truth::False) return Truth::False;
    if (a == Truth::True && b == Truth::True) return Truth::True;
    return Truth::Unknown;
}

Truth truth_or(Truth a, Truth b) {
    if (a == Truth::True || b == Truth::True) return Truth::True;
    if (a == Truth::False && b == Truth::False) return Truth::False;
    return Truth::Unknown;
}

std::vector<PlaceId> Term::support() const {
    std::vector<PlaceId> out;
    for (PlaceId p = 0; p < coeffs.size(); ++p)
        if (coeffs[p] != 0) out.push_back(p);
    return out;
}

bool Formula::is_kappa() const {
    switch (kind) {
        case Kind::Atom: return true;
        case Kind::EF: return kids[0]->is_kappa();
        case Kind::And:
        case Kind::Or: return kids[0]->is_kappa() && kids[1]->is_kappa();
        default: return false;
    }
}

bool Formula::is_beta() const {
    switch (kind) {
        case Kind::Bounded: return true;
        case Kind::Not: return kids[0]->is_beta();
        case Kind::And:
        case Kind::Or: return kids[0]->is_beta() && kids[1]->is_beta();
        default: return false;
    }
}

std::size_t Formula::ef_depth() const {
    std::size_t d = 0;
    for (const auto& k : kids) d = std::max(d, k->ef_depth());
    return kind == Kind::EF ? d + 1 : d;
}

// ---------------------------------------------------------------- parser

namespace {

enum class Tok { Ident, Number, Geq, Plus, Star, And, Or, Not, LParen, RParen, LBrace, RBrace, Comma, Less, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t col;
};

[[noreturn]] void syntax(std::size_t col, const std::string& msg) {
    throw Error(ErrorCode::Syntax, "formula column " + std::to_string(col + 1) + ": " + msg);
}

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\''; };
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t col = i;
        auto two = [&](char a, char b) { return c == a && i + 1 < s.size() && s[i + 1] == b; };
        if (two('>', '=')) {
            out.push_back({Tok::Geq, ">=", col});
            i += 2;
        } else if (two('&', '&')) {
            out.push_back({Tok::And, "&&", col});
            i += 2;
        } else if (two('|', '|')) {
            out.push_back({Tok::Or, "||", col});
            i += 2;
        } else if (c == '+' || c == '*' || c == '!' || c == '(' || c == ')' || c == '{' || c == '}' || c == ',' ||
                   c == '<') {
            static const std::string chars = "+*!(){},<";
            static const Tok kinds[] = {Tok::Plus,   Tok::Star,   Tok::Not,   Tok::LParen, Tok::RParen,
                                        Tok::LBrace, Tok::RBrace, Tok::Comma, Tok::Less};
            out.push_back({kinds[chars.find(c)], std::string(1, c), col});
            ++i;
        } else if (c == '-') {
            syntax(col, "constants must be natural numbers");
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            out.push_back({Tok::Number, std::string(s.substr(i, j - i)), col});
            i = j;
        } else if (ident_char(c)) {
            std::size_t j = i;
            while (j < s.size() && ident_char(s[j])) ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), col});
            i = j;
        } else {
            syntax(col, std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({Tok::End, "", s.size()});
    return out;
}

class Parser {
public:
    Parser(std::vector<Token> toks, const PetriNet& net) : toks_(std::move(toks)), net_(net) {}

    FormulaPtr parse() {
        auto f = disjunction();
        if (peek().kind != Tok::End) syntax(peek().col, "unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    void expect(Tok k, const char* what) {
        if (peek().kind != k) syntax(peek().col, std::string("expected ") + what);
        ++pos_;
    }

    static FormulaPtr binary(Formula::Kind k, FormulaPtr a, FormulaPtr b) {
        auto f = std::make_shared<Formula>();
        f->kind = k;
        f->kids = {std::move(a), std::move(b)};
        return f;
    }

    FormulaPtr disjunction() {
        auto f = conjunction();
        while (peek().kind == Tok::Or) {
            take();
            f = binary(Formula::Kind::Or, f, conjunction());
        }
        return f;
    }

    FormulaPtr conjunction() {
        auto f = unary();
        while (peek().kind == Tok::And) {
            take();
            f = binary(Formula::Kind::And, f, unary());
        }
        return f;
    }

    FormulaPtr unary() {
        const Token& t = peek();
        if (t.kind == Tok::Not) {
            take();
            auto f = std::make_shared<Formula>();
            f->kind = Formula::Kind::Not;
            f->kids = {unary()};
            if (!f->kids[0]->is_beta()) syntax(t.col, "'!' applies only to boundedness formulas");
            return f;
        }
        if (t.kind == Tok::Ident && t.text == "EF") {
            take();
            expect(Tok::LParen, "'(' after EF");
            auto f = std::make_shared<Formula>();
            f->kind = Formula::Kind::EF;
            f->kids = {disjunction()};
            expect(Tok::RParen, "')'");
            if (!f->kids[0]->is_kappa()) syntax(t.col, "EF applies only to formulas built from >=, &&, || and EF");
            return f;
        }
        if (t.kind == Tok::LParen) {
            take();
            auto f = disjunction();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (t.kind == Tok::LBrace) {
            take();
            auto f = std::make_shared<Formula>();
            f->kind = Formula::Kind::Bounded;
            f->terms.push_back(term());
            while (peek().kind == Tok::Comma) {
                take();
                f->terms.push_back(term());
            }
            expect(Tok::RBrace, "'}'");
            expect(Tok::Less, "'<'");
            if (peek().kind != Tok::Ident || peek().text != "omega") syntax(peek().col, "expected 'omega'");
            take();
            return f;
        }
        auto f = std::make_shared<Formula>();
        f->kind = Formula::Kind::Atom;
        f->atom.term = term();
        expect(Tok::Geq, "'>='");
        f->atom.c = number();
        return f;
    }

    Tokens number() {
        const Token& t = peek();
        if (t.kind != Tok::Number) syntax(t.col, "expected a natural number");
        take();
        try {
            return static_cast<Tokens>(std::stoll(t.text));
        } catch (const std::exception&) {
            syntax(t.col, "number out of range");
        }
    }

    Term term() {
        Term out;
        out.coeffs.assign(net_.num_places(), 0);
        const std::size_t col = peek().col;
        do {
            if (peek().kind == Tok::Plus) take();
            Tokens coeff = 1;
            if (peek().kind == Tok::Number) {
                coeff = number();
                expect(Tok::Star, "'*' after coefficient");
            }
            const Token& id = peek();
            if (id.kind != Tok::Ident || id.text == "EF" || id.text == "omega") syntax(id.col, "expected a place");
            take();
            auto p = net_.find_place(id.text);
            if (!p) throw Error(ErrorCode::UnknownIdentifier, "formula references unknown place '" + id.text + "'");
            out.coeffs[*p] = checked_add(out.coeffs[*p], coeff);
        } while (peek().kind == Tok::Plus);
        if (out.support().empty()) syntax(col, "term needs a nonzero coefficient");
        return out;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    const PetriNet& net_;
};

std::string term_text(const Term& t, const PetriNet& net) {
    std::string out;
    for (PlaceId p : t.support()) {
        if (!out.empty()) out += " + ";
        if (t.coeffs[p] != 1) out += std::to_string(t.coeffs[p]) + "*";
        out += net.place_name(p);
    }
    return out;
}

}  // namespace

FormulaPtr parse_formula(std::string_view text, const PetriNet& net) { return Parser(lex(text), net).parse(); }

std::string to_string(const Formula& f, const PetriNet& net) {
    switch (f.kind) {
        case Formula::Kind::Atom: return term_text(f.atom.term, net) + " >= " + std::to_string(f.atom.c);
        case Formula::Kind::Bounded: {
            std::string out = "{";
            for (std::size_t i = 0; i < f.terms.size(); ++i) out += (i ? ", " : "") + term_text(f.terms[i], net);
            return out + "} < omega";
        }
        case Formula::Kind::Not: return "!" + to_string(*f.kids[0], net);
        case Formula::Kind::EF: return "EF(" + to_string(*f.kids[0], net) + ")";
        case Formula::Kind::And: return "(" + to_string(*f.kids[0], net) + " && " + to_string(*f.kids[1], net) + ")";
        case Formula::Kind::Or: return "(" + to_string(*f.kids[0], net) + " || " + to_string(*f.kids[1], net) + ")";
    }
    return "?";
}

Tokens eval_term(const Term& t, const Marking& m) {
    Tokens sum = 0;
    for (PlaceId p = 0; p < t.coeffs.size(); ++p)
        if (t.coeffs[p]) sum = checked_add(sum, checked_mul(t.coeffs[p], m[p]));
    return sum;
}

bool eval_atom(const Atom& a, const Marking& m) { return eval_term(a.term, m) >= a.c; }

std::uint64_t ratio(const Atom& a) {
    std::uint64_t r = 0;
    for (PlaceId p : a.term.support()) {
        const auto l = static_cast<std::uint64_t>(a.term.coeffs[p]);
        const auto c = static_cast<std::uint64_t>(a.c);
        r = std::max(r, (c + l - 1) / l);
    }
    return r;
}

// ---------------------------------------------------------------- obligation trees

std::size_t ObligationTree::depth() const {
    std::size_t d = 0;
    for (const auto& c : children) d = std::max(d, c.depth());
    return d + 1;
}

std::vector<std::uint64_t> ObligationTree::ratios() const {
    std::vector<std::uint64_t> out(depth(), 0);
    std::function<void(const ObligationTree&, std::size_t)> walk = [&](const ObligationTree& n, std::size_t h) {
        for (const auto& a : n.content) out[h] = std::max(out[h], ratio(a));
        for (const auto& c : n.children) walk(c, h + 1);
    };
    walk(*this, 0);
    return out;
}

namespace {

struct Alternative {
    std::vector<Atom> content;
    std::vector<const Formula*> children;
};

std::vector<Alternative> resolve(const Formula& k) {
    switch (k.kind) {
        case Formula::Kind::Atom: return {Alternative{{k.atom}, {}}};
        case Formula::Kind::EF: return {Alternative{{}, {k.kids[0].get()}}};
        case Formula::Kind::Or: {
            auto a = resolve(*k.kids[0]);
            auto b = resolve(*k.kids[1]);
            a.insert(a.end(), b.begin(), b.end());
            return a;
        }
        case Formula::Kind::And: {
            std::vector<Alternative> out;
            for (const auto& a : resolve(*k.kids[0])) {
                for (const auto& b : resolve(*k.kids[1])) {
                    Alternative c = a;
                    c.content.insert(c.content.end(), b.content.begin(), b.content.end());
                    c.children.insert(c.children.end(), b.children.begin(), b.children.end());
                    out.push_back(std::move(c));
                }
            }
            return out;
        }
        default: throw Error(ErrorCode::InvalidArgument, "not a kappa formula");
    }
}

using TreeVisitor = std::function<bool(const ObligationTree&)>;

bool build_trees(const Formula& k, const TreeVisitor& visit);

bool combine(const std::vector<const Formula*>& kids, std::size_t i, std::vector<ObligationTree>& acc,
             const std::function<bool()>& done) {
    if (i == kids.size()) return done();
    return build_trees(*kids[i], [&](const ObligationTree& t) {
        acc.push_back(t);
        const bool go_on = combine(kids, i + 1, acc, done);
        acc.pop_back();
        return go_on;
    });
}

bool build_trees(const Formula& k, const TreeVisitor& visit) {
    for (const auto& alt : resolve(k)) {
        std::vector<ObligationTree> acc;
        const bool go_on = combine(alt.children, 0, acc, [&]() { return visit(ObligationTree{alt.content, acc}); });
        if (!go_on) return false;
    }
    return true;
}

}  // namespace

bool for_each_obligation_tree(const Formula& kappa, const std::function<bool(const ObligationTree&)>& visit) {
    if (!kappa.is_kappa()) throw Error(ErrorCode::InvalidArgument, "obligation trees need a kappa formula");
    return build_trees(kappa, visit);
}

std::vector<ObligationTree> obligation_trees(const Formula& kappa, std::size_t limit) {
    std::vector<ObligationTree> out;
    for_each_obligation_tree(kappa, [&](const ObligationTree& t) {
        out.push_back(t);
        return out.size() < limit;
    });
    return out;
}

// ---------------------------------------------------------------- κ checking

namespace {

bool omega_atom(const Atom& a, const OmegaMarking& m) {
    Tokens sum = 0;
    for (PlaceId p : a.term.support()) {
        if (m.is_omega(p)) return true;
        sum = checked_add(sum, checked_mul(a.term.coeffs[p], m[p]));
    }
    return sum >= a.c;
}

class TreeChecker {
public:
    TreeChecker(const PetriNet& net, const CheckOptions& opts, const BoundFunction& bf)
        : net_(net), opts_(opts), bf_(bf) {}

    bool used_fallback = false;

    Truth node(const ObligationTree& n, const Marking& m, std::size_t height) {
        for (const auto& a : n.content)
            if (!eval_atom(a, m)) return Truth::False;
        Truth acc = Truth::True;
        for (const auto& c : n.children) {
            acc = truth_and(acc, reach(c, m, height + 1));
            if (acc == Truth::False) return acc;
        }
        return acc;
    }

private:
    // Is some marking reachable from m (length <= l'(f(height))) a witness
    // for subtree c?
    Truth reach(const ObligationTree& c, const Marking& m, std::size_t height) {
        const BoundValue& cap = bf_.ell_prime.at(height);
        const bool bound_exact = cap.materialized() && cap.saturated_u64() < UINT64_MAX;
        const std::uint64_t depth_cap = bound_exact ? cap.saturated_u64() : opts_.fallback_depth;
        bool unknown = false;
        auto eval = [&](const Marking& x) {
            const Truth t = node(c, x, height);
            if (t == Truth::Unknown) unknown = true;
            return t == Truth::True;
        };
        if (eval(m)) return Truth::True;
        std::vector<std::vector<Tokens>> antichain{m.values()};
        std::vector<std::vector<Tokens>> frontier{m.values()};
        std::size_t states = 1;
        for (std::uint64_t d = 0; d < depth_cap && !frontier.empty(); ++d) {
            std::vector<std::vector<Tokens>> next;
            for (const auto& x : frontier) {
                for (TransitionId t = 0; t < net_.num_transitions(); ++t) {
                    Marking cur(x);
                    if (!is_enabled(net_, cur, t)) continue;
                    Marking y = fire(net_, cur, t);
                    const auto& yv = y.values();
                    bool dominated = false;
                    for (const auto& a : antichain) {
                        if (Marking(a).covers(y)) {
                            dominated = true;
                            break;
                        }
                    }
                    if (dominated) continue;
                    std::erase_if(antichain, [&](const std::vector<Tokens>& a) { return y.covers(Marking(a)); });
                    antichain.push_back(yv);
                    if (eval(y)) return Truth::True;
                    next.push_back(yv);
                    if (++states > opts_.state_cap) {
                        used_fallback = true;
                        return omega_reach(c, OmegaMarking(m));
                    }
                }
            }
            frontier = std::move(next);
        }
        if (!frontier.empty() && !bound_exact) {
            // Cut by the fallback depth; the obligations are upward closed,
            // so the omega evaluation settles them exactly.
            used_fallback = true;
            return omega_reach(c, OmegaMarking(m));
        }
        return unknown ? Truth::Unknown : Truth::False;
    }

    Truth omega_node(const ObligationTree& n, const OmegaMarking& m) {
        for (const auto& a : n.content)
            if (!omega_atom(a, m)) return Truth::False;
        Truth acc = Truth::True;
        for (const auto& c : n.children) {
            acc = truth_and(acc, omega_reach(c, m));
            if (acc == Truth::False) return acc;
        }
        return acc;
    }

    Truth omega_reach(const ObligationTree& c, const OmegaMarking& m) {
        const auto cs = coverability_set(net_, m, opts_.node_cap);
        bool unknown = !cs.complete;
        for (const auto& y : cs.nodes) {
            const Truth t = omega_node(c, y);
            if (t == Truth::True) return t;
            if (t == Truth::Unknown) unknown = true;
        }
        return unknown ? Truth::Unknown : Truth::False;
    }

    const PetriNet& net_;
    const CheckOptions& opts_;
    const BoundFunction& bf_;
};

}  // namespace

KappaReport check_kappa(const PetriNet& net, const Marking& m0, const Formula& kappa, const CheckOptions& opts) {
    if (!kappa.is_kappa()) throw Error(ErrorCode::InvalidArgument, "not a kappa formula");
    KappaReport rep;
    rep.depth = kappa.ef_depth() + 1;
    if (rep.depth > opts.max_depth)
        throw Error(ErrorCode::DepthTooLarge, "EF nesting gives D = " + std::to_string(rep.depth) +
                                                  " above the configured maximum " + std::to_string(opts.max_depth));
    const std::uint64_t k_prime = opts.k_prime ? *opts.k_prime : analyze_structure(net).k_prime();
    bool unknown = false;
    for_each_obligation_tree(kappa, [&](const ObligationTree& tree) {
        ++rep.trees_checked;
        BoundFunction bf = ef_bound_fn(tree.depth(), tree.ratios(), net, m0, k_prime);
        TreeChecker checker(net, opts, bf);
        const Truth t = checker.node(tree, m0, 0);
        rep.used_omega_fallback = rep.used_omega_fallback || checker.used_fallback;
        rep.bound = std::move(bf);
        if (t == Truth::True) {
            rep.verdict = Truth::True;
            return false;
        }
        if (t == Truth::Unknown) unknown = true;
        return true;
    });
    if (rep.verdict != Truth::True) rep.verdict = unknown ? Truth::Unknown : Truth::False;
    return rep;
}

// ---------------------------------------------------------------- β checking

Truth beta_atom_verdict(const KarpMillerTree& tree, const std::vector<Term>& terms) {
    for (const auto& node : tree.nodes) {
        bool all = true;
        for (const auto& t : terms) {
            bool hit = false;
            for (PlaceId p : t.support())
                if (node.marking.is_omega(p)) hit = true;
            if (!hit) {
                all = false;
                break;
            }
        }
        if (all) return Truth::False;
    }
    return tree.complete ? Truth::True : Truth::Unknown;
}

namespace {

Truth beta_eval(const Formula& f, const KarpMillerTree& tree) {
    switch (f.kind) {
        case Formula::Kind::Bounded: return beta_atom_verdict(tree, f.terms);
        case Formula::Kind::Not: return truth_not(beta_eval(*f.kids[0], tree));
        case Formula::Kind::And: return truth_and(beta_eval(*f.kids[0], tree), beta_eval(*f.kids[1], tree));
        case Formula::Kind::Or: return truth_or(beta_eval(*f.kids[0], tree), beta_eval(*f.kids[1], tree));
        default: throw Error(ErrorCode::InvalidArgument, "not a beta formula");
    }
}

}  // namespace

BetaReport check_beta(const PetriNet& net, const Marking& m0, const Formula& beta, const CheckOptions& opts) {
    if (!beta.is_beta()) throw Error(ErrorCode::InvalidArgument, "not a beta formula");
    const auto tree = karp_miller(net, m0, opts.node_cap);
    BetaReport rep;
    rep.tree_complete = tree.complete;
    rep.km_nodes = tree.nodes.size();
    rep.verdict = beta_eval(beta, tree);
    return rep;
}

PhiReport check_phi(const PetriNet& net, const Marking& m0, const Formula& phi, const CheckOptions& opts) {
    PhiReport rep;
    std::function<Truth(const Formula&)> go = [&](const Formula& f) -> Truth {
        if (f.is_kappa()) {
            const auto r = check_kappa(net, m0, f, opts);
            if (r.used_omega_fallback) rep.notes.push_back("omega fallback used for " + to_string(f, net));
            return r.verdict;
        }
        if (f.is_beta()) return check_beta(net, m0, f, opts).verdict;
        if (f.kind != Formula::Kind::And && f.kind != Formula::Kind::Or)
            throw Error(ErrorCode::InvalidArgument, "malformed formula");
        const Truth a = go(*f.kids[0]);
        if (f.kind == Formula::Kind::And && a == Truth::False) return a;
        if (f.kind == Formula::Kind::Or && a == Truth::True) return a;
        const Truth b = go(*f.kids[1]);
        return f.kind == Formula::Kind::And ? truth_and(a, b) : truth_or(a, b);
    };
    rep.verdict = go(phi);
    return rep;
}

// ---------------------------------------------------------------- pumping cross-check

std::vector<PlaceSet> candidate_sets(const std::vector<Term>& terms, std::size_t num_places) {
    std::set<std::vector<PlaceId>> seen;
    std::vector<PlaceSet> out;
    std::vector<PlaceId> pick;
    std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == terms.size()) {
            std::vector<PlaceId> s(pick);
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            if (seen.insert(s).second) {
                PlaceSet ps(num_places);
                for (PlaceId p : s) ps.insert(p);
                out.push_back(std::move(ps));
            }
            return;
        }
        for (PlaceId p : terms[i].support()) {
            pick.push_back(p);
            go(i + 1);
            pick.pop_back();
        }
    };
    go(0);
    return out;
}

bool km_pumps_all(const KarpMillerTree& tree, const PlaceSet& x) {
    for (const auto& node : tree.nodes) {
        bool all = true;
        for (PlaceId p : x.members())
            if (!node.marking.is_omega(p)) all = false;
        if (all) return true;
    }
    return false;
}

WeakPumpingCrosscheck find_weak_pumping_crosscheck(const PetriNet& net, const Marking& m0, const PlaceSet& x,
                                                   std::size_t max_len, std::size_t state_cap) {
    if (x.empty()) throw Error(ErrorCode::EmptyX, "pumping target X must be nonempty");
    WeakPumpingCrosscheck out;
    PumpingSearchOptions opts;
    opts.state_cap = state_cap;
    const auto search = search_weak_pumping(net, m0, x, max_len, opts);
    out.exhaustive = search.exhaustive;
    out.weak = search.found;
    if (out.weak) {
        try {
            const auto strong = strengthen_pumping_decomposition(net, m0, *out.weak, x);
            out.strengthened = strong.flatten();
            out.strengthened_valid = is_pumping_sequence(net, m0, strong, x);
        } catch (const Error&) {
            out.strengthened_valid = false;
        }
    }
    return out;
}

Marking guess_function(const Marking& witness, const std::vector<BoundValue>& f_level) {
    std::vector<Tokens> g(witness.values());
    for (PlaceId p = 0; p < g.size(); ++p) {
        const BoundValue& cap = f_level.at(p);
        if (cap.materialized() && *cap.exact() < g[p]) g[p] = cap.exact()->convert_to<Tokens>();
    }
    return Marking(std::move(g));
}

}  // namespace pnvc
