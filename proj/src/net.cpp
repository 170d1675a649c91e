#include "pnvc/net.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pnvc {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax: return "Syntax";
        case ErrorCode::DuplicateIdentifier: return "DuplicateIdentifier";
        case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
        case ErrorCode::InvalidWeight: return "InvalidWeight";
        case ErrorCode::EmptyNet: return "EmptyNet";
        case ErrorCode::NotEnabled: return "NotEnabled";
        case ErrorCode::Overflow: return "Overflow";
        case ErrorCode::BudgetExceeded: return "BudgetExceeded";
        case ErrorCode::MalformedNet: return "MalformedNet";
        case ErrorCode::PositionWithoutArc: return "PositionWithoutArc";
        case ErrorCode::VarietyMismatch: return "VarietyMismatch";
        case ErrorCode::ArcMissing: return "ArcMissing";
        case ErrorCode::HypothesesUnmet: return "HypothesesUnmet";
        case ErrorCode::DepthZero: return "DepthZero";
        case ErrorCode::DepthTooLarge: return "DepthTooLarge";
        case ErrorCode::EmptyX: return "EmptyX";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

const char* to_string(TruncationHypothesis h) {
    switch (h) {
        case TruncationHypothesis::VarietyEqual: return "var[p1] = var[p2]";
        case TruncationHypothesis::IndexOrder: return "idx1 < idx2 < idx3";
        case TruncationHypothesis::StartValue: return "M1(p1) = e";
        case TruncationHypothesis::EndValue: return "M3(p1) <= e";
        case TruncationHypothesis::PeakValue: return "M2(p1) >= e + W^2 + W^3";
        case TruncationHypothesis::PeakMaximal: return "M2 maximal between M1 and M3";
        case TruncationHypothesis::Enabled: return "sequence enabled";
    }
    return "unknown";
}

Tokens checked_add(Tokens a, Tokens b) {
    Tokens r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "token count overflow");
    return r;
}

Tokens checked_sub(Tokens a, Tokens b) {
    Tokens r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "token count overflow");
    return r;
}

Tokens checked_mul(Tokens a, Tokens b) {
    Tokens r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::Overflow, "token count overflow");
    return r;
}

// ---------------------------------------------------------------- PetriNet

PetriNet::PetriNet(std::string name, std::vector<std::string> places,
                   std::vector<std::string> transitions, std::vector<Weight> pre,
                   std::vector<Weight> post)
    : name_(std::move(name)),
      places_(std::move(places)),
      transitions_(std::move(transitions)),
      pre_(std::move(pre)),
      post_(std::move(post)) {
    if (places_.empty()) throw Error(ErrorCode::EmptyNet, "net must declare at least one place");
    const std::size_t cells = places_.size() * transitions_.size();
    if (pre_.size() != cells || post_.size() != cells)
        throw Error(ErrorCode::InvalidArgument, "incidence matrix dimension mismatch");
    std::set<std::string> seen;
    for (const auto& p : places_) {
        if (!seen.insert(p).second) throw Error(ErrorCode::DuplicateIdentifier, "duplicate identifier '" + p + "'");
    }
    for (const auto& t : transitions_) {
        if (!seen.insert(t).second) throw Error(ErrorCode::DuplicateIdentifier, "duplicate identifier '" + t + "'");
    }
    Weight w = 0;
    for (Weight v : pre_) w = std::max(w, v);
    for (Weight v : post_) w = std::max(w, v);
    max_weight_ = std::max<Weight>(w, 1);
}

std::optional<PlaceId> PetriNet::find_place(std::string_view name) const {
    auto it = std::find(places_.begin(), places_.end(), name);
    if (it == places_.end()) return std::nullopt;
    return static_cast<PlaceId>(it - places_.begin());
}

std::optional<TransitionId> PetriNet::find_transition(std::string_view name) const {
    auto it = std::find(transitions_.begin(), transitions_.end(), name);
    if (it == transitions_.end()) return std::nullopt;
    return static_cast<TransitionId>(it - transitions_.begin());
}

PlaceId PetriNet::place_index(std::string_view name) const {
    auto p = find_place(name);
    if (!p) throw Error(ErrorCode::UnknownIdentifier, "unknown place '" + std::string(name) + "'");
    return *p;
}

PetriNet PetriNet::without_transition(TransitionId t) const {
    const std::size_t n = num_transitions();
    std::vector<std::string> ts;
    std::vector<Weight> pre, post;
    for (std::size_t j = 0; j < n; ++j)
        if (j != t) ts.push_back(transitions_[j]);
    for (std::size_t p = 0; p < num_places(); ++p) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j == t) continue;
            pre.push_back(this->pre(p, j));
            post.push_back(this->post(p, j));
        }
    }
    return PetriNet(name_, places_, std::move(ts), std::move(pre), std::move(post));
}

// ---------------------------------------------------------------- markings

Marking::Marking(std::vector<Tokens> values) : values_(std::move(values)) {
    for (Tokens v : values_)
        if (v < 0) throw Error(ErrorCode::InvalidArgument, "marking values must be natural");
}

void Marking::set(PlaceId p, Tokens v) {
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "marking values must be natural");
    values_.at(p) = v;
}

Tokens Marking::max_value() const noexcept {
    Tokens m = 0;
    for (Tokens v : values_) m = std::max(m, v);
    return m;
}

bool Marking::covers(const Marking& other) const {
    for (std::size_t p = 0; p < values_.size(); ++p)
        if (values_[p] < other.values_[p]) return false;
    return true;
}

PlaceSet PlaceSet::all(std::size_t num_places) {
    PlaceSet s(num_places);
    s.bits_.assign(num_places, true);
    return s;
}

PlaceSet PlaceSet::of(std::size_t num_places, std::initializer_list<PlaceId> members) {
    PlaceSet s(num_places);
    for (PlaceId p : members) s.insert(p);
    return s;
}

std::size_t PlaceSet::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<PlaceId> PlaceSet::members() const {
    std::vector<PlaceId> out;
    for (std::size_t p = 0; p < bits_.size(); ++p)
        if (bits_[p]) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------- firing

bool is_enabled(const PetriNet& net, const Marking& m, TransitionId t) {
    for (PlaceId p = 0; p < net.num_places(); ++p)
        if (m[p] < static_cast<Tokens>(net.pre(p, t))) return false;
    return true;
}

namespace {

Marking fire_at(const PetriNet& net, const Marking& m, TransitionId t, std::size_t step) {
    if (t >= net.num_transitions())
        throw Error(ErrorCode::InvalidArgument, "transition index out of range");
    std::vector<Tokens> next(m.values());
    for (PlaceId p = 0; p < net.num_places(); ++p) {
        if (m[p] < static_cast<Tokens>(net.pre(p, t))) {
            throw NotEnabledError(step, p,
                                  "transition '" + net.transition_name(t) + "' not enabled at step " +
                                      std::to_string(step) + ": place '" + net.place_name(p) +
                                      "' has " + std::to_string(m[p]) + " < " +
                                      std::to_string(net.pre(p, t)));
        }
        next[p] = checked_add(m[p], net.delta(p, t));
    }
    return Marking(std::move(next));
}

}  // namespace

Marking fire(const PetriNet& net, const Marking& m, TransitionId t) { return fire_at(net, m, t, 0); }

Marking replay(const PetriNet& net, const Marking& m, const FiringSequence& seq,
               const std::function<void(std::size_t, const Marking&)>& visit) {
    Marking cur = m;
    if (visit) visit(0, cur);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        cur = fire_at(net, cur, seq[i], i);
        if (visit) visit(i + 1, cur);
    }
    return cur;
}

Replay fire_sequence(const PetriNet& net, const Marking& m, const FiringSequence& seq,
                     bool keep_chain) {
    Replay r;
    if (keep_chain) r.chain.reserve(seq.size() + 1);
    r.final = replay(net, m, seq, [&](std::size_t, const Marking& cur) {
        if (keep_chain) r.chain.push_back(cur);
    });
    return r;
}

RelaxedReplay fire_relaxed(const PetriNet& net, const RelaxedMarking& m,
                           const FiringSequence& seq, const PlaceSet& q) {
    RelaxedReplay r;
    RelaxedMarking cur = m;
    auto check = [&](std::size_t index) {
        if (r.violation) return;
        for (PlaceId p = 0; p < net.num_places(); ++p) {
            if (q.contains(p) && cur[p] < 0) {
                r.violation = index;
                return;
            }
        }
    };
    r.chain.push_back(cur);
    check(0);
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const TransitionId t = seq[i];
        if (t >= net.num_transitions())
            throw Error(ErrorCode::InvalidArgument, "transition index out of range");
        for (PlaceId p = 0; p < net.num_places(); ++p) cur[p] = checked_add(cur[p], net.delta(p, t));
        r.chain.push_back(cur);
        check(i + 1);
    }
    r.final = cur;
    return r;
}

Tokens effect(const PetriNet& net, const FiringSequence& seq, PlaceId p) {
    Tokens total = 0;
    for (TransitionId t : seq) total = checked_add(total, net.delta(p, t));
    return total;
}

NetSize net_size(const PetriNet& net, const Marking& m0) {
    // ceil(log2(x + 1)) is the bit width of x; log of 0 counts as one bit.
    auto bits_of = [](std::uint64_t x) -> std::uint64_t {
        return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::bit_width(x)));
    };
    const std::uint64_t m = net.num_places();
    const std::uint64_t n = net.num_transitions();
    const std::uint64_t w_bits = bits_of(net.max_weight());
    const std::uint64_t m0_bits = bits_of(static_cast<std::uint64_t>(m0.max_value()));
    return NetSize{2 * m * n * w_bits + m * m0_bits};
}

// ---------------------------------------------------------------- text format

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        if (j > i) out.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

bool valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-' || c == '\''))
            return false;
    }
    return true;
}

std::pair<std::string, Tokens> parse_weighted(std::string_view item, std::size_t line, bool allow_zero) {
    auto colon = item.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == item.size())
        throw ParseError(ErrorCode::Syntax, line, "expected 'name:weight', got '" + std::string(item) + "'");
    std::string name(item.substr(0, colon));
    std::string_view num = item.substr(colon + 1);
    if (num.front() == '-')
        throw ParseError(ErrorCode::InvalidWeight, line, "negative weight in '" + std::string(item) + "'");
    Tokens value = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), value);
    if (ec != std::errc() || ptr != num.data() + num.size())
        throw ParseError(ErrorCode::Syntax, line, "bad number in '" + std::string(item) + "'");
    if (value == 0 && !allow_zero)
        throw ParseError(ErrorCode::InvalidWeight, line, "explicit weight 0 is not allowed ('" + std::string(item) + "')");
    return {name, value};
}

struct TransitionDecl {
    std::string name;
    std::size_t line = 0;
    std::vector<std::pair<std::string, Tokens>> in, out;
    std::vector<std::size_t> in_lines, out_lines;
};

ParsedNet assemble(std::string name, std::vector<std::string> places,
                   const std::vector<TransitionDecl>& decls,
                   const std::vector<std::pair<std::string, Tokens>>& marking,
                   std::optional<Tokens> weight_cap, std::size_t marking_line) {
    if (places.empty()) throw ParseError(ErrorCode::EmptyNet, 1, "net must declare at least one place");
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < places.size(); ++i) {
        if (!index.emplace(places[i], i).second)
            throw ParseError(ErrorCode::DuplicateIdentifier, 1, "duplicate identifier '" + places[i] + "'");
    }
    std::set<std::string> tnames;
    const std::size_t m = places.size(), n = decls.size();
    std::vector<Weight> pre(m * n, 0), post(m * n, 0);
    std::vector<std::string> transitions;
    for (std::size_t j = 0; j < n; ++j) {
        const auto& d = decls[j];
        if (index.count(d.name) || !tnames.insert(d.name).second)
            throw ParseError(ErrorCode::DuplicateIdentifier, d.line, "duplicate identifier '" + d.name + "'");
        transitions.push_back(d.name);
        auto put = [&](const std::vector<std::pair<std::string, Tokens>>& arcs,
                       const std::vector<std::size_t>& lines, std::vector<Weight>& mat) {
            for (std::size_t a = 0; a < arcs.size(); ++a) {
                const auto& [pname, w] = arcs[a];
                auto it = index.find(pname);
                if (it == index.end())
                    throw ParseError(ErrorCode::UnknownIdentifier, lines[a],
                                     "transition '" + d.name + "' references unknown place '" + pname + "'");
                if (w > static_cast<Tokens>(UINT32_MAX))
                    throw ParseError(ErrorCode::InvalidWeight, lines[a], "weight too large");
                if (weight_cap && w > *weight_cap)
                    throw ParseError(ErrorCode::InvalidWeight, lines[a],
                                     "weight " + std::to_string(w) + " exceeds declared maxweight " +
                                         std::to_string(*weight_cap));
                Weight& cell = mat[it->second * n + j];
                if (cell != 0)
                    throw ParseError(ErrorCode::DuplicateIdentifier, lines[a],
                                     "duplicate arc between '" + pname + "' and '" + d.name + "'");
                cell = static_cast<Weight>(w);
            }
        };
        put(d.in, d.in_lines, pre);
        put(d.out, d.out_lines, post);
    }
    std::vector<Tokens> m0(m, 0);
    std::set<std::string> marked;
    for (const auto& [pname, v] : marking) {
        auto it = index.find(pname);
        if (it == index.end())
            throw ParseError(ErrorCode::UnknownIdentifier, marking_line, "marking references unknown place '" + pname + "'");
        if (!marked.insert(pname).second)
            throw ParseError(ErrorCode::DuplicateIdentifier, marking_line, "place '" + pname + "' marked twice");
        m0[it->second] = v;
    }
    ParsedNet out{PetriNet(std::move(name), std::move(places), std::move(transitions), std::move(pre), std::move(post)),
                  Marking(std::move(m0))};
    return out;
}

}  // namespace

ParsedNet parse_net(std::string_view text) {
    std::string name = "net";
    std::vector<std::string> places;
    bool saw_places = false;
    std::vector<TransitionDecl> decls;
    std::vector<std::pair<std::string, Tokens>> marking;
    std::size_t marking_line = 0;
    std::optional<Tokens> weight_cap;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto words = split_ws(raw);
        if (words.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const std::string& kw = words[0];
        if (kw == "net") {
            if (words.size() != 2) throw ParseError(ErrorCode::Syntax, line_no, "expected 'net <name>'");
            name = words[1];
        } else if (kw == "places") {
            if (saw_places) throw ParseError(ErrorCode::Syntax, line_no, "duplicate 'places' line");
            saw_places = true;
            if (words.size() == 1)
                throw ParseError(ErrorCode::EmptyNet, line_no, "net must declare at least one place");
            for (std::size_t i = 1; i < words.size(); ++i) {
                if (!valid_identifier(words[i]))
                    throw ParseError(ErrorCode::Syntax, line_no, "invalid place identifier '" + words[i] + "'");
                if (std::find(places.begin(), places.end(), words[i]) != places.end())
                    throw ParseError(ErrorCode::DuplicateIdentifier, line_no, "duplicate identifier '" + words[i] + "'");
                places.push_back(words[i]);
            }
        } else if (kw == "transition") {
            if (words.size() != 2) throw ParseError(ErrorCode::Syntax, line_no, "expected 'transition <name>'");
            if (!valid_identifier(words[1]))
                throw ParseError(ErrorCode::Syntax, line_no, "invalid transition identifier '" + words[1] + "'");
            TransitionDecl d;
            d.name = words[1];
            d.line = line_no;
            decls.push_back(std::move(d));
        } else if (kw == "in" || kw == "out") {
            if (decls.empty()) throw ParseError(ErrorCode::Syntax, line_no, "'" + kw + "' outside a transition");
            auto& d = decls.back();
            for (std::size_t i = 1; i < words.size(); ++i) {
                auto arc = parse_weighted(words[i], line_no, false);
                if (kw == "in") {
                    d.in.push_back(arc);
                    d.in_lines.push_back(line_no);
                } else {
                    d.out.push_back(arc);
                    d.out_lines.push_back(line_no);
                }
            }
        } else if (kw == "marking") {
            if (marking_line != 0) throw ParseError(ErrorCode::Syntax, line_no, "duplicate 'marking' line");
            marking_line = line_no;
            for (std::size_t i = 1; i < words.size(); ++i) marking.push_back(parse_weighted(words[i], line_no, true));
        } else if (kw == "maxweight") {
            if (words.size() != 2) throw ParseError(ErrorCode::Syntax, line_no, "expected 'maxweight <n>'");
            auto [n, v] = parse_weighted("w:" + words[1], line_no, false);
            weight_cap = v;
        } else {
            throw ParseError(ErrorCode::Syntax, line_no, "unknown directive '" + kw + "'");
        }
        if (end == text.size()) break;
    }
    if (!saw_places) throw ParseError(ErrorCode::EmptyNet, line_no, "net must declare at least one place");
    return assemble(std::move(name), std::move(places), decls, marking, weight_cap, marking_line);
}

std::string to_text(const PetriNet& net, const Marking& m0) {
    std::ostringstream os;
    os << "net " << net.name() << "\n";
    os << "places";
    for (const auto& p : net.places()) os << ' ' << p;
    os << "\n";
    for (TransitionId t = 0; t < net.num_transitions(); ++t) {
        os << "transition " << net.transition_name(t) << "\n";
        std::string in, out;
        for (PlaceId p = 0; p < net.num_places(); ++p) {
            if (net.pre(p, t)) in += ' ' + net.place_name(p) + ':' + std::to_string(net.pre(p, t));
            if (net.post(p, t)) out += ' ' + net.place_name(p) + ':' + std::to_string(net.post(p, t));
        }
        if (!in.empty()) os << "  in " << in.substr(1) << "\n";
        if (!out.empty()) os << "  out " << out.substr(1) << "\n";
    }
    os << "marking";
    for (PlaceId p = 0; p < net.num_places(); ++p)
        if (m0[p]) os << ' ' << net.place_name(p) << ':' << m0[p];
    os << "\n";
    return os.str();
}

// ---------------------------------------------------------------- JSON mirror

ParsedNet parse_net_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(ErrorCode::Syntax, 1, std::string("invalid JSON: ") + e.what());
    }
    auto weights = [](const nlohmann::json& obj, const std::string& what) {
        std::vector<std::pair<std::string, Tokens>> out;
        if (obj.is_null()) return out;
        if (!obj.is_object()) throw ParseError(ErrorCode::Syntax, 1, what + " must be an object");
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!it.value().is_number_integer()) throw ParseError(ErrorCode::Syntax, 1, what + " values must be integers");
            Tokens v = it.value().get<Tokens>();
            if (v < 0) throw ParseError(ErrorCode::InvalidWeight, 1, "negative weight for '" + it.key() + "'");
            out.emplace_back(it.key(), v);
        }
        return out;
    };
    try {
        std::string name = j.value("name", std::string("net"));
        std::vector<std::string> places;
        if (j.contains("places")) places = j.at("places").get<std::vector<std::string>>();
        if (places.empty()) throw ParseError(ErrorCode::EmptyNet, 1, "net must declare at least one place");
        std::vector<TransitionDecl> decls;
        if (j.contains("transitions")) {
            for (const auto& tj : j.at("transitions")) {
                TransitionDecl d;
                d.name = tj.at("name").get<std::string>();
                d.line = 1;
                d.in = weights(tj.value("in", nlohmann::json::object()), "in");
                d.out = weights(tj.value("out", nlohmann::json::object()), "out");
                for (const auto& [p, w] : d.in)
                    if (w == 0) throw ParseError(ErrorCode::InvalidWeight, 1, "explicit weight 0 is not allowed");
                for (const auto& [p, w] : d.out)
                    if (w == 0) throw ParseError(ErrorCode::InvalidWeight, 1, "explicit weight 0 is not allowed");
                d.in_lines.assign(d.in.size(), 1);
                d.out_lines.assign(d.out.size(), 1);
                decls.push_back(std::move(d));
            }
        }
        auto marking = weights(j.value("marking", nlohmann::json::object()), "marking");
        std::optional<Tokens> cap;
        if (j.contains("max_weight")) cap = j.at("max_weight").get<Tokens>();
        return assemble(std::move(name), std::move(places), decls, marking, cap, 1);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ErrorCode::Syntax, 1, std::string("malformed net JSON: ") + e.what());
    }
}

std::string to_json_text(const PetriNet& net, const Marking& m0) {
    nlohmann::ordered_json j;
    j["name"] = net.name();
    j["places"] = net.places();
    j["transitions"] = nlohmann::ordered_json::array();
    for (TransitionId t = 0; t < net.num_transitions(); ++t) {
        nlohmann::ordered_json tj;
        tj["name"] = net.transition_name(t);
        tj["in"] = nlohmann::ordered_json::object();
        tj["out"] = nlohmann::ordered_json::object();
        for (PlaceId p = 0; p < net.num_places(); ++p) {
            if (net.pre(p, t)) tj["in"][net.place_name(p)] = net.pre(p, t);
            if (net.post(p, t)) tj["out"][net.place_name(p)] = net.post(p, t);
        }
        j["transitions"].push_back(std::move(tj));
    }
    j["marking"] = nlohmann::ordered_json::object();
    for (PlaceId p = 0; p < net.num_places(); ++p)
        if (m0[p]) j["marking"][net.place_name(p)] = m0[p];
    return j.dump(2);
}

ParsedNet load_net_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_net_json(text);
    return parse_net(text);
}

Marking parse_marking_list(const PetriNet& net, std::string_view text) {
    Marking m(net.num_places());
    std::set<PlaceId> seen;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        auto words = split_ws(text.substr(pos, end - pos));
        pos = end + 1;
        if (words.empty()) continue;
        if (words.size() != 1) throw Error(ErrorCode::Syntax, "bad marking entry '" + words[0] + " ...'");
        auto [name, v] = parse_weighted(words[0], 1, true);
        PlaceId p = net.place_index(name);
        if (!seen.insert(p).second) throw Error(ErrorCode::DuplicateIdentifier, "place '" + name + "' listed twice");
        m.set(p, v);
    }
    return m;
}

std::string format_marking(const PetriNet& net, const Marking& m) {
    std::string out = "(";
    for (PlaceId p = 0; p < net.num_places(); ++p) {
        if (p) out += ",";
        out += std::to_string(m[p]);
    }
    return out + ")";
}

std::string format_sequence(const PetriNet& net, const FiringSequence& seq) {
    std::string out = "[";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out += ",";
        out += net.transition_name(seq[i]);
    }
    return out + "]";
}

}  // namespace pnvc
