#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "locvar/dfa.hpp"
#include "locvar/regex.hpp"

namespace locvar {

namespace detail {

/// Hash-consed regular expressions normalized modulo ACI of union and the unit/zero laws.
/// Term 0 is the empty language and term 1 is epsilon.
class TermStore {
public:
    using Id = std::uint32_t;
    static constexpr Id empty_id = 0;
    static constexpr Id epsilon_id = 1;

    TermStore() {
        intern({Regex::Kind::Empty, 0, {}});
        intern({Regex::Kind::Epsilon, 0, {}});
    }

    Id from_regex(const Regex& r) {
        switch (r.kind()) {
            case Regex::Kind::Empty: return empty_id;
            case Regex::Kind::Epsilon: return epsilon_id;
            case Regex::Kind::Literal: return intern({Regex::Kind::Literal, r.symbol(), {}});
            case Regex::Kind::Union: return make_union({from_regex(r.left()), from_regex(r.right())});
            case Regex::Kind::Concat: return make_concat(from_regex(r.left()), from_regex(r.right()));
            case Regex::Kind::Star: return make_star(from_regex(r.inner()));
        }
        return empty_id;
    }

    bool nullable(Id t) const { return nodes_[t].nullable; }

    Id derivative(Id t, char a) {
        const auto key = std::make_pair(t, a);
        if (auto it = derivative_cache_.find(key); it != derivative_cache_.end()) return it->second;
        const Node node = nodes_[t];
        Id result = empty_id;
        switch (node.kind) {
            case Regex::Kind::Empty:
            case Regex::Kind::Epsilon: break;
            case Regex::Kind::Literal: result = node.symbol == a ? epsilon_id : empty_id; break;
            case Regex::Kind::Union: {
                std::vector<Id> parts;
                for (Id kid : node.kids) parts.push_back(derivative(kid, a));
                result = make_union(std::move(parts));
                break;
            }
            case Regex::Kind::Concat: {
                const Id head = make_concat(derivative(node.kids[0], a), node.kids[1]);
                result = nullable(node.kids[0]) ? make_union({head, derivative(node.kids[1], a)}) : head;
                break;
            }
            case Regex::Kind::Star: result = make_concat(derivative(node.kids[0], a), t); break;
        }
        derivative_cache_.emplace(key, result);
        return result;
    }

private:
    struct Node {
        Regex::Kind kind;
        char symbol;
        std::vector<Id> kids;
        bool nullable = false;
    };

    Id intern(Node node) {
        const auto key = std::make_tuple(node.kind, node.symbol, node.kids);
        if (auto it = index_.find(key); it != index_.end()) return it->second;
        switch (node.kind) {
            case Regex::Kind::Epsilon:
            case Regex::Kind::Star: node.nullable = true; break;
            case Regex::Kind::Union:
                node.nullable = false;
                for (Id kid : node.kids) node.nullable = node.nullable || nodes_[kid].nullable;
                break;
            case Regex::Kind::Concat: node.nullable = nodes_[node.kids[0]].nullable && nodes_[node.kids[1]].nullable; break;
            default: node.nullable = false;
        }
        const Id id = static_cast<Id>(nodes_.size());
        nodes_.push_back(std::move(node));
        index_.emplace(key, id);
        return id;
    }

    Id make_union(std::vector<Id> parts) {
        std::vector<Id> flat;
        for (Id p : parts) {
            if (p == empty_id) continue;
            if (nodes_[p].kind == Regex::Kind::Union) {
                flat.insert(flat.end(), nodes_[p].kids.begin(), nodes_[p].kids.end());
            } else {
                flat.push_back(p);
            }
        }
        std::sort(flat.begin(), flat.end());
        flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
        if (flat.empty()) return empty_id;
        if (flat.size() == 1) return flat.front();
        return intern({Regex::Kind::Union, 0, std::move(flat)});
    }

    Id make_concat(Id l, Id r) {
        if (l == empty_id || r == empty_id) return empty_id;
        if (l == epsilon_id) return r;
        if (r == epsilon_id) return l;
        // right-nest so that (xy)z and x(yz) share a term
        if (nodes_[l].kind == Regex::Kind::Concat) {
            const Id head = nodes_[l].kids[0], tail = nodes_[l].kids[1];
            return make_concat(head, make_concat(tail, r));
        }
        return intern({Regex::Kind::Concat, 0, {l, r}});
    }

    Id make_star(Id t) {
        if (t == empty_id || t == epsilon_id) return epsilon_id;
        if (nodes_[t].kind == Regex::Kind::Star) return t;
        return intern({Regex::Kind::Star, 0, {t}});
    }

    std::vector<Node> nodes_;
    std::map<std::tuple<Regex::Kind, char, std::vector<Id>>, Id> index_;
    std::map<std::pair<Id, char>, Id> derivative_cache_;
};

}  // namespace detail

/// Brzozowski derivative closure, then minimization and canonical numbering.
inline LanguageId compile(const Regex& regex, const Alphabet& alphabet, const Limits& limits = {}) {
    detail::TermStore store;
    const std::size_t k = alphabet.size();
    std::map<detail::TermStore::Id, State> state_of;
    std::vector<detail::TermStore::Id> terms{store.from_regex(regex)};
    state_of.emplace(terms.front(), 0);
    Dfa dfa;
    dfa.alphabet = alphabet;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        dfa.finals.push_back(store.nullable(terms[i]));
        for (std::size_t a = 0; a < k; ++a) {
            const auto d = store.derivative(terms[i], alphabet[a]);
            auto [it, fresh] = state_of.emplace(d, static_cast<State>(terms.size()));
            if (fresh) {
                if (terms.size() >= limits.max_states) throw ResourceExceeded("derivative automaton exceeds state cap");
                terms.push_back(d);
            }
            dfa.delta.push_back(it->second);
        }
    }
    dfa.states = terms.size();
    dfa.initial = 0;
    return LanguageId::from_dfa(dfa);
}

inline LanguageId compile(std::string_view text, const Alphabet& alphabet, const Limits& limits = {}) {
    return compile(parse_regex(text, alphabet), alphabet, limits);
}

/// w⁻¹L = {u : wu ∈ L}.
inline LanguageId left_derivative(const LanguageId& lang, std::string_view word) {
    Dfa d = lang.dfa();
    d.initial = d.run(d.initial, word);
    return LanguageId::from_dfa(d);
}

/// Lw⁻¹ = {u : uw ∈ L}: final states are moved backwards along w.
inline LanguageId right_derivative(const LanguageId& lang, std::string_view word) {
    const Dfa& src = lang.dfa();
    Dfa d = src;
    for (State q = 0; q < d.states; ++q) d.finals[q] = src.is_final(src.run(q, word));
    return LanguageId::from_dfa(d);
}

inline LanguageId state_language_of(const Dfa& dfa, State q) {
    Dfa d = dfa;
    d.initial = q;
    return LanguageId::from_dfa(d);
}

/// {w⁻¹L : w ∈ Σ*}; one language per state of the minimal DFA.
inline std::set<LanguageId> residuals(const LanguageId& lang) {
    std::set<LanguageId> out;
    for (State q = 0; q < lang.states(); ++q) out.insert(state_language_of(lang.dfa(), q));
    return out;
}

inline bool equivalent(const LanguageId& a, const LanguageId& b) { return a == b; }

/// Language equivalence of two arbitrary complete DFAs by a bisimulation search on the
/// reachable pair graph.
inline bool bisimilar(const Dfa& a, const Dfa& b) {
    if (a.alphabet != b.alphabet) return false;
    std::set<std::pair<State, State>> seen{{a.initial, b.initial}};
    std::vector<std::pair<State, State>> stack{{a.initial, b.initial}};
    while (!stack.empty()) {
        const auto [p, q] = stack.back();
        stack.pop_back();
        if (a.is_final(p) != b.is_final(q)) return false;
        for (std::size_t c = 0; c < a.alphabet.size(); ++c) {
            const std::pair<State, State> next{a.next(p, c), b.next(q, c)};
            if (seen.insert(next).second) stack.push_back(next);
        }
    }
    return true;
}

/// All distinct final-state sets {q : delta(q, w) ∈ F}, w ranging over Σ*.
inline std::vector<std::vector<std::uint8_t>> shifted_finals(const Dfa& d) {
    std::set<std::vector<std::uint8_t>> seen{d.finals};
    std::vector<std::vector<std::uint8_t>> order{d.finals};
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
            std::vector<std::uint8_t> pre(d.states);
            for (State q = 0; q < d.states; ++q) pre[q] = order[i][d.next(q, a)];
            if (seen.insert(pre).second) order.push_back(std::move(pre));
        }
    }
    return order;
}

/// {Lw⁻¹ : w ∈ Σ*}.
inline std::set<LanguageId> right_residuals(const LanguageId& lang) {
    std::set<LanguageId> out;
    Dfa d = lang.dfa();
    for (auto& finals : shifted_finals(lang.dfa())) {
        d.finals = std::move(finals);
        out.insert(LanguageId::from_dfa(d));
    }
    return out;
}

/// {v⁻¹(Lw⁻¹) : v, w ∈ Σ*}.
inline std::set<LanguageId> two_sided_residuals(const LanguageId& lang) {
    std::set<LanguageId> out;
    const Dfa& src = lang.dfa();
    for (const auto& finals : shifted_finals(src)) {
        Dfa d = src;
        d.finals = finals;
        for (State q = 0; q < d.states; ++q) {
            d.initial = q;
            out.insert(LanguageId::from_dfa(d));
        }
    }
    return out;
}

inline std::string to_regex_string(const LanguageId& lang) { return to_string(to_regex(lang)); }

}  // namespace locvar
