#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "locvar/error.hpp"
#include "locvar/regex.hpp"

namespace locvar {

using State = std::uint32_t;

/// Complete deterministic automaton. `delta[q * alphabet.size() + a]` is the a-successor of q.
struct Dfa {
    Alphabet alphabet;
    std::size_t states = 0;
    State initial = 0;
    std::vector<std::uint8_t> finals;  // finals[q] != 0 iff q accepts
    std::vector<State> delta;

    State next(State q, std::size_t letter) const { return delta[q * alphabet.size() + letter]; }
    bool is_final(State q) const { return finals[q] != 0; }

    State run(State q, std::string_view word) const {
        for (char c : word) q = next(q, alphabet.index(c));
        return q;
    }

    void check() const {
        if (states == 0 || initial >= states) throw Error("dfa: initial state out of range");
        if (finals.size() != states || delta.size() != states * alphabet.size())
            throw Error("dfa: transition table is not total");
        for (State t : delta)
            if (t >= states) throw Error("dfa: transition target out of range");
    }

    friend bool operator==(const Dfa&, const Dfa&) = default;
    friend auto operator<=>(const Dfa&, const Dfa&) = default;
};

/// Renumbers the states reachable from the initial state in breadth-first order, visiting
/// successors in alphabet order. Unreachable states are dropped.
inline Dfa canonical_numbering(const Dfa& dfa) {
    const std::size_t k = dfa.alphabet.size();
    constexpr State unset = ~State{0};
    std::vector<State> order;
    std::vector<State> rename(dfa.states, unset);
    rename[dfa.initial] = 0;
    order.push_back(dfa.initial);
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t a = 0; a < k; ++a) {
            const State t = dfa.next(order[i], a);
            if (rename[t] == unset) {
                rename[t] = static_cast<State>(order.size());
                order.push_back(t);
            }
        }
    }
    Dfa out;
    out.alphabet = dfa.alphabet;
    out.states = order.size();
    out.initial = 0;
    out.finals.resize(order.size());
    out.delta.resize(order.size() * k);
    for (std::size_t i = 0; i < order.size(); ++i) {
        out.finals[i] = dfa.finals[order[i]];
        for (std::size_t a = 0; a < k; ++a) out.delta[i * k + a] = rename[dfa.next(order[i], a)];
    }
    return out;
}

/// Hopcroft partition refinement on the reachable part. Returns the quotient automaton
/// with canonical numbering.
inline Dfa minimize(const Dfa& input) {
    const Dfa dfa = canonical_numbering(input);
    const std::size_t n = dfa.states;
    const std::size_t k = dfa.alphabet.size();

    // predecessors[a][q] = states p with delta(p, a) = q
    std::vector<std::vector<std::vector<State>>> predecessors(k, std::vector<std::vector<State>>(n));
    for (State p = 0; p < n; ++p)
        for (std::size_t a = 0; a < k; ++a) predecessors[a][dfa.next(p, a)].push_back(p);

    std::vector<std::vector<State>> blocks;
    std::vector<std::size_t> block_of(n);
    {
        std::vector<State> fin, rest;
        for (State q = 0; q < n; ++q) (dfa.is_final(q) ? fin : rest).push_back(q);
        for (auto* b : {&fin, &rest}) {
            if (b->empty()) continue;
            for (State q : *b) block_of[q] = blocks.size();
            blocks.push_back(std::move(*b));
        }
    }

    std::deque<std::pair<std::size_t, std::size_t>> work;
    std::vector<std::vector<std::uint8_t>> queued;
    auto enqueue = [&](std::size_t b, std::size_t a) {
        if (!queued[b][a]) {
            queued[b][a] = 1;
            work.emplace_back(b, a);
        }
    };
    queued.assign(blocks.size(), std::vector<std::uint8_t>(k, 0));
    if (blocks.size() == 2) {
        const std::size_t smaller = blocks[0].size() <= blocks[1].size() ? 0 : 1;
        for (std::size_t a = 0; a < k; ++a) enqueue(smaller, a);
    }

    std::vector<std::uint8_t> marked(n, 0);
    std::vector<std::size_t> marked_count;
    while (!work.empty()) {
        const auto [splitter, a] = work.front();
        work.pop_front();
        queued[splitter][a] = 0;

        std::vector<State> touched_states;
        for (State q : blocks[splitter])
            for (State p : predecessors[a][q])
                if (!marked[p]) {
                    marked[p] = 1;
                    touched_states.push_back(p);
                }
        marked_count.assign(blocks.size(), 0);
        std::vector<std::size_t> touched_blocks;
        for (State p : touched_states)
            if (marked_count[block_of[p]]++ == 0) touched_blocks.push_back(block_of[p]);

        for (std::size_t b : touched_blocks) {
            if (marked_count[b] == blocks[b].size()) continue;
            std::vector<State> in, out;
            for (State q : blocks[b]) (marked[q] ? in : out).push_back(q);
            const std::size_t fresh = blocks.size();
            blocks[b] = std::move(out);
            for (State q : in) block_of[q] = fresh;
            blocks.push_back(std::move(in));
            queued.emplace_back(k, 0);
            for (std::size_t c = 0; c < k; ++c) {
                if (queued[b][c]) {
                    enqueue(fresh, c);
                } else {
                    enqueue(blocks[b].size() <= blocks[fresh].size() ? b : fresh, c);
                }
            }
        }
        for (State p : touched_states) marked[p] = 0;
    }

    Dfa quotient;
    quotient.alphabet = dfa.alphabet;
    quotient.states = blocks.size();
    quotient.initial = static_cast<State>(block_of[dfa.initial]);
    quotient.finals.resize(blocks.size());
    quotient.delta.resize(blocks.size() * k);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const State rep = blocks[b].front();
        quotient.finals[b] = dfa.finals[rep];
        for (std::size_t a = 0; a < k; ++a) quotient.delta[b * k + a] = static_cast<State>(block_of[dfa.next(rep, a)]);
    }
    return canonical_numbering(quotient);
}

/// A regular language, identified by its canonical minimal DFA. Two LanguageIds are equal
/// iff they denote the same language over the same alphabet.
class LanguageId {
public:
    LanguageId() = default;

    /// Minimizes and canonicalizes an arbitrary complete DFA.
    static LanguageId from_dfa(const Dfa& dfa) {
        dfa.check();
        LanguageId id;
        id.dfa_ = minimize(dfa);
        return id;
    }

    static LanguageId empty(const Alphabet& alphabet) { return constant(alphabet, false); }
    static LanguageId full(const Alphabet& alphabet) { return constant(alphabet, true); }

    const Dfa& dfa() const noexcept { return dfa_; }
    const Alphabet& alphabet() const noexcept { return dfa_.alphabet; }
    std::size_t states() const noexcept { return dfa_.states; }
    bool contains_epsilon() const { return dfa_.is_final(dfa_.initial); }
    bool is_empty() const { return *this == empty(alphabet()); }

    friend bool operator==(const LanguageId&, const LanguageId&) = default;
    friend auto operator<=>(const LanguageId&, const LanguageId&) = default;

private:
    static LanguageId constant(const Alphabet& alphabet, bool accept) {
        LanguageId id;
        id.dfa_.alphabet = alphabet;
        id.dfa_.states = 1;
        id.dfa_.initial = 0;
        id.dfa_.finals = {static_cast<std::uint8_t>(accept)};
        id.dfa_.delta.assign(alphabet.size(), 0);
        return id;
    }

    Dfa dfa_;
};

inline bool accepts(const LanguageId& lang, std::string_view word) {
    const Dfa& d = lang.dfa();
    return d.is_final(d.run(d.initial, word));
}

/// Reachable synchronous product; `keep(x, y)` decides acceptance of a pair state.
inline LanguageId product(const LanguageId& l1, const LanguageId& l2, const std::function<bool(bool, bool)>& keep,
                          const Limits& limits = {}) {
    if (l1.alphabet() != l2.alphabet()) throw Error("product of languages over different alphabets");
    const Dfa& a = l1.dfa();
    const Dfa& b = l2.dfa();
    const std::size_t k = a.alphabet.size();
    Dfa out;
    out.alphabet = a.alphabet;
    std::vector<State> index(a.states * b.states, ~State{0});
    std::vector<std::pair<State, State>> pairs{{a.initial, b.initial}};
    index[a.initial * b.states + b.initial] = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto [p, q] = pairs[i];
        out.finals.push_back(keep(a.is_final(p), b.is_final(q)));
        for (std::size_t c = 0; c < k; ++c) {
            const State np = a.next(p, c), nq = b.next(q, c);
            State& slot = index[np * b.states + nq];
            if (slot == ~State{0}) {
                if (pairs.size() >= limits.max_states) throw ResourceExceeded("product automaton exceeds state cap");
                slot = static_cast<State>(pairs.size());
                pairs.emplace_back(np, nq);
            }
            out.delta.push_back(slot);
        }
    }
    out.states = pairs.size();
    out.initial = 0;
    return LanguageId::from_dfa(out);
}

inline LanguageId union_of(const LanguageId& a, const LanguageId& b) {
    return product(a, b, [](bool x, bool y) { return x || y; });
}
inline LanguageId intersection_of(const LanguageId& a, const LanguageId& b) {
    return product(a, b, [](bool x, bool y) { return x && y; });
}
inline LanguageId difference_of(const LanguageId& a, const LanguageId& b) {
    return product(a, b, [](bool x, bool y) { return x && !y; });
}
inline LanguageId symmetric_difference_of(const LanguageId& a, const LanguageId& b) {
    return product(a, b, [](bool x, bool y) { return x != y; });
}
inline LanguageId complement_of(const LanguageId& a) {
    Dfa d = a.dfa();
    for (auto& f : d.finals) f = !f;
    return LanguageId::from_dfa(d);
}
inline bool is_subset(const LanguageId& a, const LanguageId& b) { return difference_of(a, b).is_empty(); }

namespace detail {

inline Regex simplify_alt(Regex l, Regex r) {
    if (l.kind() == Regex::Kind::Empty) return r;
    if (r.kind() == Regex::Kind::Empty || l == r) return l;
    return Regex::alt(std::move(l), std::move(r));
}
inline Regex simplify_concat(Regex l, Regex r) {
    if (l.kind() == Regex::Kind::Empty || r.kind() == Regex::Kind::Empty) return Regex::empty();
    if (l.kind() == Regex::Kind::Epsilon) return r;
    if (r.kind() == Regex::Kind::Epsilon) return l;
    return Regex::concat(std::move(l), std::move(r));
}
inline Regex simplify_star(Regex r) {
    if (r.kind() == Regex::Kind::Empty || r.kind() == Regex::Kind::Epsilon) return Regex::epsilon();
    if (r.kind() == Regex::Kind::Star) return r;
    return Regex::star(std::move(r));
}

}  // namespace detail

/// State elimination over the canonical DFA (dead states removed, states eliminated in
/// canonical order). The result denotes the same language; it is deterministic but not
/// guaranteed to be the shortest expression.
inline Regex to_regex(const LanguageId& lang) {
    const Dfa& d = lang.dfa();
    const std::size_t n = d.states;
    const std::size_t k = d.alphabet.size();

    // live[q]: some final state is reachable from q
    std::vector<std::uint8_t> live(n, 0);
    for (State q = 0; q < n; ++q) live[q] = d.finals[q];
    for (bool changed = true; changed;) {
        changed = false;
        for (State q = 0; q < n; ++q)
            for (std::size_t a = 0; a < k && !live[q]; ++a)
                if (live[d.next(q, a)]) live[q] = 1, changed = true;
    }
    if (!live[d.initial]) return Regex::empty();

    const std::size_t start = n, accept = n + 1, total = n + 2;
    std::vector<Regex> edge(total * total, Regex::empty());
    auto at = [&](std::size_t i, std::size_t j) -> Regex& { return edge[i * total + j]; };
    at(start, d.initial) = Regex::epsilon();
    for (State q = 0; q < n; ++q) {
        if (!live[q]) continue;
        if (d.is_final(q)) at(q, accept) = Regex::epsilon();
        for (std::size_t a = 0; a < k; ++a) {
            const State t = d.next(q, a);
            if (live[t]) at(q, t) = detail::simplify_alt(at(q, t), Regex::literal(d.alphabet[a]));
        }
    }
    std::vector<std::uint8_t> gone(total, 0);
    for (State q = 0; q < n; ++q) {
        if (!live[q]) continue;
        const Regex loop = detail::simplify_star(at(q, q));
        for (std::size_t i = 0; i < total; ++i) {
            if (i == q || gone[i] || at(i, q).kind() == Regex::Kind::Empty) continue;
            for (std::size_t j = 0; j < total; ++j) {
                if (j == q || gone[j] || at(q, j).kind() == Regex::Kind::Empty) continue;
                at(i, j) = detail::simplify_alt(at(i, j),
                                                detail::simplify_concat(at(i, q), detail::simplify_concat(loop, at(q, j))));
            }
        }
        gone[q] = 1;
    }
    return at(start, accept);
}

}  // namespace locvar
