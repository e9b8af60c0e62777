#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "locvar/automata.hpp"
#include "locvar/dmonoid.hpp"
#include "locvar/duality.hpp"

namespace locvar {

/// The Σ-generated D-monoid of a finite rqc-closed piece: the letter-action monoid of the
/// reachable part of its dual algebra, read in reverse so that generators act on words
/// from the left.
inline SigmaMonoid piece_to_monoid(DualityTag d, const LocalVarietyPiece& p, const Limits& limits = {}) {
    if (auto v = find_rqc_violation(p))
        throw NotRqcClosed("piece is not closed under right derivatives (word \"" + v->word + "\")");
    return opposite(transition_monoid(restrict_reachable(coalgebra_to_dalgebra(d, p, limits), limits), limits));
}

/// The piece of all languages recognized by M: the dual of M acting on itself by left
/// multiplication with initial state the unit, labeled by state languages.
inline LocalVarietyPiece monoid_to_piece(DualityTag d, const SigmaMonoid& m, const Limits& limits = {}) {
    if (m.tag() != d_side(d)) throw TagMismatch("monoid_to_piece: monoid is not on the D-side of the duality");
    return with_state_labels(dalgebra_to_coalgebra(d, left_action_algebra(m), limits));
}

/// A language present in exactly one of two pieces; `in_first` tells which.
struct LanguageCounterexample {
    LanguageId language;
    bool in_first = true;
};

struct RoundtripResult {
    std::optional<IsoWitness> witness;
    std::optional<LanguageCounterexample> counterexample;
    std::size_t piece_size = 0;
    std::size_t monoid_size = 0;

    bool ok() const { return witness.has_value(); }
};

/// Label-preserving isomorphism p1 → p2 of labeled coalgebras, or the first language
/// present on one side only.
inline RoundtripResult match_pieces(const LocalVarietyPiece& p1, const LocalVarietyPiece& p2) {
    RoundtripResult r;
    const auto& l1 = *p1.labels;
    const auto& l2 = *p2.labels;
    std::map<LanguageId, Elem> at2;
    for (Elem y = 0; y < l2.size(); ++y) at2.emplace(l2[y], y);
    const std::set<LanguageId> s1(l1.begin(), l1.end());
    for (const auto& lang : s1)
        if (!at2.count(lang)) {
            r.counterexample = LanguageCounterexample{lang, true};
            return r;
        }
    for (const auto& [lang, y] : at2)
        if (!s1.count(lang)) {
            r.counterexample = LanguageCounterexample{lang, false};
            return r;
        }
    if (l1.size() != s1.size() || l2.size() != at2.size()) throw Error("match_pieces: states with equal languages");
    FinMorphism forward{p1.carrier, p2.carrier, std::vector<Elem>(l1.size())};
    FinMorphism backward{p2.carrier, p1.carrier, std::vector<Elem>(l2.size())};
    for (Elem x = 0; x < l1.size(); ++x) {
        forward.graph[x] = at2.at(l1[x]);
        backward.graph[forward.graph[x]] = x;
    }
    if (!is_coalgebra_morphism(p1, p2, forward) || !is_coalgebra_morphism(p2, p1, backward))
        throw Error("match_pieces: label bijection is not a coalgebra isomorphism");
    r.witness = IsoWitness{std::move(forward), std::move(backward)};
    return r;
}

/// P ≅ monoid_to_piece(piece_to_monoid(P)).
inline RoundtripResult roundtrip_check(DualityTag d, const LocalVarietyPiece& p, const Limits& limits = {}) {
    const SigmaMonoid m = piece_to_monoid(d, p, limits);
    RoundtripResult r = match_pieces(p, monoid_to_piece(d, m, limits));
    r.piece_size = p.carrier.size();
    r.monoid_size = m.size();
    return r;
}

/// Generator-preserving isomorphism M → piece_to_monoid(monoid_to_piece(M)), if any.
inline std::optional<std::vector<Elem>> monoid_roundtrip(DualityTag d, const SigmaMonoid& m, const Limits& limits = {}) {
    return monoid_isomorphism(m, piece_to_monoid(d, monoid_to_piece(d, m, limits), limits), limits);
}

/// Label inclusion P1 ⊆ P2 agrees with M1 ≤ M2 for the corresponding monoids.
inline bool order_check(DualityTag d, const LocalVarietyPiece& p1, const LocalVarietyPiece& p2, const Limits& limits = {}) {
    const std::set<LanguageId> s1 = label_set(p1), s2 = label_set(p2);
    const bool included = std::includes(s2.begin(), s2.end(), s1.begin(), s1.end());
    return included == quotient_leq(piece_to_monoid(d, p1, limits), piece_to_monoid(d, p2, limits), limits);
}

/// Smallest piece containing both.
inline LocalVarietyPiece piece_join(DualityTag d, const LocalVarietyPiece& p1, const LocalVarietyPiece& p2,
                                    const Limits& limits = {}) {
    if (p1.carrier.tag() != c_side(d) || p2.carrier.tag() != c_side(d))
        throw TagMismatch("piece_join: pieces are not on the C-side of the duality");
    return join_language_sets(p1, p2, limits);
}

/// A piece, its monoid, the reachable dual algebra of the piece, and the map sending a
/// monoid element f to its action on the initial state.
struct Correspondence {
    LocalVarietyPiece piece;
    SigmaMonoid monoid;
    DAlgebra algebra;
    FinMorphism witness;
};

inline Correspondence correspond(DualityTag d, const LocalVarietyPiece& p, const Limits& limits = {}) {
    Correspondence c{p, piece_to_monoid(d, p, limits),
                     restrict_reachable(coalgebra_to_dalgebra(d, p, limits), limits), {}};
    c.witness = FinMorphism{c.monoid.carrier, c.algebra.carrier, std::vector<Elem>(c.monoid.size())};
    const DAlgebra monoid_alg = left_action_algebra(c.monoid);
    // the unique generator-preserving algebra map from the monoid's action algebra
    std::map<Elem, Elem> image{{monoid_alg.init, c.algebra.init}};
    std::vector<Elem> queue{monoid_alg.init};
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (std::size_t a = 0; a < monoid_alg.alpha.size(); ++a) {
            const Elem x = monoid_alg.alpha[a](queue[i]);
            const Elem y = c.algebra.alpha[a](image.at(queue[i]));
            if (image.emplace(x, y).second) queue.push_back(x);
        }
    // remaining elements are D-combinations of word images; extend through the D-operations
    bool grown = true;
    while (grown && image.size() < c.monoid.size()) {
        grown = false;
        const std::vector<std::pair<Elem, Elem>> known(image.begin(), image.end());
        for (const auto& [x1, y1] : known)
            for (const auto& [x2, y2] : known) {
                std::optional<std::pair<Elem, Elem>> next;
                if (c.monoid.tag() == VarietyTag::JSL0)
                    next = {c.monoid.carrier.join(x1, x2), c.algebra.carrier.join(y1, y2)};
                else if (c.monoid.tag() == VarietyTag::Z2VECT)
                    next = {c.monoid.carrier.add(x1, x2), c.algebra.carrier.add(y1, y2)};
                if (next && image.emplace(*next).second) grown = true;
            }
        if (c.monoid.tag() == VarietyTag::JSL0 || c.monoid.tag() == VarietyTag::Z2VECT)
            if (image.emplace(c.monoid.carrier.zero(), c.algebra.carrier.zero()).second) grown = true;
    }
    for (const auto& [x, y] : image) c.witness.graph[x] = y;
    return c;
}

/// The witness is a D-algebra isomorphism from the monoid's left action algebra.
inline bool correspondence_holds(const Correspondence& c) {
    return is_isomorphism(c.witness) && is_dalgebra_morphism(left_action_algebra(c.monoid), c.algebra, c.witness);
}

}  // namespace locvar
