#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "locvar/duality.hpp"
#include "locvar/lang.hpp"
#include "locvar/variety.hpp"

namespace locvar {

/// Deterministic automaton whose states form a C-algebra: per-letter transitions gamma[a]
/// and an output morphism into 𝟚. When the states are languages, `labels[q]` is the
/// language accepted from q.
struct CCoalgebra {
    Alphabet alphabet;
    FinAlgebra carrier;
    std::vector<FinMorphism> gamma;
    FinMorphism out;
    std::optional<std::vector<LanguageId>> labels;

    bool accepting(Elem q) const { return out(q) != out.codomain.zero(); }
};

/// Deterministic automaton in a D-algebra with an initial state and no final states.
struct DAlgebra {
    Alphabet alphabet;
    FinAlgebra carrier;
    std::vector<FinMorphism> alpha;
    Elem init = 0;
};

/// A finite piece of a local variety: labeled and closed under right derivatives.
using LocalVarietyPiece = CCoalgebra;

namespace detail {

inline std::vector<Elem> apply_word(const std::vector<FinMorphism>& maps, const Alphabet& alphabet, std::string_view w,
                                    std::size_t n) {
    std::vector<Elem> f(n);
    for (Elem x = 0; x < n; ++x) f[x] = x;
    for (char c : w) {
        const auto& g = maps[alphabet.index(c)];
        for (auto& v : f) v = g(v);
    }
    return f;
}

}  // namespace detail

/// γ_w = γ_{a_n} ∘ … ∘ γ_{a_1}.
inline FinMorphism transition(const CCoalgebra& q, std::string_view w) {
    return FinMorphism{q.carrier, q.carrier, detail::apply_word(q.gamma, q.alphabet, w, q.carrier.size())};
}

/// Q_w = (Q, γ_a, out ∘ γ_w). Labels are dropped since state languages change.
inline CCoalgebra coalg_shift(const CCoalgebra& q, std::string_view w) {
    CCoalgebra out = q;
    out.out = compose(q.out, transition(q, w));
    out.labels.reset();
    return out;
}

/// A_w = (A, α_a, α_w(init)).
inline DAlgebra alg_shift(const DAlgebra& a, std::string_view w) {
    DAlgebra out = a;
    for (char c : w) out.init = a.alpha[a.alphabet.index(c)](out.init);
    return out;
}

/// Distinct maps γ_w together with a shortest representative word, in breadth-first order.
/// Right derivatives by w depend only on γ_w, so these words suffice for every w ∈ Σ*.
inline std::vector<std::pair<std::string, std::vector<Elem>>> transition_words(const CCoalgebra& q) {
    const std::size_t n = q.carrier.size();
    std::vector<std::pair<std::string, std::vector<Elem>>> out{{"", detail::apply_word(q.gamma, q.alphabet, "", n)}};
    std::set<std::vector<Elem>> seen{out.front().second};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::size_t a = 0; a < q.alphabet.size(); ++a) {
            std::vector<Elem> f = out[i].second;
            for (auto& v : f) v = q.gamma[a](v);
            if (seen.insert(f).second) out.emplace_back(out[i].first + q.alphabet[a], std::move(f));
        }
    }
    return out;
}

/// The language {w : out(γ_w(state)) = 1}, read off the part of the carrier reachable from
/// `state`.
inline LanguageId state_language(const CCoalgebra& q, Elem state) {
    const std::size_t k = q.alphabet.size();
    std::map<Elem, State> index{{state, 0}};
    std::vector<Elem> order{state};
    Dfa d;
    d.alphabet = q.alphabet;
    for (std::size_t i = 0; i < order.size(); ++i) {
        d.finals.push_back(q.accepting(order[i]));
        for (std::size_t a = 0; a < k; ++a) {
            const Elem t = q.gamma[a](order[i]);
            auto [it, fresh] = index.emplace(t, static_cast<State>(order.size()));
            if (fresh) order.push_back(t);
            d.delta.push_back(it->second);
        }
    }
    d.states = order.size();
    d.initial = 0;
    return LanguageId::from_dfa(d);
}

inline std::set<LanguageId> label_set(const CCoalgebra& q) {
    if (!q.labels) throw Error("coalgebra carries no labels");
    return {q.labels->begin(), q.labels->end()};
}

/// Labels form the coalgebra homomorphism into the automaton of languages:
/// label(γ_a q) = a⁻¹ label(q) and out(q) = 1 iff ε ∈ label(q).
inline bool labels_consistent(const CCoalgebra& q) {
    if (!q.labels || q.labels->size() != q.carrier.size()) return false;
    const auto& lab = *q.labels;
    for (Elem x = 0; x < q.carrier.size(); ++x) {
        if (q.accepting(x) != lab[x].contains_epsilon()) return false;
        for (std::size_t a = 0; a < q.alphabet.size(); ++a)
            if (lab[q.gamma[a](x)] != left_derivative(lab[x], std::string(1, q.alphabet[a]))) return false;
    }
    return true;
}

struct RqcViolation {
    LanguageId language;
    std::string word;
};

/// First language L of the labels and word w with Lw⁻¹ missing from the labels, if any.
inline std::optional<RqcViolation> find_rqc_violation(const CCoalgebra& q) {
    const std::set<LanguageId> labels = label_set(q);
    for (const auto& [w, map] : transition_words(q)) {
        if (w.empty()) continue;
        for (const auto& lang : labels)
            if (!labels.count(right_derivative(lang, w))) return RqcViolation{lang, w};
    }
    return std::nullopt;
}

inline bool is_rqc_closed(const CCoalgebra& q) { return !find_rqc_violation(q).has_value(); }

namespace detail {

using CellMask = boost::dynamic_bitset<>;

/// The atoms ("cells") of the boolean algebra generated by a set of languages closed under
/// left derivatives, with the derivative action on cells.
struct CellSystem {
    Alphabet alphabet;
    std::vector<LanguageId> cells;
    std::vector<std::string> representative;  // shortest word of each cell
    std::vector<CellMask> seed_masks;
    std::vector<std::vector<CellMask>> derivative;  // derivative[a][i] = a⁻¹ cell_i as a union of cells
    std::size_t epsilon_cell = 0;

    CellMask empty() const { return CellMask(cells.size()); }
    CellMask full() const { return ~empty(); }

    CellMask derive(const CellMask& m, std::size_t a) const {
        CellMask r = empty();
        for (auto i = m.find_first(); i != CellMask::npos; i = m.find_next(i)) r |= derivative[a][i];
        return r;
    }
};

inline std::string shortest_word(const LanguageId& lang) {
    const Dfa& d = lang.dfa();
    std::vector<std::optional<std::string>> word(d.states);
    word[d.initial] = "";
    std::vector<State> queue{d.initial};
    for (std::size_t i = 0; i < queue.size(); ++i) {
        if (d.is_final(queue[i])) return *word[queue[i]];
        for (std::size_t a = 0; a < d.alphabet.size(); ++a) {
            const State t = d.next(queue[i], a);
            if (!word[t]) {
                word[t] = *word[queue[i]] + d.alphabet[a];
                queue.push_back(t);
            }
        }
    }
    throw Error("shortest_word: empty language");
}

inline CellSystem make_cells(const Alphabet& alphabet, const std::vector<LanguageId>& seeds, std::size_t max_cells) {
    CellSystem cs;
    cs.alphabet = alphabet;
    std::vector<LanguageId> cells{LanguageId::full(alphabet)};
    for (const auto& s : seeds) {
        std::vector<LanguageId> next;
        for (const auto& c : cells) {
            for (auto part : {intersection_of(c, s), difference_of(c, s)})
                if (!part.is_empty()) next.push_back(std::move(part));
        }
        cells = std::move(next);
        if (cells.size() > max_cells) throw ResourceExceeded("language closure has too many atoms");
    }
    std::sort(cells.begin(), cells.end());
    cs.cells = std::move(cells);
    const std::size_t m = cs.cells.size();
    for (const auto& c : cs.cells) cs.representative.push_back(shortest_word(c));
    for (std::size_t i = 0; i < m; ++i)
        if (cs.representative[i].empty()) cs.epsilon_cell = i;
    for (const auto& s : seeds) {
        CellMask mask(m);
        for (std::size_t i = 0; i < m; ++i) mask[i] = accepts(s, cs.representative[i]);
        cs.seed_masks.push_back(mask);
    }
    // a⁻¹ cell_i is a union of cells; cell_j belongs to it iff a·rep_j ∈ cell_i
    cs.derivative.assign(alphabet.size(), std::vector<CellMask>(m, CellMask(m)));
    for (std::size_t a = 0; a < alphabet.size(); ++a)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                cs.derivative[a][i][j] = accepts(cs.cells[i], std::string(1, alphabet[a]) + cs.representative[j]);
    return cs;
}

/// Builds the labeled coalgebra on the C-closure of the seeds. The C-closure of the seeds
/// must be closed under left derivatives.
inline CCoalgebra build_piece(VarietyTag tag, const Alphabet& alphabet, const std::vector<LanguageId>& seeds,
                              const Limits& limits) {
    if (!is_c_side(tag)) throw TagMismatch("coalgebra carriers must be BA, DL01, JSL0 or Z2VECT");
    for (const auto& s : seeds)
        if (s.alphabet() != alphabet) throw Error("generators use different alphabets");
    std::size_t max_cells = 64;
    if (tag == VarietyTag::BA) {
        max_cells = 0;
        while ((std::size_t{2} << max_cells) <= limits.max_carrier) ++max_cells;
    } else {
        max_cells = std::max<std::size_t>(limits.max_carrier, 64);
    }
    const CellSystem cs = make_cells(alphabet, seeds, max_cells);
    const std::size_t m = cs.cells.size();

    FinAlgebra carrier;
    std::vector<CellMask> elements;  // element index → cell mask
    switch (tag) {
        case VarietyTag::BA: {
            carrier = FinAlgebra::boolean(m, limits);
            for (Elem x = 0; x < carrier.size(); ++x) {
                CellMask mask(m);
                for (std::size_t i = 0; i < m; ++i) mask[i] = x >> i & 1;
                elements.push_back(mask);
            }
            break;
        }
        case VarietyTag::Z2VECT: {
            std::vector<CellMask> basis;
            std::map<CellMask, Elem> seen{{cs.empty(), 0}};
            elements.push_back(cs.empty());
            for (const auto& s : cs.seed_masks) {
                if (seen.count(s)) continue;
                if (elements.size() * 2 > limits.max_carrier) throw ResourceExceeded("Z2 closure exceeds carrier cap");
                const Elem bit = static_cast<Elem>(elements.size());
                const std::size_t half = elements.size();
                for (Elem x = 0; x < half; ++x) {
                    elements.push_back(elements[x] ^ s);
                    seen.emplace(elements.back(), x | bit);
                }
                basis.push_back(s);
            }
            carrier = FinAlgebra::vector_space(basis.size(), limits);
            break;
        }
        case VarietyTag::JSL0: {
            std::set<CellMask> seen{cs.empty()};
            elements.push_back(cs.empty());
            for (const auto& s : cs.seed_masks) {
                const std::size_t count = elements.size();
                for (std::size_t x = 0; x < count; ++x) {
                    CellMask u = elements[x] | s;
                    if (seen.insert(u).second) {
                        if (seen.size() > limits.max_carrier) throw ResourceExceeded("union closure exceeds carrier cap");
                        elements.push_back(std::move(u));
                    }
                }
            }
            std::sort(elements.begin(), elements.end(), [](const CellMask& a, const CellMask& b) {
                return a.count() != b.count() ? a.count() < b.count() : a < b;
            });
            std::map<CellMask, Elem> index;
            for (Elem x = 0; x < elements.size(); ++x) index.emplace(elements[x], x);
            carrier = semilattice_from(
                elements.size(), 0, [&](Elem x, Elem y) { return index.at(elements[x] | elements[y]); }, limits);
            break;
        }
        case VarietyTag::DL01: {
            // meet-closure of the seeds and Σ*; the join-irreducibles are among these
            std::set<CellMask> meets{cs.full()};
            std::vector<CellMask> order{cs.full()};
            for (const auto& s : cs.seed_masks) {
                const std::size_t count = order.size();
                for (std::size_t x = 0; x < count; ++x) {
                    CellMask u = order[x] & s;
                    if (meets.insert(u).second) {
                        if (meets.size() > limits.max_carrier) throw ResourceExceeded("lattice closure exceeds carrier cap");
                        order.push_back(std::move(u));
                    }
                }
            }
            std::vector<CellMask> jis;
            for (const auto& x : order) {
                if (x.none()) continue;
                CellMask below = cs.empty();
                for (const auto& y : order)
                    if (y != x && y.is_subset_of(x)) below |= y;
                if (below != x) jis.push_back(x);
            }
            std::sort(jis.begin(), jis.end(), [](const CellMask& a, const CellMask& b) {
                return a.count() != b.count() ? a.count() < b.count() : a < b;
            });
            Relation ji_order(jis.size());
            for (std::size_t i = 0; i < jis.size(); ++i)
                for (std::size_t j = 0; j < jis.size(); ++j) ji_order.set(i, j, jis[i].is_subset_of(jis[j]));
            carrier = FinAlgebra::distributive(ji_order, limits);
            for (Mask d : carrier.downsets()) {
                CellMask u = cs.empty();
                for (std::size_t j = 0; j < jis.size(); ++j)
                    if (d >> j & 1) u |= jis[j];
                elements.push_back(u);
            }
            break;
        }
        default: break;
    }

    std::map<CellMask, Elem> index;
    for (Elem x = 0; x < elements.size(); ++x) index.emplace(elements[x], x);
    if (index.size() != elements.size()) throw Error("build_piece: element masks are not distinct");

    CCoalgebra q;
    q.alphabet = alphabet;
    q.carrier = carrier;
    for (std::size_t a = 0; a < alphabet.size(); ++a) {
        FinMorphism g{carrier, carrier, std::vector<Elem>(carrier.size())};
        for (Elem x = 0; x < carrier.size(); ++x) {
            const auto it = index.find(cs.derive(elements[x], a));
            if (it == index.end()) throw Error("build_piece: closure is not closed under left derivatives");
            g.graph[x] = it->second;
        }
        q.gamma.push_back(std::move(g));
    }
    const FinAlgebra two = two_object(tag);
    q.out = FinMorphism{carrier, two, std::vector<Elem>(carrier.size())};
    for (Elem x = 0; x < carrier.size(); ++x) q.out.graph[x] = elements[x][cs.epsilon_cell] ? 1 : 0;

    // label(x) = union of its cells, built incrementally from the mask with its last cell removed
    std::map<CellMask, LanguageId> memo{{cs.empty(), LanguageId::empty(alphabet)}};
    auto label = [&](auto&& self, const CellMask& mask) -> LanguageId {
        if (auto it = memo.find(mask); it != memo.end()) return it->second;
        std::size_t last = mask.find_first();
        for (auto i = last; i != CellMask::npos; i = mask.find_next(i)) last = i;
        CellMask rest = mask;
        rest.reset(last);
        LanguageId l = union_of(self(self, rest), cs.cells[last]);
        memo.emplace(mask, l);
        return l;
    };
    std::vector<LanguageId> labels;
    for (const auto& e : elements) labels.push_back(label(label, e));
    q.labels = std::move(labels);
    return q;
}

inline Alphabet common_alphabet(const std::vector<LanguageId>& gens) {
    if (gens.empty()) throw Error("at least one generator language is required");
    return gens.front().alphabet();
}

}  // namespace detail

/// Smallest set of languages containing `gens`, closed under left derivatives and the
/// operations of `tag` (BA: ∪ ∩ complement; DL01: ∪ ∩ ∅ Σ*; JSL0: ∪ ∅; Z2VECT: Δ ∅).
inline CCoalgebra generate_subcoalgebra(VarietyTag tag, const std::vector<LanguageId>& gens, const Limits& limits = {}) {
    const Alphabet alphabet = detail::common_alphabet(gens);
    std::set<LanguageId> seeds;
    for (const auto& g : gens) seeds.merge(residuals(g));
    return detail::build_piece(tag, alphabet, {seeds.begin(), seeds.end()}, limits);
}

/// As generate_subcoalgebra, additionally closed under right derivatives.
inline CCoalgebra rqc_closure(VarietyTag tag, const std::vector<LanguageId>& gens, const Limits& limits = {}) {
    const Alphabet alphabet = detail::common_alphabet(gens);
    std::set<LanguageId> seeds;
    for (const auto& g : gens) seeds.merge(two_sided_residuals(g));
    return detail::build_piece(tag, alphabet, {seeds.begin(), seeds.end()}, limits);
}

/// Elements that generate the carrier under its operations: atoms, join-irreducibles or a
/// basis; every element for SET and POS.
inline std::vector<Elem> carrier_generators(const FinAlgebra& a) {
    std::vector<Elem> out;
    switch (a.tag()) {
        case VarietyTag::BA:
            for (std::size_t i = 0; i < a.atoms(); ++i) out.push_back(Elem{1} << i);
            break;
        case VarietyTag::Z2VECT:
            for (std::size_t i = 0; i < a.dim(); ++i) out.push_back(Elem{1} << i);
            break;
        case VarietyTag::DL01:
            for (std::size_t j = 0; j < a.ji_order().size(); ++j) out.push_back(principal_downset(a, j));
            break;
        case VarietyTag::JSL0: out = join_irreducibles(a); break;
        default:
            for (Elem x = 0; x < a.size(); ++x) out.push_back(x);
    }
    return out;
}

/// C-closure of the labels of two derivative-closed pieces over the same variety.
inline CCoalgebra join_language_sets(const CCoalgebra& p1, const CCoalgebra& p2, const Limits& limits = {}) {
    if (p1.carrier.tag() != p2.carrier.tag()) throw TagMismatch("pieces over different varieties");
    std::set<LanguageId> seeds;
    for (const auto* p : {&p1, &p2})
        for (Elem g : carrier_generators(p->carrier)) seeds.insert(p->labels->at(g));
    return detail::build_piece(p1.carrier.tag(), p1.alphabet, {seeds.begin(), seeds.end()}, limits);
}

/// Finals become the initial state of the dual algebra; transitions dualize letterwise.
inline DAlgebra coalgebra_to_dalgebra(DualityTag d, const CCoalgebra& q, const Limits& limits = {}) {
    if (q.carrier.tag() != c_side(d)) throw TagMismatch("coalgebra_to_dalgebra: carrier is not on the C-side of the duality");
    DAlgebra a;
    a.alphabet = q.alphabet;
    a.carrier = dual_object(d, q.carrier, limits);
    for (const auto& g : q.gamma) a.alpha.push_back(dual_morphism(d, g, a.carrier, a.carrier));
    a.init = dual_morphism(d, q.out, dual_object(d, q.out.codomain, limits), a.carrier)(dual_two_generator(d));
    return a;
}

/// The D-morphism 𝟙 → A that picks the initial state.
inline FinMorphism initial_morphism(DualityTag d, const DAlgebra& a) {
    const FinAlgebra one = free_on_one(d_side(d));
    FinMorphism m{one, a.carrier, std::vector<Elem>(one.size())};
    for (Elem x = 0; x < one.size(); ++x) m.graph[x] = x == free_generator(d_side(d)) ? a.init : a.carrier.zero();
    return m;
}

inline CCoalgebra dalgebra_to_coalgebra(DualityTag d, const DAlgebra& a, const Limits& limits = {}) {
    if (a.carrier.tag() != d_side(d)) throw TagMismatch("dalgebra_to_coalgebra: carrier is not on the D-side of the duality");
    CCoalgebra q;
    q.alphabet = a.alphabet;
    q.carrier = dual_object(d, a.carrier, limits);
    for (const auto& f : a.alpha) q.gamma.push_back(dual_morphism(d, f, q.carrier, q.carrier));
    const FinMorphism init = initial_morphism(d, a);
    q.out = compose(dual_one_to_two(d), dual_morphism(d, init, q.carrier, dual_object(d, init.domain, limits)));
    return q;
}

/// Computes every state language and attaches it as a label.
inline CCoalgebra with_state_labels(CCoalgebra q) {
    std::vector<LanguageId> labels;
    labels.reserve(q.carrier.size());
    for (Elem x = 0; x < q.carrier.size(); ++x) labels.push_back(state_language(q, x));
    q.labels = std::move(labels);
    return q;
}

/// Smallest D-subalgebra containing init and closed under the letter actions.
inline std::vector<Elem> reachable_elements(const DAlgebra& a, const Limits& limits = {}) {
    std::vector<Elem> current{a.init};
    for (;;) {
        std::vector<Elem> grown = current;
        for (Elem x : current)
            for (const auto& f : a.alpha) grown.push_back(f(x));
        const Subalgebra sub = generate_subalgebra(a.carrier, grown, limits);
        std::vector<Elem> next = sub.inclusion.graph;
        std::sort(next.begin(), next.end());
        if (next == current) return current;
        current = std::move(next);
    }
}

inline bool is_reachable(const DAlgebra& a) { return reachable_elements(a).size() == a.carrier.size(); }

/// Restriction to the reachable part.
inline DAlgebra restrict_reachable(const DAlgebra& a, const Limits& limits = {}) {
    const std::vector<Elem> reach = reachable_elements(a, limits);
    const Subalgebra sub = generate_subalgebra(a.carrier, reach, limits);
    std::vector<Elem> back(a.carrier.size(), ~Elem{0});
    for (Elem x = 0; x < sub.algebra.size(); ++x) back[sub.inclusion(x)] = x;
    DAlgebra out;
    out.alphabet = a.alphabet;
    out.carrier = sub.algebra;
    for (const auto& f : a.alpha) {
        FinMorphism g{sub.algebra, sub.algebra, std::vector<Elem>(sub.algebra.size())};
        for (Elem x = 0; x < sub.algebra.size(); ++x) g.graph[x] = back[f(sub.inclusion(x))];
        out.alpha.push_back(std::move(g));
    }
    out.init = back[a.init];
    return out;
}

/// h is a coalgebra homomorphism: h ∘ γ_a = γ'_a ∘ h and out' ∘ h = out.
inline bool is_coalgebra_morphism(const CCoalgebra& q1, const CCoalgebra& q2, const FinMorphism& h) {
    if (!validate_morphism(h)) return false;
    for (Elem x = 0; x < q1.carrier.size(); ++x) {
        if (q2.out(h(x)) != q1.out(x)) return false;
        for (std::size_t a = 0; a < q1.gamma.size(); ++a)
            if (h(q1.gamma[a](x)) != q2.gamma[a](h(x))) return false;
    }
    return true;
}

/// h is an algebra homomorphism: h ∘ α_a = α'_a ∘ h and h(init) = init'.
inline bool is_dalgebra_morphism(const DAlgebra& a1, const DAlgebra& a2, const FinMorphism& h) {
    if (!validate_morphism(h) || h(a1.init) != a2.init) return false;
    for (Elem x = 0; x < a1.carrier.size(); ++x)
        for (std::size_t a = 0; a < a1.alpha.size(); ++a)
            if (h(a1.alpha[a](x)) != a2.alpha[a](h(x))) return false;
    return true;
}

}  // namespace locvar
