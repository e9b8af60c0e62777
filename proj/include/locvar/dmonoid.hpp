#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "locvar/automata.hpp"
#include "locvar/variety.hpp"

namespace locvar {

/// Normal form of an element of the free D-monoid on Σ: a single word for SET and POS, a
/// finite language for JSL0 (under union) and Z2VECT (under symmetric difference).
struct FreeElement {
    VarietyTag tag = VarietyTag::SET;
    std::vector<std::string> words;  // sorted, duplicate-free

    static FreeElement word(VarietyTag tag, std::string w) { return {tag, {std::move(w)}}; }
    static FreeElement language(VarietyTag tag, std::vector<std::string> ws) {
        std::sort(ws.begin(), ws.end());
        ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
        return {tag, std::move(ws)};
    }
    static FreeElement unit(VarietyTag tag) { return {tag, {""}}; }

    friend bool operator==(const FreeElement&, const FreeElement&) = default;
};

/// Multiplication of the free D-monoid: concatenation of words (SET, POS), of languages
/// (JSL0), or Z2-weighted concatenation keeping the words with an odd number of
/// factorizations (Z2VECT).
inline FreeElement free_mult(const FreeElement& x, const FreeElement& y) {
    if (x.tag != y.tag) throw TagMismatch("free_mult: tags differ");
    switch (x.tag) {
        case VarietyTag::SET:
        case VarietyTag::POS:
            if (x.words.size() != 1 || y.words.size() != 1) throw Error("free_mult: SET/POS elements are single words");
            return FreeElement::word(x.tag, x.words[0] + y.words[0]);
        case VarietyTag::JSL0: {
            std::vector<std::string> out;
            for (const auto& u : x.words)
                for (const auto& v : y.words) out.push_back(u + v);
            return FreeElement::language(x.tag, std::move(out));
        }
        case VarietyTag::Z2VECT: {
            std::map<std::string, bool> parity;
            for (const auto& u : x.words)
                for (const auto& v : y.words) parity[u + v] ^= true;
            FreeElement r{x.tag, {}};
            for (const auto& [w, odd] : parity)
                if (odd) r.words.push_back(w);
            return r;
        }
        default: throw TagMismatch("free_mult: not a D-side variety");
    }
}

/// A finite Σ-generated D-monoid. `mult` is row-major; `gen[a]` is the image of letter a.
struct SigmaMonoid {
    Alphabet alphabet;
    FinAlgebra carrier;
    Elem unit = 0;
    std::vector<Elem> mult;
    std::vector<Elem> gen;

    std::size_t size() const noexcept { return carrier.size(); }
    Elem mul(Elem x, Elem y) const { return mult[x * size() + y]; }
    VarietyTag tag() const { return carrier.tag(); }
};

/// Image of a free element under the unique generator-preserving D-monoid morphism.
inline Elem eval_word(const SigmaMonoid& m, const FreeElement& x) {
    if (x.tag != m.tag()) throw TagMismatch("eval_word: tags differ");
    auto word = [&m](const std::string& w) {
        Elem r = m.unit;
        for (char c : w) r = m.mul(r, m.gen[m.alphabet.index(c)]);
        return r;
    };
    switch (m.tag()) {
        case VarietyTag::SET:
        case VarietyTag::POS:
            if (x.words.size() != 1) throw Error("eval_word: SET/POS elements are single words");
            return word(x.words[0]);
        case VarietyTag::JSL0: {
            Elem r = m.carrier.zero();
            for (const auto& w : x.words) r = m.carrier.join(r, word(w));
            return r;
        }
        case VarietyTag::Z2VECT: {
            Elem r = 0;
            for (const auto& w : x.words) r ^= word(w);
            return r;
        }
        default: throw TagMismatch("eval_word: not a D-side variety");
    }
}

inline Elem eval_word(const SigmaMonoid& m, std::string_view w) {
    Elem r = m.unit;
    for (char c : w) r = m.mul(r, m.gen[m.alphabet.index(c)]);
    return r;
}

namespace detail {

/// Elements of a D-algebra built by closing a list of abstract items under the D-operations
/// and assigning carrier indices. `Item` must be ordered; `join`/`add` act on items.
template <typename Item>
struct DClosure {
    std::vector<Item> items;  // carrier index → item
    FinAlgebra carrier;
};

/// Closes `seeds` (already closed under multiplication) under the D-operations of `tag`
/// and builds the carrier. `leq` orders items for POS, `join` joins them for JSL0, `add`
/// sums them for Z2VECT, and `zero` is the D-zero item.
template <typename Item, typename Leq, typename Join, typename Add>
DClosure<Item> d_closure(VarietyTag tag, std::vector<Item> seeds, const Item& zero, Leq leq, Join join, Add add,
                         const Limits& limits) {
    DClosure<Item> out;
    switch (tag) {
        case VarietyTag::SET:
        case VarietyTag::POS: {
            out.items = std::move(seeds);
            if (out.items.size() > limits.max_carrier) throw ResourceExceeded("monoid exceeds carrier cap");
            if (tag == VarietyTag::SET) {
                out.carrier = FinAlgebra::set(out.items.size(), limits);
            } else {
                Relation r(out.items.size());
                for (std::size_t i = 0; i < out.items.size(); ++i)
                    for (std::size_t j = 0; j < out.items.size(); ++j) r.set(i, j, leq(out.items[i], out.items[j]));
                out.carrier = FinAlgebra::poset(r, limits);
            }
            return out;
        }
        case VarietyTag::JSL0: {
            std::unordered_map<Item, Elem, boost::hash<Item>> index{{zero, 0}};
            out.items.push_back(zero);
            for (const auto& s : seeds) {
                if (index.count(s)) continue;
                const std::size_t count = out.items.size();
                for (std::size_t x = 0; x < count; ++x) {
                    Item u = join(out.items[x], s);
                    if (index.emplace(u, static_cast<Elem>(out.items.size())).second) {
                        if (out.items.size() >= limits.max_carrier) throw ResourceExceeded("monoid exceeds carrier cap");
                        out.items.push_back(std::move(u));
                    }
                }
            }
            out.carrier = semilattice_from(
                out.items.size(), 0, [&](Elem x, Elem y) { return index.at(join(out.items[x], out.items[y])); }, limits);
            return out;
        }
        case VarietyTag::Z2VECT: {
            std::unordered_set<Item, boost::hash<Item>> seen{zero};
            out.items.push_back(zero);
            std::size_t dim = 0;
            for (const auto& s : seeds) {
                if (seen.count(s)) continue;
                if (out.items.size() * 2 > limits.max_carrier) throw ResourceExceeded("monoid exceeds carrier cap");
                const std::size_t half = out.items.size();
                for (std::size_t x = 0; x < half; ++x) {
                    out.items.push_back(add(out.items[x], s));
                    seen.insert(out.items.back());
                }
                ++dim;
            }
            out.carrier = FinAlgebra::vector_space(dim, limits);
            return out;
        }
        default: throw TagMismatch("not a D-side variety");
    }
}

}  // namespace detail

/// The monoid of letter actions of a reachable D-algebra: the D-closure of the maps α_w,
/// multiplied in word order (x·y applies x first, then y), with unit the identity and
/// gen(a) = α_a.
inline SigmaMonoid transition_monoid(const DAlgebra& a, const Limits& limits = {}) {
    if (!is_reachable(a)) throw NotReachable("transition_monoid: algebra is not reachable from its initial state");
    using Map = std::vector<Elem>;
    const FinAlgebra& c = a.carrier;
    const std::size_t n = c.size();
    const VarietyTag tag = c.tag();

    // A D-endomorphism is determined by its values on generators of the carrier, so maps
    // are identified by those values (the key) and expanded to full maps on demand.
    const std::vector<Elem> gens = carrier_generators(c);
    const std::size_t g = gens.size();
    std::vector<std::vector<std::uint32_t>> below(tag == VarietyTag::JSL0 ? n : 0);
    for (Elem z = 0; z < below.size(); ++z)
        for (std::uint32_t i = 0; i < g; ++i)
            if (c.leq(gens[i], z)) below[z].push_back(i);
    const auto key_of = [&](const Map& full) {
        Map k(g);
        for (std::size_t i = 0; i < g; ++i) k[i] = full[gens[i]];
        return k;
    };
    const auto expand = [&](const Map& key) {
        if (tag == VarietyTag::SET || tag == VarietyTag::POS) return key;
        Map full(n);
        for (Elem z = 0; z < n; ++z) {
            Elem v = c.zero();
            if (tag == VarietyTag::JSL0) {
                for (auto i : below[z]) v = c.join(v, key[i]);
            } else {
                for (std::size_t i = 0; i < g; ++i)
                    if (z >> i & 1) v ^= key[i];
            }
            full[z] = v;
        }
        return full;
    };

    Map id(n);
    for (Elem x = 0; x < n; ++x) id[x] = x;
    std::vector<Map> words{id}, word_keys{key_of(id)};
    std::unordered_set<Map, boost::hash<Map>> seen{word_keys.front()};
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (const auto& f : a.alpha) {
            Map next(n);
            for (Elem x = 0; x < n; ++x) next[x] = f(words[i][x]);
            Map k = key_of(next);
            if (seen.insert(k).second) {
                if (words.size() >= limits.max_carrier) throw ResourceExceeded("transition monoid exceeds carrier cap");
                words.push_back(std::move(next));
                word_keys.push_back(std::move(k));
            }
        }
    }
    const Map zero(g, tag == VarietyTag::JSL0 || tag == VarietyTag::Z2VECT ? c.zero() : 0);
    const auto closure = detail::d_closure<Map>(
        tag, word_keys, zero,
        [&](const Map& f, const Map& h) {
            for (std::size_t i = 0; i < g; ++i)
                if (!c.leq(f[i], h[i])) return false;
            return true;
        },
        [&](const Map& f, const Map& h) {
            Map r(g);
            for (std::size_t i = 0; i < g; ++i) r[i] = c.join(f[i], h[i]);
            return r;
        },
        [&](const Map& f, const Map& h) {
            Map r(g);
            for (std::size_t i = 0; i < g; ++i) r[i] = f[i] ^ h[i];
            return r;
        },
        limits);

    const std::size_t k = closure.items.size();
    std::unordered_map<Map, Elem, boost::hash<Map>> index;
    std::vector<Map> full;
    full.reserve(k);
    for (Elem i = 0; i < k; ++i) {
        index.emplace(closure.items[i], i);
        full.push_back(expand(closure.items[i]));
    }
    SigmaMonoid m;
    m.alphabet = a.alphabet;
    m.carrier = closure.carrier;
    m.mult.resize(k * k);
    Map h(g);
    for (Elem i = 0; i < k; ++i) {
        for (Elem j = 0; j < k; ++j) {
            for (std::size_t x = 0; x < g; ++x) h[x] = full[j][closure.items[i][x]];
            m.mult[i * k + j] = index.at(h);
        }
    }
    m.unit = index.at(key_of(id));
    for (const auto& f : a.alpha) m.gen.push_back(index.at(key_of(f.graph)));
    return m;
}

/// The same carrier with multiplication reversed.
inline SigmaMonoid opposite(const SigmaMonoid& m) {
    SigmaMonoid r = m;
    const std::size_t k = m.size();
    for (Elem i = 0; i < k; ++i)
        for (Elem j = 0; j < k; ++j) r.mult[i * k + j] = m.mul(j, i);
    return r;
}

/// Smallest set containing the unit and generators, closed under mult and the D-operations.
inline std::vector<Elem> generated_elements(const SigmaMonoid& m) {
    std::set<Elem> seen{m.unit};
    std::vector<Elem> order{m.unit};
    auto add = [&](Elem e) {
        if (seen.insert(e).second) order.push_back(e);
    };
    for (Elem g : m.gen) add(g);
    if (m.tag() == VarietyTag::JSL0 || m.tag() == VarietyTag::Z2VECT) add(m.carrier.zero());
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const Elem x = order[i], y = order[j];
            add(m.mul(x, y));
            add(m.mul(y, x));
            if (m.tag() == VarietyTag::JSL0) add(m.carrier.join(x, y));
            if (m.tag() == VarietyTag::Z2VECT) add(m.carrier.add(x, y));
        }
    }
    return order;
}

struct MonoidCheck {
    bool associative = true;
    bool unital = true;
    bool bilinear = true;
    bool generated = true;
    bool ok() const { return associative && unital && bilinear && generated; }
};

namespace detail {

/// Both translations x·− and −·x are D-morphisms, for every x. Join preservation is checked
/// against join-irreducibles (f(y ∨ j) = f(y) ∨ f(j) for all y and irreducible j, plus
/// f(0) = 0, implies it for all pairs); linearity against a basis; monotonicity on related
/// pairs. Each reduction is equivalent to the full law.
inline bool bilinear(const SigmaMonoid& m) {
    const FinAlgebra& c = m.carrier;
    const std::size_t k = m.size();
    const Elem* t = m.mult.data();
    switch (m.tag()) {
        case VarietyTag::SET: return true;
        case VarietyTag::POS: {
            std::vector<std::pair<Elem, Elem>> related;
            for (Elem y = 0; y < k; ++y)
                for (Elem z = 0; z < k; ++z)
                    if (y != z && c.leq(y, z)) related.emplace_back(y, z);
            for (Elem x = 0; x < k; ++x)
                for (const auto& [y, z] : related)
                    if (!c.leq(t[x * k + y], t[x * k + z]) || !c.leq(t[y * k + x], t[z * k + x])) return false;
            return true;
        }
        case VarietyTag::JSL0: {
            const std::vector<Elem> jis = join_irreducibles(c);
            const Elem zero = c.zero();
            for (Elem x = 0; x < k; ++x) {
                if (t[x * k + zero] != zero || t[zero * k + x] != zero) return false;
                for (Elem y = 0; y < k; ++y)
                    for (Elem j : jis) {
                        const Elem yj = c.join(y, j);
                        if (t[x * k + yj] != c.join(t[x * k + y], t[x * k + j])) return false;
                        if (t[yj * k + x] != c.join(t[y * k + x], t[j * k + x])) return false;
                    }
            }
            return true;
        }
        case VarietyTag::Z2VECT: {
            for (Elem x = 0; x < k; ++x)
                for (Elem y = 0; y < k; ++y) {
                    Elem left = 0, right = 0;
                    for (std::size_t i = 0; i < c.dim(); ++i)
                        if (y >> i & 1) {
                            left ^= t[x * k + (Elem{1} << i)];
                            right ^= t[(Elem{1} << i) * k + x];
                        }
                    if (t[x * k + y] != left || t[y * k + x] != right) return false;
                }
            return true;
        }
        default: return false;
    }
}

}  // namespace detail

/// Exhaustive check of associativity, unit, bilinearity and Σ-generation.
inline MonoidCheck check_monoid(const SigmaMonoid& m) {
    MonoidCheck r;
    const std::size_t k = m.size();
    if (m.mult.size() != k * k || m.unit >= k || m.gen.size() != m.alphabet.size()) {
        r.associative = r.unital = r.bilinear = r.generated = false;
        return r;
    }
    for (Elem e : m.mult)
        if (e >= k) {
            r.associative = r.unital = r.bilinear = r.generated = false;
            return r;
        }
    r.bilinear = detail::bilinear(m);
    const Elem* t = m.mult.data();
    if (r.bilinear && (m.tag() == VarietyTag::JSL0 || m.tag() == VarietyTag::Z2VECT)) {
        // (xy)z and x(yz) are then additive in each argument, so they agree everywhere iff
        // they agree on carrier generators
        const std::vector<Elem> g = carrier_generators(m.carrier);
        for (Elem x : g)
            for (Elem y : g)
                for (Elem z : g)
                    if (m.mul(m.mul(x, y), z) != m.mul(x, m.mul(y, z))) r.associative = false;
    } else {
        for (Elem x = 0; x < k && r.associative; ++x)
            for (Elem y = 0; y < k && r.associative; ++y) {
                const Elem* xy_row = t + std::size_t{t[x * k + y]} * k;
                const Elem* x_row = t + std::size_t{x} * k;
                const Elem* y_row = t + std::size_t{y} * k;
                for (Elem z = 0; z < k; ++z)
                    if (xy_row[z] != x_row[y_row[z]]) {
                        r.associative = false;
                        break;
                    }
            }
    }
    for (Elem x = 0; x < k; ++x)
        if (m.mul(m.unit, x) != x || m.mul(x, m.unit) != x) r.unital = false;
    r.generated = generated_elements(m).size() == k;
    return r;
}

inline bool validate_monoid(const SigmaMonoid& m) { return check_monoid(m).ok(); }

/// The one-element Σ-generated D-monoid.
inline SigmaMonoid trivial_monoid(VarietyTag tag, const Alphabet& alphabet) {
    SigmaMonoid m;
    m.alphabet = alphabet;
    switch (tag) {
        case VarietyTag::SET: m.carrier = FinAlgebra::set(1); break;
        case VarietyTag::POS: {
            Relation r(1);
            r.set(0, 0);
            m.carrier = FinAlgebra::poset(r);
            break;
        }
        case VarietyTag::JSL0: m.carrier = FinAlgebra::semilattice(1, {0}, 0); break;
        case VarietyTag::Z2VECT: m.carrier = FinAlgebra::vector_space(0); break;
        default: throw TagMismatch("trivial_monoid: not a D-side variety");
    }
    m.unit = 0;
    m.mult = {0};
    m.gen.assign(alphabet.size(), 0);
    return m;
}

namespace detail {

using ElemPair = std::pair<Elem, Elem>;

/// Image of the free D-monoid in M1 × M2 under the pairing of the two evaluations.
inline DClosure<ElemPair> paired_closure(const SigmaMonoid& m1, const SigmaMonoid& m2, const Limits& limits) {
    if (m1.tag() != m2.tag()) throw TagMismatch("monoids over different varieties");
    if (m1.alphabet != m2.alphabet) throw Error("monoids over different alphabets");
    std::vector<ElemPair> words{{m1.unit, m2.unit}};
    std::set<ElemPair> seen{words.front()};
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t a = 0; a < m1.gen.size(); ++a) {
            const ElemPair p{m1.mul(words[i].first, m1.gen[a]), m2.mul(words[i].second, m2.gen[a])};
            if (seen.insert(p).second) {
                if (words.size() >= limits.max_carrier) throw ResourceExceeded("subdirect product exceeds carrier cap");
                words.push_back(p);
            }
        }
    }
    const VarietyTag tag = m1.tag();
    const ElemPair zero = tag == VarietyTag::JSL0 || tag == VarietyTag::Z2VECT
                              ? ElemPair{m1.carrier.zero(), m2.carrier.zero()}
                              : ElemPair{0, 0};
    return d_closure<ElemPair>(
        tag, words, zero,
        [&](const ElemPair& p, const ElemPair& q) {
            return m1.carrier.leq(p.first, q.first) && m2.carrier.leq(p.second, q.second);
        },
        [&](const ElemPair& p, const ElemPair& q) {
            return ElemPair{m1.carrier.join(p.first, q.first), m2.carrier.join(p.second, q.second)};
        },
        [&](const ElemPair& p, const ElemPair& q) { return ElemPair{p.first ^ q.first, p.second ^ q.second}; }, limits);
}

}  // namespace detail

/// Sub-D-monoid of M1 × M2 generated by the paired generator images; the join of M1 and M2
/// in the quotient order.
inline SigmaMonoid subdirect_product(const SigmaMonoid& m1, const SigmaMonoid& m2, const Limits& limits = {}) {
    const auto closure = detail::paired_closure(m1, m2, limits);
    std::map<detail::ElemPair, Elem> index;
    for (Elem i = 0; i < closure.items.size(); ++i) index.emplace(closure.items[i], i);
    SigmaMonoid s;
    s.alphabet = m1.alphabet;
    s.carrier = closure.carrier;
    const std::size_t k = closure.items.size();
    s.mult.resize(k * k);
    for (Elem i = 0; i < k; ++i)
        for (Elem j = 0; j < k; ++j) {
            const auto& [x1, x2] = closure.items[i];
            const auto& [y1, y2] = closure.items[j];
            s.mult[i * k + j] = index.at({m1.mul(x1, y1), m2.mul(x2, y2)});
        }
    s.unit = index.at({m1.unit, m2.unit});
    for (std::size_t a = 0; a < m1.gen.size(); ++a) s.gen.push_back(index.at({m1.gen[a], m2.gen[a]}));
    return s;
}

/// Graph of the generator-preserving D-monoid morphism `from` → `to`, if one exists.
inline std::optional<std::vector<Elem>> quotient_map(const SigmaMonoid& from, const SigmaMonoid& to,
                                                     const Limits& limits = {}) {
    // a map exists iff the paired image has exactly |from| elements, so the closure can stop
    // as soon as it grows past that
    Limits bounded = limits;
    bounded.max_carrier = std::min(limits.max_carrier, from.size());
    std::optional<detail::DClosure<detail::ElemPair>> found;
    try {
        found = detail::paired_closure(from, to, bounded);
    } catch (const ResourceExceeded&) {
        if (from.size() > limits.max_carrier) throw;
        return std::nullopt;
    }
    const auto& closure = *found;
    if (closure.items.size() != from.size()) return std::nullopt;
    std::vector<Elem> graph(from.size(), ~Elem{0});
    for (const auto& [x, y] : closure.items) {
        if (graph[x] != ~Elem{0}) return std::nullopt;
        graph[x] = y;
    }
    // ordered monoids: the map must be monotone
    if (from.tag() == VarietyTag::POS)
        for (Elem x = 0; x < from.size(); ++x)
            for (Elem y = 0; y < from.size(); ++y)
                if (from.carrier.leq(x, y) && !to.carrier.leq(graph[x], graph[y])) return std::nullopt;
    return graph;
}

/// M1 ≤ M2: M1 is a quotient of M2 as a Σ-generated D-monoid.
inline bool quotient_leq(const SigmaMonoid& m1, const SigmaMonoid& m2, const Limits& limits = {}) {
    return quotient_map(m2, m1, limits).has_value();
}

/// Generator-preserving isomorphism M1 → M2, if any.
inline std::optional<std::vector<Elem>> monoid_isomorphism(const SigmaMonoid& m1, const SigmaMonoid& m2,
                                                           const Limits& limits = {}) {
    if (m1.size() != m2.size()) return std::nullopt;
    auto forward = quotient_map(m1, m2, limits);
    if (!forward || !quotient_map(m2, m1, limits)) return std::nullopt;
    return forward;
}

/// Membership in the local pseudovariety generated by `gens` (the principal ideal below
/// their subdirect product).
inline bool pseudovariety_member(const SigmaMonoid& m, const std::vector<SigmaMonoid>& gens, const Limits& limits = {}) {
    SigmaMonoid top = trivial_monoid(m.tag(), m.alphabet);
    for (const auto& g : gens) top = subdirect_product(top, g, limits);
    return quotient_leq(m, top, limits);
}

/// The D-algebra (M, x ↦ gen(a)·x, unit): letters act by left multiplication.
inline DAlgebra left_action_algebra(const SigmaMonoid& m) {
    DAlgebra a;
    a.alphabet = m.alphabet;
    a.carrier = m.carrier;
    for (Elem g : m.gen) {
        FinMorphism f{m.carrier, m.carrier, std::vector<Elem>(m.size())};
        for (Elem x = 0; x < m.size(); ++x) f.graph[x] = m.mul(g, x);
        a.alpha.push_back(std::move(f));
    }
    a.init = m.unit;
    return a;
}

}  // namespace locvar
