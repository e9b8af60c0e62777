#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locvar/error.hpp"

namespace locvar {

/// The six locally finite varieties. BA, DL01, JSL0 and Z2VECT carry coalgebras; SET, POS,
/// JSL0 and Z2VECT carry their dual algebras.
enum class VarietyTag { BA, DL01, JSL0, Z2VECT, SET, POS };

inline std::string_view to_string(VarietyTag tag) {
    switch (tag) {
        case VarietyTag::BA: return "BA";
        case VarietyTag::DL01: return "DL01";
        case VarietyTag::JSL0: return "JSL0";
        case VarietyTag::Z2VECT: return "Z2VECT";
        case VarietyTag::SET: return "SET";
        case VarietyTag::POS: return "POS";
    }
    return "?";
}

inline VarietyTag variety_from_string(std::string_view name) {
    for (auto t : {VarietyTag::BA, VarietyTag::DL01, VarietyTag::JSL0, VarietyTag::Z2VECT, VarietyTag::SET, VarietyTag::POS})
        if (to_string(t) == name) return t;
    throw Error("unknown variety tag '" + std::string(name) + "'");
}

inline bool is_c_side(VarietyTag t) {
    return t == VarietyTag::BA || t == VarietyTag::DL01 || t == VarietyTag::JSL0 || t == VarietyTag::Z2VECT;
}
inline bool is_d_side(VarietyTag t) {
    return t == VarietyTag::SET || t == VarietyTag::POS || t == VarietyTag::JSL0 || t == VarietyTag::Z2VECT;
}
/// Varieties whose algebras carry a (partial) order that morphisms must respect.
inline bool is_ordered(VarietyTag t) {
    return t == VarietyTag::BA || t == VarietyTag::DL01 || t == VarietyTag::JSL0 || t == VarietyTag::POS;
}

using Elem = std::uint32_t;
using Mask = std::uint64_t;

/// Square boolean matrix; `rel(i, j)` reads row i, column j.
class Relation {
public:
    Relation() = default;
    explicit Relation(std::size_t n) : n_(n), bits_(n * n, 0) {}

    std::size_t size() const noexcept { return n_; }
    bool operator()(std::size_t i, std::size_t j) const { return bits_[i * n_ + j] != 0; }
    void set(std::size_t i, std::size_t j, bool v = true) { bits_[i * n_ + j] = v; }

    bool is_partial_order() const {
        for (std::size_t i = 0; i < n_; ++i) {
            if (!(*this)(i, i)) return false;
            for (std::size_t j = 0; j < n_; ++j) {
                if (i != j && (*this)(i, j) && (*this)(j, i)) return false;
                if (!(*this)(i, j)) continue;
                for (std::size_t k = 0; k < n_; ++k)
                    if ((*this)(j, k) && !(*this)(i, k)) return false;
            }
        }
        return true;
    }

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::size_t n_ = 0;
    std::vector<std::uint8_t> bits_;
};

/// A finite algebra with an explicit element enumeration 0..size()-1.
///
/// Presentations:
///  - BA: k atoms; element index = bitmask of atoms below it.
///  - DL01: poset of join-irreducibles; elements are its downsets (as masks), sorted.
///  - JSL0: full join table plus the index of 0.
///  - Z2VECT: dimension d; element index = coordinate bit vector.
///  - SET: n bare elements.
///  - POS: n elements with a partial order.
///
/// Copies share the immutable underlying data.
class FinAlgebra {
public:
    FinAlgebra() : data_(std::make_shared<const Data>()) {}

    static FinAlgebra boolean(std::size_t atoms, const Limits& limits = {}) {
        if (atoms >= 32 || (std::size_t{1} << atoms) > limits.max_carrier)
            throw ResourceExceeded("boolean algebra with " + std::to_string(atoms) + " atoms exceeds carrier cap");
        Data d;
        d.tag = VarietyTag::BA;
        d.rank = atoms;
        d.size = std::size_t{1} << atoms;
        return FinAlgebra(std::move(d));
    }

    static FinAlgebra distributive(const Relation& ji_order, const Limits& limits = {}) {
        if (!ji_order.is_partial_order()) throw Error("DL01 presentation: join-irreducibles must form a partial order");
        if (ji_order.size() > 64) throw ResourceExceeded("DL01 presentation with more than 64 join-irreducibles");
        Data d;
        d.tag = VarietyTag::DL01;
        d.rank = ji_order.size();
        d.order = ji_order;
        d.downsets = enumerate_downsets(ji_order, limits);
        d.size = d.downsets.size();
        return FinAlgebra(std::move(d));
    }

    /// `join` is row-major size×size. Laws are checked when `check` is set.
    static FinAlgebra semilattice(std::size_t size, std::vector<Elem> join, Elem zero, bool check = true,
                                  const Limits& limits = {}) {
        if (size > limits.max_carrier) throw ResourceExceeded("semilattice exceeds carrier cap");
        if (size == 0 || join.size() != size * size || zero >= size) throw Error("JSL0 presentation: malformed join table");
        Data d;
        d.tag = VarietyTag::JSL0;
        d.size = size;
        d.join = std::move(join);
        d.zero = zero;
        FinAlgebra a(std::move(d));
        if (check && !a.semilattice_laws_hold()) throw Error("JSL0 presentation: join table violates semilattice laws");
        return a;
    }

    static FinAlgebra vector_space(std::size_t dim, const Limits& limits = {}) {
        if (dim >= 32 || (std::size_t{1} << dim) > limits.max_carrier)
            throw ResourceExceeded("Z2 vector space of dimension " + std::to_string(dim) + " exceeds carrier cap");
        Data d;
        d.tag = VarietyTag::Z2VECT;
        d.rank = dim;
        d.size = std::size_t{1} << dim;
        return FinAlgebra(std::move(d));
    }

    static FinAlgebra set(std::size_t size, const Limits& limits = {}) {
        if (size > limits.max_carrier) throw ResourceExceeded("set exceeds carrier cap");
        Data d;
        d.tag = VarietyTag::SET;
        d.size = size;
        return FinAlgebra(std::move(d));
    }

    static FinAlgebra poset(const Relation& order, const Limits& limits = {}) {
        if (order.size() > limits.max_carrier) throw ResourceExceeded("poset exceeds carrier cap");
        if (!order.is_partial_order()) throw Error("POS presentation: relation is not a partial order");
        Data d;
        d.tag = VarietyTag::POS;
        d.size = order.size();
        d.order = order;
        return FinAlgebra(std::move(d));
    }

    VarietyTag tag() const noexcept { return data_->tag; }
    std::size_t size() const noexcept { return data_->size; }

    std::size_t atoms() const { return expect(VarietyTag::BA), data_->rank; }
    std::size_t dim() const { return expect(VarietyTag::Z2VECT), data_->rank; }
    const Relation& ji_order() const { return expect(VarietyTag::DL01), data_->order; }
    const Relation& order() const { return expect(VarietyTag::POS), data_->order; }
    const std::vector<Mask>& downsets() const { return expect(VarietyTag::DL01), data_->downsets; }
    std::span<const Elem> join_table() const { return expect(VarietyTag::JSL0), std::span<const Elem>(data_->join); }

    /// DL01 element whose downset is `mask`.
    Elem downset_index(Mask mask) const {
        const auto& ds = downsets();
        const auto it = std::lower_bound(ds.begin(), ds.end(), mask);
        if (it == ds.end() || *it != mask) throw Error("DL01: mask is not a downset");
        return static_cast<Elem>(it - ds.begin());
    }

    Elem zero() const {
        switch (tag()) {
            case VarietyTag::JSL0: return data_->zero;
            case VarietyTag::BA:
            case VarietyTag::DL01:
            case VarietyTag::Z2VECT: return 0;
            default: throw Error(std::string(to_string(tag())) + " has no zero");
        }
    }

    Elem top() const {
        switch (tag()) {
            case VarietyTag::BA:
            case VarietyTag::DL01: return static_cast<Elem>(size() - 1);
            case VarietyTag::JSL0: {
                Elem t = zero();
                for (Elem x = 0; x < size(); ++x) t = join(t, x);
                return t;
            }
            default: throw Error(std::string(to_string(tag())) + " has no top");
        }
    }

    /// Order of the carrier; equality for SET and Z2VECT.
    bool leq(Elem x, Elem y) const {
        switch (tag()) {
            case VarietyTag::BA: return (x & ~y) == 0;
            case VarietyTag::DL01: return (data_->downsets[x] & ~data_->downsets[y]) == 0;
            case VarietyTag::JSL0: return join(x, y) == y;
            case VarietyTag::POS: return data_->order(x, y);
            default: return x == y;
        }
    }

    Elem join(Elem x, Elem y) const {
        switch (tag()) {
            case VarietyTag::BA: return x | y;
            case VarietyTag::DL01: return downset_index(data_->downsets[x] | data_->downsets[y]);
            case VarietyTag::JSL0: return data_->join[x * size() + y];
            default: throw Error(std::string(to_string(tag())) + " has no join");
        }
    }

    /// Lattice meet; for JSL0 the meet that every finite join-semilattice with 0 has.
    Elem meet(Elem x, Elem y) const {
        switch (tag()) {
            case VarietyTag::BA: return x & y;
            case VarietyTag::DL01: return downset_index(data_->downsets[x] & data_->downsets[y]);
            case VarietyTag::JSL0: {
                Elem m = zero();
                for (Elem z = 0; z < size(); ++z)
                    if (leq(z, x) && leq(z, y)) m = join(m, z);
                return m;
            }
            default: throw Error(std::string(to_string(tag())) + " has no meet");
        }
    }

    Elem complement(Elem x) const {
        expect(VarietyTag::BA);
        return static_cast<Elem>(~x & (size() - 1));
    }

    Elem add(Elem x, Elem y) const {
        expect(VarietyTag::Z2VECT);
        return x ^ y;
    }

    bool semilattice_laws_hold() const {
        if (tag() != VarietyTag::JSL0) return true;
        const std::size_t n = size();
        for (Elem x = 0; x < n; ++x) {
            if (join(x, x) != x || join(x, zero()) != x) return false;
            for (Elem y = 0; y < n; ++y) {
                if (join(x, y) >= n || join(x, y) != join(y, x)) return false;
                for (Elem z = 0; z < n; ++z)
                    if (join(join(x, y), z) != join(x, join(y, z))) return false;
            }
        }
        return true;
    }

    friend bool operator==(const FinAlgebra& a, const FinAlgebra& b) {
        return a.data_ == b.data_ || *a.data_ == *b.data_;
    }

private:
    struct Data {
        VarietyTag tag = VarietyTag::SET;
        std::size_t size = 0;
        std::size_t rank = 0;  // atoms, join-irreducibles or dimension
        Relation order;        // POS order or DL01 join-irreducible order
        std::vector<Mask> downsets;
        std::vector<Elem> join;
        Elem zero = 0;
        friend bool operator==(const Data&, const Data&) = default;
    };

    explicit FinAlgebra(Data d) : data_(std::make_shared<const Data>(std::move(d))) {}

    void expect(VarietyTag t) const {
        if (tag() != t)
            throw TagMismatch("expected " + std::string(to_string(t)) + " algebra, got " + std::string(to_string(tag())));
    }

    static std::vector<Mask> enumerate_downsets(const Relation& order, const Limits& limits) {
        const std::size_t k = order.size();
        std::vector<Mask> below(k, 0);  // strictly below j
        for (std::size_t j = 0; j < k; ++j)
            for (std::size_t i = 0; i < k; ++i)
                if (i != j && order(i, j)) below[j] |= Mask{1} << i;
        std::set<Mask> seen{0};
        std::vector<Mask> stack{0};
        while (!stack.empty()) {
            const Mask d = stack.back();
            stack.pop_back();
            for (std::size_t j = 0; j < k; ++j) {
                const Mask bit = Mask{1} << j;
                if ((d & bit) || (below[j] & ~d)) continue;
                if (seen.insert(d | bit).second) {
                    if (seen.size() > limits.max_carrier) throw ResourceExceeded("distributive lattice exceeds carrier cap");
                    stack.push_back(d | bit);
                }
            }
        }
        return {seen.begin(), seen.end()};
    }

    std::shared_ptr<const Data> data_;
};

/// A structure-preserving map; `graph[x]` is the image of domain element x.
struct FinMorphism {
    FinAlgebra domain;
    FinAlgebra codomain;
    std::vector<Elem> graph;

    Elem operator()(Elem x) const { return graph[x]; }
    friend bool operator==(const FinMorphism&, const FinMorphism&) = default;
};

inline FinMorphism identity(const FinAlgebra& a) {
    FinMorphism m{a, a, std::vector<Elem>(a.size())};
    for (Elem x = 0; x < a.size(); ++x) m.graph[x] = x;
    return m;
}

/// g ∘ f.
inline FinMorphism compose(const FinMorphism& g, const FinMorphism& f) {
    if (!(f.codomain == g.domain)) throw TagMismatch("compose: codomain of f differs from domain of g");
    FinMorphism m{f.domain, g.codomain, std::vector<Elem>(f.graph.size())};
    for (std::size_t x = 0; x < f.graph.size(); ++x) m.graph[x] = g.graph[f.graph[x]];
    return m;
}

inline bool is_injective(const FinMorphism& m) {
    std::vector<std::uint8_t> hit(m.codomain.size(), 0);
    for (Elem y : m.graph)
        if (hit[y]++) return false;
    return true;
}

inline bool is_surjective(const FinMorphism& m) {
    std::vector<std::uint8_t> hit(m.codomain.size(), 0);
    for (Elem y : m.graph) hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](auto h) { return h != 0; });
}

/// Injective and, for ordered varieties, order-reflecting.
inline bool is_embedding(const FinMorphism& m) {
    if (!is_injective(m)) return false;
    if (!is_ordered(m.domain.tag())) return true;
    for (Elem x = 0; x < m.domain.size(); ++x)
        for (Elem y = 0; y < m.domain.size(); ++y)
            if (m.codomain.leq(m(x), m(y)) && !m.domain.leq(x, y)) return false;
    return true;
}

inline bool is_isomorphism(const FinMorphism& m) { return is_embedding(m) && is_surjective(m); }

/// Exact check of every preservation law of the variety over the whole carrier.
inline bool validate_morphism(const FinMorphism& m) {
    const FinAlgebra& a = m.domain;
    const FinAlgebra& b = m.codomain;
    if (a.tag() != b.tag()) throw TagMismatch("validate_morphism: domain and codomain tags differ");
    if (m.graph.size() != a.size()) return false;
    for (Elem y : m.graph)
        if (y >= b.size()) return false;
    const std::size_t n = a.size();
    switch (a.tag()) {
        case VarietyTag::SET: return true;
        case VarietyTag::POS:
            for (Elem x = 0; x < n; ++x)
                for (Elem y = 0; y < n; ++y)
                    if (a.leq(x, y) && !b.leq(m(x), m(y))) return false;
            return true;
        case VarietyTag::Z2VECT:
            // linear iff m(x) is the sum of the images of the coordinate vectors of x
            for (Elem x = 0; x < n; ++x) {
                Elem sum = 0;
                for (std::size_t i = 0; i < a.dim(); ++i)
                    if (x >> i & 1) sum ^= m(Elem{1} << i);
                if (m(x) != sum) return false;
            }
            return true;
        case VarietyTag::BA: {
            if (m(0) != 0 || m(a.top()) != b.top()) return false;
            Elem seen = 0;
            for (std::size_t i = 0; i < a.atoms(); ++i) {
                const Elem img = m(Elem{1} << i);
                if (img & seen) return false;
                seen |= img;
            }
            for (Elem x = 0; x < n; ++x) {
                Elem expected = 0;
                for (std::size_t i = 0; i < a.atoms(); ++i)
                    if (x >> i & 1) expected |= m(Elem{1} << i);
                if (m(x) != expected || m(a.complement(x)) != b.complement(m(x))) return false;
            }
            return true;
        }
        case VarietyTag::DL01:
            if (m(a.zero()) != b.zero() || m(a.top()) != b.top()) return false;
            for (Elem x = 0; x < n; ++x)
                for (Elem y = x + 1; y < n; ++y)
                    if (m(a.join(x, y)) != b.join(m(x), m(y)) || m(a.meet(x, y)) != b.meet(m(x), m(y))) return false;
            return true;
        case VarietyTag::JSL0:
            if (m(a.zero()) != b.zero()) return false;
            for (Elem x = 0; x < n; ++x)
                for (Elem y = x + 1; y < n; ++y)
                    if (m(a.join(x, y)) != b.join(m(x), m(y))) return false;
            return true;
    }
    return false;
}

/// The two-element algebra 𝟚 of a C-side variety.
inline FinAlgebra two_object(VarietyTag tag) {
    switch (tag) {
        case VarietyTag::BA: return FinAlgebra::boolean(1);
        case VarietyTag::DL01: {
            Relation r(1);
            r.set(0, 0);
            return FinAlgebra::distributive(r);
        }
        case VarietyTag::JSL0: return FinAlgebra::semilattice(2, {0, 1, 1, 1}, 0);
        case VarietyTag::Z2VECT: return FinAlgebra::vector_space(1);
        default: throw TagMismatch("two_object: " + std::string(to_string(tag)) + " is not a C-side variety");
    }
}

/// The free algebra 𝟙 on one generator in a D-side variety. The generator is element 0 for
/// SET and POS and element 1 for JSL0 and Z2VECT.
inline FinAlgebra free_on_one(VarietyTag tag) {
    switch (tag) {
        case VarietyTag::SET: return FinAlgebra::set(1);
        case VarietyTag::POS: {
            Relation r(1);
            r.set(0, 0);
            return FinAlgebra::poset(r);
        }
        case VarietyTag::JSL0: return FinAlgebra::semilattice(2, {0, 1, 1, 1}, 0);
        case VarietyTag::Z2VECT: return FinAlgebra::vector_space(1);
        default: throw TagMismatch("free_on_one: " + std::string(to_string(tag)) + " is not a D-side variety");
    }
}

inline Elem free_generator(VarietyTag tag) { return tag == VarietyTag::SET || tag == VarietyTag::POS ? 0 : 1; }

/// Builds a JSL0 from elements closed under a join operation given on indices.
template <typename JoinFn>
FinAlgebra semilattice_from(std::size_t n, Elem zero, JoinFn join, const Limits& limits = {}) {
    std::vector<Elem> table(n * n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) table[x * n + y] = join(x, y);
    return FinAlgebra::semilattice(n, std::move(table), zero, false, limits);
}

/// Nonzero elements of a finite JSL0 that are not the join of the elements strictly below them.
inline std::vector<Elem> join_irreducibles(const FinAlgebra& a) {
    std::vector<Elem> out;
    for (Elem x = 0; x < a.size(); ++x) {
        if (x == a.zero()) continue;
        Elem below = a.zero();
        for (Elem y = 0; y < a.size(); ++y)
            if (y != x && a.leq(y, x)) below = a.join(below, y);
        if (below != x) out.push_back(x);
    }
    return out;
}

/// Distributive lattice presented by its elements (abstract indices 0..n-1) and order.
/// Returns the DL01 algebra plus, for each of its elements, the source index.
template <typename LeqFn>
std::pair<FinAlgebra, std::vector<Elem>> distributive_from_lattice(std::size_t n, LeqFn leq, const Limits& limits = {}) {
    // x is join-irreducible iff it is not the bottom and has exactly one lower cover
    std::vector<Elem> jis;
    for (Elem x = 0; x < n; ++x) {
        std::size_t covers = 0;
        for (Elem y = 0; y < n; ++y) {
            if (y == x || !leq(y, x)) continue;
            bool cover = true;
            for (Elem z = 0; z < n && cover; ++z)
                if (z != x && z != y && leq(y, z) && leq(z, x)) cover = false;
            covers += cover;
        }
        if (covers == 1) jis.push_back(x);
    }
    Relation order(jis.size());
    for (std::size_t i = 0; i < jis.size(); ++i)
        for (std::size_t j = 0; j < jis.size(); ++j) order.set(i, j, leq(jis[i], jis[j]));
    FinAlgebra lattice = FinAlgebra::distributive(order, limits);
    if (lattice.size() != n) throw Error("distributive_from_lattice: lattice is not distributive");
    std::vector<Elem> source(n);
    for (Elem x = 0; x < n; ++x) {
        Mask mask = 0;
        for (std::size_t i = 0; i < jis.size(); ++i)
            if (leq(jis[i], x)) mask |= Mask{1} << i;
        source[lattice.downset_index(mask)] = x;
    }
    return {lattice, source};
}

/// Gaussian elimination over Z2 on arbitrary vectors given as bit masks. Returns the
/// indices of a maximal independent prefix-greedy subset.
inline std::vector<std::size_t> z2_basis(std::span<const Mask> vectors) {
    std::vector<Mask> reduced;
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        Mask v = vectors[i];
        for (Mask r : reduced) v = std::min(v, v ^ r);
        if (v != 0) {
            reduced.push_back(v);
            std::sort(reduced.begin(), reduced.end(), std::greater<>());
            chosen.push_back(i);
        }
    }
    return chosen;
}

struct Subalgebra {
    FinAlgebra algebra;
    FinMorphism inclusion;
};

/// Smallest subalgebra containing `gens`, with its inclusion into `amb`.
inline Subalgebra generate_subalgebra(const FinAlgebra& amb, std::span<const Elem> gens, const Limits& limits = {}) {
    for (Elem g : gens)
        if (g >= amb.size()) throw Error("generate_subalgebra: generator out of range");
    auto finish = [&](FinAlgebra sub, std::vector<Elem> image) {
        return Subalgebra{sub, FinMorphism{sub, amb, std::move(image)}};
    };
    switch (amb.tag()) {
        case VarietyTag::SET:
        case VarietyTag::POS: {
            std::set<Elem> s(gens.begin(), gens.end());
            std::vector<Elem> elems(s.begin(), s.end());
            if (amb.tag() == VarietyTag::SET) return finish(FinAlgebra::set(elems.size(), limits), elems);
            Relation r(elems.size());
            for (std::size_t i = 0; i < elems.size(); ++i)
                for (std::size_t j = 0; j < elems.size(); ++j) r.set(i, j, amb.leq(elems[i], elems[j]));
            return finish(FinAlgebra::poset(r, limits), elems);
        }
        case VarietyTag::BA: {
            // atoms of the generated subalgebra are the nonempty cells of the generators' Venn diagram
            std::vector<Elem> cells{amb.top()};
            for (Elem g : gens) {
                std::vector<Elem> next;
                for (Elem c : cells)
                    for (Elem part : {c & g, c & ~g})
                        if (part) next.push_back(part);
                cells = std::move(next);
            }
            std::erase(cells, Elem{0});
            std::sort(cells.begin(), cells.end(), [](Elem x, Elem y) { return std::countr_zero(x) < std::countr_zero(y); });
            FinAlgebra sub = FinAlgebra::boolean(cells.size(), limits);
            std::vector<Elem> image(sub.size(), 0);
            for (Elem x = 0; x < sub.size(); ++x)
                for (std::size_t i = 0; i < cells.size(); ++i)
                    if (x >> i & 1) image[x] |= cells[i];
            return finish(sub, image);
        }
        case VarietyTag::Z2VECT: {
            std::vector<Mask> vs(gens.begin(), gens.end());
            std::vector<Elem> basis;
            for (std::size_t i : z2_basis(vs)) basis.push_back(gens[i]);
            FinAlgebra sub = FinAlgebra::vector_space(basis.size(), limits);
            std::vector<Elem> image(sub.size(), 0);
            for (Elem x = 0; x < sub.size(); ++x)
                for (std::size_t i = 0; i < basis.size(); ++i)
                    if (x >> i & 1) image[x] ^= basis[i];
            return finish(sub, image);
        }
        case VarietyTag::JSL0:
        case VarietyTag::DL01: {
            const bool lattice = amb.tag() == VarietyTag::DL01;
            std::set<Elem> s(gens.begin(), gens.end());
            s.insert(amb.zero());
            if (lattice) s.insert(amb.top());
            std::vector<Elem> elems(s.begin(), s.end());
            for (std::size_t i = 0; i < elems.size(); ++i) {
                for (std::size_t j = 0; j <= i; ++j) {
                    for (Elem z : {amb.join(elems[i], elems[j]), lattice ? amb.meet(elems[i], elems[j]) : amb.zero()}) {
                        if (s.insert(z).second) {
                            if (s.size() > limits.max_carrier) throw ResourceExceeded("subalgebra exceeds carrier cap");
                            elems.push_back(z);
                        }
                    }
                }
            }
            std::sort(elems.begin(), elems.end());
            auto index_of = [&](Elem e) {
                return static_cast<Elem>(std::lower_bound(elems.begin(), elems.end(), e) - elems.begin());
            };
            if (!lattice) {
                const Elem zero = index_of(amb.zero());
                FinAlgebra sub = semilattice_from(
                    elems.size(), zero, [&](Elem x, Elem y) { return index_of(amb.join(elems[x], elems[y])); }, limits);
                return finish(sub, elems);
            }
            auto [sub, source] = distributive_from_lattice(
                elems.size(), [&](Elem x, Elem y) { return amb.leq(elems[x], elems[y]); }, limits);
            std::vector<Elem> image(sub.size());
            for (Elem x = 0; x < sub.size(); ++x) image[x] = elems[source[x]];
            return finish(sub, image);
        }
    }
    throw Error("generate_subalgebra: unknown tag");
}

inline Subalgebra generate_subalgebra(const FinAlgebra& amb, std::initializer_list<Elem> gens, const Limits& limits = {}) {
    return generate_subalgebra(amb, std::span<const Elem>(gens.begin(), gens.size()), limits);
}

struct Product {
    FinAlgebra algebra;
    FinMorphism first;
    FinMorphism second;
};

/// Componentwise product with its projections.
inline Product product(const FinAlgebra& a, const FinAlgebra& b, const Limits& limits = {}) {
    if (a.tag() != b.tag()) throw TagMismatch("product: tags differ");
    FinAlgebra p;
    std::vector<std::pair<Elem, Elem>> coords;
    switch (a.tag()) {
        case VarietyTag::BA:
        case VarietyTag::Z2VECT: {
            const std::size_t ra = a.tag() == VarietyTag::BA ? a.atoms() : a.dim();
            const std::size_t rb = b.tag() == VarietyTag::BA ? b.atoms() : b.dim();
            p = a.tag() == VarietyTag::BA ? FinAlgebra::boolean(ra + rb, limits) : FinAlgebra::vector_space(ra + rb, limits);
            for (Elem x = 0; x < p.size(); ++x)
                coords.emplace_back(static_cast<Elem>(x & ((Elem{1} << ra) - 1)), static_cast<Elem>(x >> ra));
            break;
        }
        case VarietyTag::DL01: {
            const std::size_t ka = a.ji_order().size(), kb = b.ji_order().size();
            Relation r(ka + kb);
            for (std::size_t i = 0; i < ka; ++i)
                for (std::size_t j = 0; j < ka; ++j) r.set(i, j, a.ji_order()(i, j));
            for (std::size_t i = 0; i < kb; ++i)
                for (std::size_t j = 0; j < kb; ++j) r.set(ka + i, ka + j, b.ji_order()(i, j));
            p = FinAlgebra::distributive(r, limits);
            const Mask low = ka == 64 ? ~Mask{0} : (Mask{1} << ka) - 1;
            for (Mask d : p.downsets())
                coords.emplace_back(a.downset_index(d & low), b.downset_index(ka == 64 ? 0 : d >> ka));
            break;
        }
        case VarietyTag::SET:
        case VarietyTag::POS:
        case VarietyTag::JSL0: {
            const std::size_t n = a.size() * b.size();
            if (n > limits.max_carrier) throw ResourceExceeded("product exceeds carrier cap");
            for (Elem x = 0; x < a.size(); ++x)
                for (Elem y = 0; y < b.size(); ++y) coords.emplace_back(x, y);
            const auto idx = [&](Elem x, Elem y) { return static_cast<Elem>(x * b.size() + y); };
            if (a.tag() == VarietyTag::SET) {
                p = FinAlgebra::set(n, limits);
            } else if (a.tag() == VarietyTag::POS) {
                Relation r(n);
                for (Elem u = 0; u < n; ++u)
                    for (Elem v = 0; v < n; ++v)
                        r.set(u, v, a.leq(coords[u].first, coords[v].first) && b.leq(coords[u].second, coords[v].second));
                p = FinAlgebra::poset(r, limits);
            } else {
                p = semilattice_from(
                    n, idx(a.zero(), b.zero()),
                    [&](Elem u, Elem v) {
                        return idx(a.join(coords[u].first, coords[v].first), b.join(coords[u].second, coords[v].second));
                    },
                    limits);
            }
            break;
        }
    }
    FinMorphism first{p, a, {}}, second{p, b, {}};
    for (const auto& [x, y] : coords) {
        first.graph.push_back(x);
        second.graph.push_back(y);
    }
    return {p, first, second};
}

/// ⟨f, g⟩ : X → A × B.
inline FinMorphism pair(const FinMorphism& f, const FinMorphism& g, const Product& prod) {
    if (!(f.domain == g.domain)) throw TagMismatch("pair: domains differ");
    std::map<std::pair<Elem, Elem>, Elem> index;
    for (Elem z = 0; z < prod.algebra.size(); ++z) index.emplace(std::make_pair(prod.first(z), prod.second(z)), z);
    FinMorphism m{f.domain, prod.algebra, std::vector<Elem>(f.domain.size())};
    for (Elem x = 0; x < f.domain.size(); ++x) m.graph[x] = index.at({f(x), g(x)});
    return m;
}

struct Factorization {
    FinMorphism epi;
    FinMorphism mono;
};

/// m = mono ∘ epi, with the middle object the subalgebra generated by the image of m.
inline Factorization image_factorize(const FinMorphism& m, const Limits& limits = {}) {
    if (m.domain.tag() != m.codomain.tag()) throw TagMismatch("image_factorize: domain and codomain tags differ");
    std::vector<Elem> image(m.graph);
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    Subalgebra sub = generate_subalgebra(m.codomain, image, limits);
    std::vector<Elem> back(m.codomain.size(), ~Elem{0});
    for (Elem x = 0; x < sub.algebra.size(); ++x) back[sub.inclusion(x)] = x;
    FinMorphism epi{m.domain, sub.algebra, std::vector<Elem>(m.domain.size())};
    for (Elem x = 0; x < m.domain.size(); ++x) epi.graph[x] = back[m(x)];
    return {epi, sub.inclusion};
}

}  // namespace locvar
