#pragma once

#include <bit>
#include <map>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "locvar/variety.hpp"

namespace locvar {

/// The four dual pairs of finite algebras: Stone (BA/SET), Birkhoff (DL01/POS), and the
/// self-dualities of finite join-semilattices and finite Z2 vector spaces.
enum class DualityTag { BA_SET, DL01_POS, JSL_SELF, Z2_SELF };

inline std::string_view to_string(DualityTag d) {
    switch (d) {
        case DualityTag::BA_SET: return "BA_SET";
        case DualityTag::DL01_POS: return "DL01_POS";
        case DualityTag::JSL_SELF: return "JSL_SELF";
        case DualityTag::Z2_SELF: return "Z2_SELF";
    }
    return "?";
}

inline VarietyTag c_side(DualityTag d) {
    switch (d) {
        case DualityTag::BA_SET: return VarietyTag::BA;
        case DualityTag::DL01_POS: return VarietyTag::DL01;
        case DualityTag::JSL_SELF: return VarietyTag::JSL0;
        case DualityTag::Z2_SELF: return VarietyTag::Z2VECT;
    }
    return VarietyTag::BA;
}

inline VarietyTag d_side(DualityTag d) {
    switch (d) {
        case DualityTag::BA_SET: return VarietyTag::SET;
        case DualityTag::DL01_POS: return VarietyTag::POS;
        case DualityTag::JSL_SELF: return VarietyTag::JSL0;
        case DualityTag::Z2_SELF: return VarietyTag::Z2VECT;
    }
    return VarietyTag::SET;
}

/// The duality whose C-side or D-side is `tag`.
inline DualityTag duality_for(VarietyTag tag) {
    switch (tag) {
        case VarietyTag::BA:
        case VarietyTag::SET: return DualityTag::BA_SET;
        case VarietyTag::DL01:
        case VarietyTag::POS: return DualityTag::DL01_POS;
        case VarietyTag::JSL0: return DualityTag::JSL_SELF;
        case VarietyTag::Z2VECT: return DualityTag::Z2_SELF;
    }
    return DualityTag::BA_SET;
}

struct IsoWitness {
    FinMorphism forward;
    FinMorphism backward;
};

namespace detail {

inline void expect_side(DualityTag d, VarietyTag t, const char* where) {
    if (t != c_side(d) && t != d_side(d))
        throw TagMismatch(std::string(where) + ": " + std::string(to_string(t)) + " is not part of " +
                          std::string(to_string(d)));
}

/// Meet table of a finite JSL0 (a lattice), computed from the down-set of every element.
inline std::vector<Elem> jsl_meet_table(const FinAlgebra& x) {
    const std::size_t n = x.size();
    std::vector<boost::dynamic_bitset<>> below(n, boost::dynamic_bitset<>(n));
    for (Elem a = 0; a < n; ++a)
        for (Elem b = 0; b < n; ++b)
            if (x.leq(b, a)) below[a].set(b);
    std::map<boost::dynamic_bitset<>, Elem> by_downset;
    for (Elem a = 0; a < n; ++a) by_downset.emplace(below[a], a);
    std::vector<Elem> meet(n * n);
    for (Elem a = 0; a < n; ++a) {
        for (Elem b = a; b < n; ++b) {
            // a meet m exists iff the common lower bounds are exactly the elements below m
            const auto it = by_downset.find(below[a] & below[b]);
            if (it == by_downset.end()) throw Error("JSL0: meet does not exist");
            meet[a * n + b] = meet[b * n + a] = it->second;
        }
    }
    return meet;
}

}  // namespace detail

/// Object part of the duality; the direction is determined by the tag of `x`.
///
/// BA ↦ SET of atoms, SET ↦ BA of subsets, DL01 ↦ POS of join-irreducibles, POS ↦ DL01 of
/// downsets, JSL0 ↦ its order dual (same element indices), Z2VECT ↦ dual space in the
/// coordinate dual basis.
inline FinAlgebra dual_object(DualityTag d, const FinAlgebra& x, const Limits& limits = {}) {
    detail::expect_side(d, x.tag(), "dual_object");
    switch (x.tag()) {
        case VarietyTag::BA: return FinAlgebra::set(x.atoms(), limits);
        case VarietyTag::SET: return FinAlgebra::boolean(x.size(), limits);
        case VarietyTag::DL01: return FinAlgebra::poset(x.ji_order(), limits);
        case VarietyTag::POS: return FinAlgebra::distributive(x.order(), limits);
        case VarietyTag::Z2VECT: return FinAlgebra::vector_space(x.dim(), limits);
        case VarietyTag::JSL0: return FinAlgebra::semilattice(x.size(), detail::jsl_meet_table(x), x.top(), false, limits);
    }
    throw Error("dual_object: unknown tag");
}

/// Element of the DL01 algebra `x` that is the principal downset of join-irreducible j.
inline Elem principal_downset(const FinAlgebra& x, std::size_t j) {
    Mask m = 0;
    for (std::size_t i = 0; i < x.ji_order().size(); ++i)
        if (x.ji_order()(i, j)) m |= Mask{1} << i;
    return x.downset_index(m);
}

/// Morphism part; contravariant. For h : X → Y the result maps dual(Y) → dual(X).
///
/// BA: an atom p' of Y goes to the unique atom p of X with p' ≤ h(p).
/// DL01: a join-irreducible j' of Y goes to the least element x of X with j' ≤ h(x).
/// SET, POS: inverse image.
/// JSL0: the upper adjoint y ↦ ⋁{x : h(x) ≤ y}, read between the order duals.
/// Z2VECT: the transpose matrix.
///
/// `dual_y` and `dual_x` must be dual_object(d, codomain) and dual_object(d, domain); passing
/// them avoids recomputing the duals for many morphisms between the same objects.
inline FinMorphism dual_morphism(DualityTag d, const FinMorphism& h, const FinAlgebra& dual_y, const FinAlgebra& dual_x) {
    const FinAlgebra& x = h.domain;
    const FinAlgebra& y = h.codomain;
    if (x.tag() != y.tag()) throw TagMismatch("dual_morphism: domain and codomain tags differ");
    detail::expect_side(d, x.tag(), "dual_morphism");
    FinMorphism out{dual_y, dual_x, {}};
    out.graph.resize(out.domain.size());
    switch (x.tag()) {
        case VarietyTag::BA:
            for (std::size_t q = 0; q < y.atoms(); ++q) {
                std::size_t found = 0;
                for (std::size_t p = 0; p < x.atoms(); ++p) {
                    if (h(Elem{1} << p) >> q & 1) {
                        out.graph[q] = static_cast<Elem>(p);
                        ++found;
                    }
                }
                if (found != 1) throw NonFunctional("dual_morphism: atom " + std::to_string(q) + " lies below " +
                                                    std::to_string(found) + " atom images");
            }
            break;
        case VarietyTag::SET:
            for (Elem s = 0; s < out.domain.size(); ++s) {
                Elem pre = 0;
                for (Elem e = 0; e < x.size(); ++e)
                    if (s >> h(e) & 1) pre |= Elem{1} << e;
                out.graph[s] = pre;
            }
            break;
        case VarietyTag::DL01:
            for (std::size_t q = 0; q < y.ji_order().size(); ++q) {
                const Elem jq = principal_downset(y, q);
                Elem least = x.top();
                for (Elem e = 0; e < x.size(); ++e)
                    if (y.leq(jq, h(e))) least = x.meet(least, e);
                const Mask m = x.downsets()[least];
                if (!y.leq(jq, h(least)) || m == 0)
                    throw NonFunctional("dual_morphism: no least element above join-irreducible " + std::to_string(q));
                // the least such element must itself be a principal downset ↓p
                const std::size_t p = static_cast<std::size_t>(std::bit_width(m) - 1);
                std::size_t top_count = 0, top = 0;
                for (std::size_t i = 0; i <= p; ++i) {
                    if (!(m >> i & 1)) continue;
                    bool maximal = true;
                    for (std::size_t k = 0; k <= p && maximal; ++k)
                        if (k != i && (m >> k & 1) && x.ji_order()(i, k)) maximal = false;
                    if (maximal) ++top_count, top = i;
                }
                if (top_count != 1) throw NonFunctional("dual_morphism: least preimage is not join-irreducible");
                out.graph[q] = static_cast<Elem>(top);
            }
            break;
        case VarietyTag::POS:
            for (Elem e = 0; e < out.domain.size(); ++e) {
                const Mask down = out.domain.downsets()[e];
                Mask pre = 0;
                for (Elem p = 0; p < x.size(); ++p)
                    if (down >> h(p) & 1) pre |= Mask{1} << p;
                out.graph[e] = out.codomain.downset_index(pre);
            }
            break;
        case VarietyTag::JSL0:
            for (Elem b = 0; b < y.size(); ++b) {
                Elem adj = x.zero();
                for (Elem a = 0; a < x.size(); ++a)
                    if (y.leq(h(a), b)) adj = x.join(adj, a);
                if (!y.leq(h(adj), b)) throw NonFunctional("dual_morphism: map has no upper adjoint");
                out.graph[b] = adj;
            }
            break;
        case VarietyTag::Z2VECT:
            for (Elem v = 0; v < out.domain.size(); ++v) {
                // (hᵀ v)_i = <h(e_i), v>
                Elem r = 0;
                for (std::size_t i = 0; i < x.dim(); ++i)
                    if (std::popcount(h(Elem{1} << i) & v) & 1) r |= Elem{1} << i;
                out.graph[v] = r;
            }
            break;
    }
    return out;
}

inline FinMorphism dual_morphism(DualityTag d, const FinMorphism& h, const Limits& limits = {}) {
    if (h.domain.tag() != h.codomain.tag()) throw TagMismatch("dual_morphism: domain and codomain tags differ");
    detail::expect_side(d, h.domain.tag(), "dual_morphism");
    const FinAlgebra dual_y = dual_object(d, h.codomain, limits);
    const FinAlgebra dual_x = h.domain == h.codomain ? dual_y : dual_object(d, h.domain, limits);
    return dual_morphism(d, h, dual_y, dual_x);
}

/// Natural isomorphism X ≅ dual(dual(X)).
inline IsoWitness double_dual(DualityTag d, const FinAlgebra& x, const Limits& limits = {}) {
    const FinAlgebra dd = dual_object(d, dual_object(d, x, limits), limits);
    FinMorphism fwd{x, dd, std::vector<Elem>(x.size())};
    switch (x.tag()) {
        case VarietyTag::BA:
            // x ↦ the set of atoms below x, seen as a subset of At(x)
            for (Elem e = 0; e < x.size(); ++e) {
                Elem s = 0;
                for (std::size_t p = 0; p < x.atoms(); ++p)
                    if (x.leq(Elem{1} << p, e)) s |= Elem{1} << p;
                fwd.graph[e] = s;
            }
            break;
        case VarietyTag::SET:
            // s ↦ the atom {s} of the powerset
            for (Elem s = 0; s < x.size(); ++s) fwd.graph[s] = static_cast<Elem>(std::countr_zero(Elem{1} << s));
            break;
        case VarietyTag::DL01:
            // x ↦ the downset of join-irreducibles below x
            for (Elem e = 0; e < x.size(); ++e) {
                Mask s = 0;
                for (std::size_t j = 0; j < x.ji_order().size(); ++j)
                    if (x.leq(principal_downset(x, j), e)) s |= Mask{1} << j;
                fwd.graph[e] = dd.downset_index(s);
            }
            break;
        case VarietyTag::POS: {
            // p ↦ the join-irreducible ↓p of the downset lattice
            const FinAlgebra down = dual_object(d, x, limits);
            for (Elem p = 0; p < x.size(); ++p) {
                const Elem jp = principal_downset(down, p);
                std::size_t idx = 0;
                for (std::size_t j = 0; j < down.ji_order().size(); ++j)
                    if (principal_downset(down, j) == jp) idx = j;
                fwd.graph[p] = static_cast<Elem>(idx);
            }
            break;
        }
        case VarietyTag::JSL0:
        case VarietyTag::Z2VECT:
            // order-dual of the order-dual, and the double transpose, are the identity
            for (Elem e = 0; e < x.size(); ++e) fwd.graph[e] = e;
            break;
    }
    FinMorphism bwd{dd, x, std::vector<Elem>(x.size())};
    for (Elem e = 0; e < x.size(); ++e) bwd.graph[fwd(e)] = e;
    return {fwd, bwd};
}

/// Element of dual(𝟚) that corresponds to the generator of the free algebra 𝟙.
inline Elem dual_two_generator(DualityTag d) {
    const FinAlgebra dt = dual_object(d, two_object(c_side(d)));
    if (dt.size() == 1) return 0;
    return dt.zero() == 0 ? 1 : 0;
}

/// The isomorphism dual(𝟙) ≅ 𝟚 on C-side two-element algebras (zero goes to zero).
inline FinMorphism dual_one_to_two(DualityTag d) {
    const FinAlgebra one_dual = dual_object(d, free_on_one(d_side(d)));
    const FinAlgebra two = two_object(c_side(d));
    FinMorphism m{one_dual, two, {0, 0}};
    const Elem z = one_dual.zero();
    m.graph[z] = two.zero();
    m.graph[1 - z] = 1 - two.zero();
    return m;
}

}  // namespace locvar
