#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace locvar;

namespace {

constexpr VarietyTag all_tags[] = {VarietyTag::BA,     VarietyTag::DL01, VarietyTag::JSL0,
                                   VarietyTag::Z2VECT, VarietyTag::SET,  VarietyTag::POS};

FinAlgebra chain(std::size_t n) {
    std::vector<Elem> join(n * n);
    for (Elem x = 0; x < n; ++x)
        for (Elem y = 0; y < n; ++y) join[x * n + y] = std::max(x, y);
    return FinAlgebra::semilattice(n, join, 0);
}

// closure of a set of bitmasks under ∪, ∩ and complement within `top`
std::set<Elem> boolean_closure(std::set<Elem> s, Elem top) {
    s.insert(0);
    s.insert(top);
    for (bool grown = true; grown;) {
        grown = false;
        const std::vector<Elem> v(s.begin(), s.end());
        for (Elem x : v) {
            grown |= s.insert(top & ~x).second;
            for (Elem y : v) grown |= s.insert(x | y).second | s.insert(x & y).second;
        }
    }
    return s;
}

}  // namespace

TEST(Tags, Names) {
    for (VarietyTag t : all_tags) EXPECT_EQ(variety_from_string(to_string(t)), t);
    EXPECT_TRUE(is_c_side(VarietyTag::BA));
    EXPECT_TRUE(is_c_side(VarietyTag::JSL0));
    EXPECT_TRUE(is_d_side(VarietyTag::JSL0));
    EXPECT_FALSE(is_c_side(VarietyTag::SET));
    EXPECT_FALSE(is_d_side(VarietyTag::DL01));
}

TEST(Presentations, Sizes) {
    EXPECT_EQ(FinAlgebra::boolean(3).size(), 8u);
    EXPECT_EQ(FinAlgebra::vector_space(2).size(), 4u);
    // the vee a < c > b has downsets ∅ a b ab abc
    locvar::Relation vee(3);
    for (std::size_t i = 0; i < 3; ++i) vee.set(i, i);
    vee.set(0, 2);
    vee.set(1, 2);
    EXPECT_EQ(FinAlgebra::distributive(vee).size(), 5u);
    EXPECT_EQ(FinAlgebra::distributive(locvar::Relation(0)).size(), 1u);
    EXPECT_EQ(FinAlgebra::poset(vee).size(), 3u);
    EXPECT_THROW(FinAlgebra::boolean(13), ResourceExceeded);
    Limits small;
    small.max_carrier = 4;
    EXPECT_THROW(FinAlgebra::boolean(3, small), ResourceExceeded);
    // broken join table: not idempotent
    EXPECT_THROW(FinAlgebra::semilattice(2, {1, 1, 1, 1}, 0), Error);
    locvar::Relation cycle(2);
    cycle.set(0, 0), cycle.set(1, 1), cycle.set(0, 1), cycle.set(1, 0);
    EXPECT_THROW(FinAlgebra::poset(cycle), Error);
}

TEST(Presentations, LatticeOperations) {
    const FinAlgebra b = FinAlgebra::boolean(3);
    EXPECT_EQ(b.join(1, 2), 3u);
    EXPECT_EQ(b.meet(3, 6), 2u);
    EXPECT_EQ(b.complement(1), 6u);
    EXPECT_EQ(b.top(), 7u);
    const FinAlgebra c = chain(3);
    EXPECT_EQ(c.top(), 2u);
    EXPECT_EQ(c.meet(1, 2), 1u);
    EXPECT_TRUE(c.leq(0, 1));
    EXPECT_FALSE(c.leq(2, 1));
    EXPECT_EQ(FinAlgebra::vector_space(3).add(5, 3), 6u);
}

TEST(DistinguishedObjects, TwoAndOne) {
    const FinAlgebra two_ba = two_object(VarietyTag::BA);
    EXPECT_EQ(two_ba.atoms(), 1u);
    EXPECT_EQ(two_ba.size(), 2u);
    const FinAlgebra two_jsl = two_object(VarietyTag::JSL0);
    EXPECT_EQ(two_jsl.size(), 2u);
    EXPECT_TRUE(two_jsl.leq(0, 1));
    EXPECT_EQ(two_object(VarietyTag::Z2VECT).dim(), 1u);
    EXPECT_EQ(two_object(VarietyTag::DL01).size(), 2u);
    EXPECT_THROW(two_object(VarietyTag::SET), TagMismatch);

    EXPECT_EQ(free_on_one(VarietyTag::SET).size(), 1u);
    EXPECT_EQ(free_on_one(VarietyTag::POS).size(), 1u);
    EXPECT_EQ(free_on_one(VarietyTag::Z2VECT).dim(), 1u);
    // free join-semilattice with 0 on x: terms 0, x, x∨x = x, x∨0 = x
    const FinAlgebra one = free_on_one(VarietyTag::JSL0);
    EXPECT_EQ(one.size(), 2u);
    EXPECT_EQ(one.join(free_generator(VarietyTag::JSL0), one.zero()), free_generator(VarietyTag::JSL0));
    EXPECT_THROW(free_on_one(VarietyTag::BA), TagMismatch);
}

TEST(Morphisms, ValidationExamples) {
    oracle::Rng rng(1);
    for (VarietyTag t : all_tags)
        for (int i = 0; i < 10; ++i) EXPECT_TRUE(validate_morphism(identity(oracle::random_algebra(rng, t))));
    const FinAlgebra a = chain(3), b = chain(4);
    EXPECT_TRUE(validate_morphism(FinMorphism{a, b, {0, 0, 0}}));
    const FinAlgebra two = two_object(VarietyTag::BA);
    EXPECT_FALSE(validate_morphism(FinMorphism{two, two, {1, 0}}));
    // monotone but not join-preserving
    EXPECT_FALSE(validate_morphism(FinMorphism{FinAlgebra::boolean(2), FinAlgebra::boolean(1), {0, 0, 0, 1}}));
    EXPECT_FALSE(validate_morphism(FinMorphism{FinAlgebra::vector_space(1), FinAlgebra::vector_space(1), {1, 1}}));
    EXPECT_THROW(validate_morphism(FinMorphism{a, FinAlgebra::set(3), {0, 1, 2}}), TagMismatch);
    EXPECT_TRUE(validate_morphism(FinMorphism{FinAlgebra::set(2), FinAlgebra::set(1), {0, 0}}));
}

TEST(Morphisms, RandomGeneratorsProduceHomomorphisms) {
    oracle::Rng rng(2);
    for (VarietyTag t : all_tags)
        for (int i = 0; i < 100; ++i) {
            const FinAlgebra x = oracle::random_algebra(rng, t), y = oracle::random_algebra(rng, t);
            if (!oracle::morphism_exists(x, y)) continue;
            const FinMorphism h = oracle::random_morphism(rng, x, y);
            EXPECT_TRUE(validate_morphism(h)) << to_string(t);
        }
}

TEST(Subalgebras, Examples) {
    const FinAlgebra b = FinAlgebra::boolean(3);
    const Subalgebra s = generate_subalgebra(b, {1});
    EXPECT_EQ(s.algebra.size(), 4u);
    const std::set<Elem> image(s.inclusion.graph.begin(), s.inclusion.graph.end());
    EXPECT_EQ(image, (std::set<Elem>{0, 1, 6, 7}));
    EXPECT_EQ(image, boolean_closure({1}, 7));

    const Subalgebra c = generate_subalgebra(chain(3), {1});
    EXPECT_EQ(c.algebra.size(), 2u);
    EXPECT_EQ(std::set<Elem>(c.inclusion.graph.begin(), c.inclusion.graph.end()), (std::set<Elem>{0, 1}));

    const Subalgebra z = generate_subalgebra(FinAlgebra::vector_space(2), {3});
    EXPECT_EQ(z.algebra.size(), 2u);
    EXPECT_EQ(std::set<Elem>(z.inclusion.graph.begin(), z.inclusion.graph.end()), (std::set<Elem>{0, 3}));
}

TEST(Subalgebras, MatchBooleanClosureOracle) {
    oracle::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const FinAlgebra b = FinAlgebra::boolean(oracle::uniform(rng, 1, 5));
        std::vector<Elem> gens;
        for (std::size_t k = oracle::uniform(rng, 0, 3); k > 0; --k)
            gens.push_back(static_cast<Elem>(oracle::uniform(rng, 0, b.size() - 1)));
        const Subalgebra s = generate_subalgebra(b, gens);
        EXPECT_TRUE(validate_morphism(s.inclusion));
        EXPECT_EQ(std::set<Elem>(s.inclusion.graph.begin(), s.inclusion.graph.end()),
                  boolean_closure({gens.begin(), gens.end()}, b.top()));
    }
}

TEST(Subalgebras, IdempotentAndMonotone) {
    oracle::Rng rng(4);
    for (VarietyTag t : all_tags)
        for (int i = 0; i < 40; ++i) {
            const FinAlgebra a = oracle::random_algebra(rng, t);
            std::vector<Elem> gens;
            for (std::size_t k = oracle::uniform(rng, 0, 3); k > 0; --k)
                gens.push_back(static_cast<Elem>(oracle::uniform(rng, 0, a.size() - 1)));
            const Subalgebra s = generate_subalgebra(a, gens);
            EXPECT_TRUE(validate_morphism(s.inclusion)) << to_string(t);
            EXPECT_TRUE(is_embedding(s.inclusion)) << to_string(t);
            const std::set<Elem> first(s.inclusion.graph.begin(), s.inclusion.graph.end());
            for (Elem g : gens) EXPECT_TRUE(first.count(g));
            const Subalgebra again = generate_subalgebra(a, s.inclusion.graph);
            EXPECT_EQ(std::set<Elem>(again.inclusion.graph.begin(), again.inclusion.graph.end()), first);
            auto more = gens;
            more.push_back(static_cast<Elem>(oracle::uniform(rng, 0, a.size() - 1)));
            const Subalgebra bigger = generate_subalgebra(a, more);
            const std::set<Elem> second(bigger.inclusion.graph.begin(), bigger.inclusion.graph.end());
            EXPECT_TRUE(std::includes(second.begin(), second.end(), first.begin(), first.end()));
        }
}

TEST(Products, Examples) {
    const Product p = product(two_object(VarietyTag::JSL0), two_object(VarietyTag::JSL0));
    EXPECT_EQ(p.algebra.size(), 4u);
    EXPECT_TRUE(p.algebra.semilattice_laws_hold());
    EXPECT_EQ(product(FinAlgebra::set(2), FinAlgebra::set(3)).algebra.size(), 6u);
    EXPECT_EQ(product(FinAlgebra::vector_space(1), FinAlgebra::vector_space(1)).algebra.dim(), 2u);
    EXPECT_THROW(product(FinAlgebra::set(2), chain(2)), TagMismatch);
}

TEST(Products, ProjectionsAndPairing) {
    oracle::Rng rng(5);
    for (VarietyTag t : all_tags)
        for (int i = 0; i < 30; ++i) {
            const FinAlgebra a = oracle::random_algebra(rng, t, 8), b = oracle::random_algebra(rng, t, 8);
            const Product p = product(a, b);
            EXPECT_EQ(p.algebra.size(), a.size() * b.size()) << to_string(t);
            EXPECT_TRUE(validate_morphism(p.first)) << to_string(t);
            EXPECT_TRUE(validate_morphism(p.second)) << to_string(t);
            const FinAlgebra x = oracle::random_algebra(rng, t, 8);
            if (!oracle::morphism_exists(x, a) || !oracle::morphism_exists(x, b)) continue;
            const FinMorphism f = oracle::random_morphism(rng, x, a), g = oracle::random_morphism(rng, x, b);
            const FinMorphism fg = pair(f, g, p);
            EXPECT_TRUE(validate_morphism(fg)) << to_string(t);
            EXPECT_EQ(compose(p.first, fg).graph, f.graph);
            EXPECT_EQ(compose(p.second, fg).graph, g.graph);
        }
}

TEST(Factorization, Examples) {
    const FinAlgebra c = chain(3);
    const Factorization id = image_factorize(identity(c));
    EXPECT_EQ(id.epi.graph, identity(c).graph);
    EXPECT_EQ(id.mono.graph, identity(c).graph);
    const Factorization zero = image_factorize(FinMorphism{c, chain(4), {0, 0, 0}});
    EXPECT_EQ(zero.epi.codomain.size(), 1u);
    // rank-1 map on Z2²: both basis vectors go to the same vector
    const FinAlgebra v2 = FinAlgebra::vector_space(2);
    const Factorization rank = image_factorize(FinMorphism{v2, v2, {0, 1, 1, 0}});
    EXPECT_EQ(rank.epi.codomain.dim(), 1u);
}

TEST(Factorization, RandomMorphisms) {
    oracle::Rng rng(6);
    for (VarietyTag t : all_tags)
        for (int i = 0; i < 100; ++i) {
            const FinAlgebra x = oracle::random_algebra(rng, t), y = oracle::random_algebra(rng, t);
            if (!oracle::morphism_exists(x, y)) continue;
            const FinMorphism h = oracle::random_morphism(rng, x, y);
            const Factorization f = image_factorize(h);
            EXPECT_TRUE(validate_morphism(f.epi)) << to_string(t);
            EXPECT_TRUE(validate_morphism(f.mono)) << to_string(t);
            EXPECT_TRUE(is_surjective(f.epi)) << to_string(t);
            EXPECT_TRUE(is_injective(f.mono)) << to_string(t);
            EXPECT_TRUE(is_embedding(f.mono)) << to_string(t);
            EXPECT_EQ(compose(f.mono, f.epi).graph, h.graph) << to_string(t);
            if (t == VarietyTag::POS)
                for (Elem a = 0; a < f.mono.domain.size(); ++a)
                    for (Elem b = 0; b < f.mono.domain.size(); ++b)
                        EXPECT_EQ(f.mono.domain.leq(a, b), y.leq(f.mono(a), f.mono(b)));
        }
}

TEST(Factorization, PosQuotientsNeedNotReflectOrder) {
    // two incomparable points mapped monotonically onto a 2-chain
    locvar::Relation anti(2);
    anti.set(0, 0), anti.set(1, 1);
    locvar::Relation two_chain(2);
    two_chain.set(0, 0), two_chain.set(1, 1), two_chain.set(0, 1);
    const FinMorphism h{FinAlgebra::poset(anti), FinAlgebra::poset(two_chain), {0, 1}};
    EXPECT_TRUE(validate_morphism(h));
    EXPECT_TRUE(is_surjective(h));
    EXPECT_TRUE(is_injective(h));
    EXPECT_FALSE(is_embedding(h));
    EXPECT_FALSE(is_isomorphism(h));
}

TEST(Json, FinAlgebraShapes) {
    const Json jsl = to_json(chain(2));
    EXPECT_EQ(jsl["tag"], "JSL0");
    EXPECT_EQ(jsl["size"], 2);
    EXPECT_EQ(jsl["zero"], 0);
    EXPECT_EQ(jsl["join"], Json::parse("[[0,1],[1,1]]"));
    EXPECT_EQ(to_json(FinAlgebra::boolean(2))["atoms"], 2);
    EXPECT_EQ(to_json(FinAlgebra::vector_space(3))["dim"], 3);
    EXPECT_EQ(to_json(FinAlgebra::set(4))["size"], 4);
    oracle::Rng rng(1);
    EXPECT_TRUE(to_json(FinAlgebra::poset(oracle::random_poset(rng, 3))).contains("order"));
    EXPECT_TRUE(to_json(two_object(VarietyTag::DL01)).contains("ji_order"));
}
