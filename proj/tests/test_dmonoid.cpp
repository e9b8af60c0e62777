#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace locvar;

namespace {

const Alphabet ab("ab");
const Alphabet unary("a");

constexpr VarietyTag d_tags[] = {VarietyTag::SET, VarietyTag::POS, VarietyTag::JSL0, VarietyTag::Z2VECT};

// the minimal automaton of a language as a SET-algebra without finals
DAlgebra automaton(const LanguageId& l) {
    const Dfa& d = l.dfa();
    const FinAlgebra states = FinAlgebra::set(d.states);
    DAlgebra a{d.alphabet, states, {}, static_cast<Elem>(d.initial)};
    for (std::size_t c = 0; c < d.alphabet.size(); ++c) {
        FinMorphism f{states, states, std::vector<Elem>(d.states)};
        for (State q = 0; q < d.states; ++q) f.graph[q] = static_cast<Elem>(d.delta[q * d.alphabet.size() + c]);
        a.alpha.push_back(std::move(f));
    }
    return a;
}

SigmaMonoid syntactic(std::string_view r, const Alphabet& alphabet) {
    return oracle::as_sigma_monoid(oracle::syntactic_monoid(parse_regex(r, alphabet), alphabet), alphabet);
}

SigmaMonoid cyclic(std::size_t n) { return syntactic("(" + std::string(n, 'a') + ")*", unary); }

std::string random_word(oracle::Rng& rng, std::size_t max_len) {
    std::string w;
    for (std::size_t n = oracle::uniform(rng, 0, max_len); n > 0; --n) w += oracle::coin(rng, 0.5) ? 'a' : 'b';
    return w;
}

FreeElement random_free(oracle::Rng& rng, VarietyTag tag) {
    if (tag == VarietyTag::SET || tag == VarietyTag::POS) return FreeElement::word(tag, random_word(rng, 4));
    std::vector<std::string> ws;
    for (std::size_t n = oracle::uniform(rng, 0, 4); n > 0; --n) ws.push_back(random_word(rng, 3));
    return FreeElement::language(tag, ws);
}

// JSL monoid on the chain 0 < 1 < 2 with the given multiplication
SigmaMonoid chain_monoid(const std::function<Elem(Elem, Elem)>& mul, Elem unit) {
    std::vector<Elem> join(9), mult(9);
    for (Elem x = 0; x < 3; ++x)
        for (Elem y = 0; y < 3; ++y) join[x * 3 + y] = std::max(x, y), mult[x * 3 + y] = mul(x, y);
    return SigmaMonoid{unary, FinAlgebra::semilattice(3, join, 0), unit, mult, {1}};
}

// the group algebra Z2[C2] with basis e = 1, g = 2
SigmaMonoid group_algebra() {
    const auto basis = [](Elem i, Elem j) -> Elem { return i == j ? 1 : 2; };
    std::vector<Elem> mult(16);
    for (Elem x = 0; x < 4; ++x)
        for (Elem y = 0; y < 4; ++y) {
            Elem r = 0;
            for (Elem i = 0; i < 2; ++i)
                for (Elem j = 0; j < 2; ++j)
                    if ((x >> i & 1) && (y >> j & 1)) r ^= basis(i, j);
            mult[x * 4 + y] = r;
        }
    return SigmaMonoid{unary, FinAlgebra::vector_space(2), 1, mult, {2}};
}

}  // namespace

TEST(FreeMonoid, Examples) {
    EXPECT_EQ(free_mult(FreeElement::word(VarietyTag::SET, "ab"), FreeElement::word(VarietyTag::SET, "a")).words,
              (std::vector<std::string>{"aba"}));
    EXPECT_EQ(free_mult(FreeElement::language(VarietyTag::JSL0, {"a", "b"}), FreeElement::language(VarietyTag::JSL0, {"", "a"}))
                  .words,
              (std::vector<std::string>{"a", "aa", "b", "ba"}));
    // (ε + a)(ε + a) = ε + 2a + aa = ε + aa
    EXPECT_EQ(free_mult(FreeElement::language(VarietyTag::Z2VECT, {"", "a"}), FreeElement::language(VarietyTag::Z2VECT, {"", "a"}))
                  .words,
              (std::vector<std::string>{"", "aa"}));
    EXPECT_TRUE(free_mult(FreeElement::language(VarietyTag::JSL0, {}), FreeElement::unit(VarietyTag::JSL0)).words.empty());
    EXPECT_THROW(free_mult(FreeElement::unit(VarietyTag::SET), FreeElement::unit(VarietyTag::JSL0)), TagMismatch);
}

TEST(FreeMonoid, Z2MatchesFactorizationCount) {
    oracle::Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        const FreeElement x = random_free(rng, VarietyTag::Z2VECT), y = random_free(rng, VarietyTag::Z2VECT);
        const std::set<std::string> expect = oracle::odd_factorizations(x.words, y.words);
        EXPECT_EQ(free_mult(x, y).words, std::vector<std::string>(expect.begin(), expect.end()));
    }
}

TEST(FreeMonoid, Laws) {
    oracle::Rng rng(32);
    for (VarietyTag t : d_tags)
        for (int i = 0; i < 300; ++i) {
            const FreeElement x = random_free(rng, t), y = random_free(rng, t), z = random_free(rng, t);
            EXPECT_EQ(free_mult(free_mult(x, y), z), free_mult(x, free_mult(y, z))) << to_string(t);
            EXPECT_EQ(free_mult(FreeElement::unit(t), x), x);
            EXPECT_EQ(free_mult(x, FreeElement::unit(t)), x);
            if (t == VarietyTag::JSL0 || t == VarietyTag::Z2VECT) {
                std::vector<std::string> sum = y.words;
                sum.insert(sum.end(), z.words.begin(), z.words.end());
                FreeElement yz = FreeElement::language(t, sum);
                if (t == VarietyTag::Z2VECT) {
                    std::set<std::string> odd;
                    for (const auto& w : y.words) odd.insert(w);
                    for (const auto& w : z.words)
                        if (!odd.erase(w)) odd.insert(w);
                    yz = FreeElement::language(t, {odd.begin(), odd.end()});
                }
                const FreeElement lhs = free_mult(x, yz);
                std::vector<std::string> rhs_words = free_mult(x, y).words;
                const auto xz = free_mult(x, z).words;
                if (t == VarietyTag::JSL0) {
                    rhs_words.insert(rhs_words.end(), xz.begin(), xz.end());
                    EXPECT_EQ(lhs, FreeElement::language(t, rhs_words));
                } else {
                    std::set<std::string> odd(rhs_words.begin(), rhs_words.end());
                    for (const auto& w : xz)
                        if (!odd.erase(w)) odd.insert(w);
                    EXPECT_EQ(lhs, FreeElement::language(t, {odd.begin(), odd.end()}));
                }
            }
        }
}

TEST(TransitionMonoid, Examples) {
    EXPECT_EQ(transition_monoid(automaton(LanguageId::full(ab))).size(), 1u);
    EXPECT_EQ(transition_monoid(automaton(compile("(aa)*", unary))).size(), 2u);
    const SigmaMonoid m = transition_monoid(automaton(compile("(ab)*", ab)));
    EXPECT_EQ(m.size(), 6u);
    EXPECT_TRUE(validate_monoid(m));
    EXPECT_EQ(eval_word(m, "aba"), eval_word(m, "a"));
    EXPECT_EQ(eval_word(m, "bab"), eval_word(m, "b"));
    EXPECT_EQ(eval_word(m, "aa"), eval_word(m, "bb"));
    EXPECT_NE(eval_word(m, "ab"), eval_word(m, "ba"));
    EXPECT_EQ(eval_word(m, ""), m.unit);
}

TEST(TransitionMonoid, MatchesSyntacticMonoid) {
    const auto regexes = oracle::regex_corpus(33, 60, 6);
    for (const auto& r : regexes) {
        const SigmaMonoid m = transition_monoid(automaton(compile(r, ab)));
        const SigmaMonoid s = syntactic(r, ab);
        EXPECT_TRUE(validate_monoid(m)) << r;
        EXPECT_TRUE(monoid_isomorphism(m, s).has_value()) << r;
    }
}

TEST(EvalWord, IsHomomorphism) {
    oracle::Rng rng(34);
    for (VarietyTag c : {VarietyTag::BA, VarietyTag::DL01, VarietyTag::JSL0, VarietyTag::Z2VECT}) {
        const DualityTag d = duality_for(c);
        const SigmaMonoid m = piece_to_monoid(d, rqc_closure(c, {compile("(ab)*", ab)}));
        for (int i = 0; i < 200; ++i) {
            const FreeElement x = random_free(rng, m.tag()), y = random_free(rng, m.tag());
            EXPECT_EQ(eval_word(m, free_mult(x, y)), m.mul(eval_word(m, x), eval_word(m, y))) << to_string(c);
        }
        EXPECT_EQ(eval_word(m, FreeElement::unit(m.tag())), m.unit);
    }
}

TEST(Validate, Positives) {
    EXPECT_TRUE(validate_monoid(chain_monoid([](Elem x, Elem y) { return std::min(x, y); }, 2)));
    EXPECT_TRUE(validate_monoid(group_algebra()));
    for (VarietyTag t : d_tags) EXPECT_TRUE(validate_monoid(trivial_monoid(t, ab)));
    EXPECT_TRUE(validate_monoid(cyclic(6)));
}

TEST(Validate, Negatives) {
    SigmaMonoid m = transition_monoid(automaton(compile("(ab)*", ab)));
    // break one product that involves no unit
    const Elem a = m.gen[0], b = m.gen[1];
    m.mult[a * m.size() + b] = m.mul(b, a);
    const MonoidCheck broken = check_monoid(m);
    EXPECT_FALSE(broken.ok());

    // x·y = x ∨ y on a chain: translations do not send 0 to 0
    const MonoidCheck join = check_monoid(chain_monoid([](Elem x, Elem y) { return std::max(x, y); }, 0));
    EXPECT_TRUE(join.associative);
    EXPECT_TRUE(join.unital);
    EXPECT_FALSE(join.bilinear);

    // bilinear on Z2² with e1·e1 = e2, e2·e1 = e1 and the other basis products 0:
    // (e1·e1)·e1 = e1 but e1·(e1·e1) = 0
    const auto bilinear_table = [](Elem x, Elem y) {
        Elem r = 0;
        if ((x & 1) && (y & 1)) r ^= 2;
        if ((x & 2) && (y & 1)) r ^= 1;
        return r;
    };
    SigmaMonoid skew{unary, FinAlgebra::vector_space(2), 1, std::vector<Elem>(16), {1}};
    for (Elem x = 0; x < 4; ++x)
        for (Elem y = 0; y < 4; ++y) skew.mult[x * 4 + y] = bilinear_table(x, y);
    const MonoidCheck sk = check_monoid(skew);
    EXPECT_TRUE(sk.bilinear);
    EXPECT_FALSE(sk.associative);

    SigmaMonoid nonunital = cyclic(2);
    nonunital.unit = nonunital.gen[0];
    EXPECT_FALSE(check_monoid(nonunital).unital);

    // an element nobody generates
    SigmaMonoid extra = trivial_monoid(VarietyTag::SET, unary);
    extra.carrier = FinAlgebra::set(2);
    extra.mult = {0, 1, 1, 1};
    EXPECT_FALSE(check_monoid(extra).generated);
}

TEST(Quotients, CyclicGroups) {
    const SigmaMonoid c2 = cyclic(2), c3 = cyclic(3), c6 = cyclic(6);
    const SigmaMonoid s = subdirect_product(c2, c3);
    EXPECT_EQ(s.size(), 6u);
    EXPECT_TRUE(validate_monoid(s));
    EXPECT_TRUE(monoid_isomorphism(s, c6).has_value());
    EXPECT_TRUE(quotient_leq(c2, c6));
    EXPECT_TRUE(quotient_leq(c3, c6));
    EXPECT_FALSE(quotient_leq(c6, c2));
    EXPECT_FALSE(quotient_leq(c2, c3));
    EXPECT_TRUE(quotient_leq(trivial_monoid(VarietyTag::SET, unary), c3));
    EXPECT_TRUE(pseudovariety_member(c6, {c2, c3}));
    EXPECT_TRUE(pseudovariety_member(c3, {c6}));
    EXPECT_FALSE(pseudovariety_member(c6, {c2}));
    EXPECT_FALSE(pseudovariety_member(c2, {}));
    EXPECT_THROW(subdirect_product(c2, trivial_monoid(VarietyTag::JSL0, unary)), TagMismatch);
}

TEST(Quotients, SubdirectIsJoin) {
    // a monoid is below the subdirect product exactly when its language family is covered
    const auto regexes = oracle::regex_corpus(35, 30, 4);
    for (std::size_t i = 0; i + 2 < regexes.size(); i += 3) {
        const SigmaMonoid m1 = syntactic(regexes[i], ab), m2 = syntactic(regexes[i + 1], ab),
                          m3 = syntactic(regexes[i + 2], ab);
        const SigmaMonoid j = subdirect_product(m1, m2);
        EXPECT_TRUE(validate_monoid(j));
        EXPECT_TRUE(quotient_leq(m1, j));
        EXPECT_TRUE(quotient_leq(m2, j));
        EXPECT_TRUE(quotient_leq(m1, m1));
        EXPECT_TRUE(monoid_isomorphism(subdirect_product(m1, m1), m1).has_value());
        EXPECT_TRUE(monoid_isomorphism(subdirect_product(m1, m2), subdirect_product(m2, m1)).has_value());
        if (quotient_leq(m1, m3) && quotient_leq(m2, m3)) EXPECT_TRUE(quotient_leq(j, m3));
        EXPECT_EQ(quotient_leq(j, m3), quotient_leq(m1, m3) && quotient_leq(m2, m3));
    }
}

TEST(Quotients, QuotientMapIsMorphism) {
    const SigmaMonoid c6 = cyclic(6), c3 = cyclic(3);
    const auto q = quotient_map(c6, c3);
    ASSERT_TRUE(q.has_value());
    for (Elem x = 0; x < c6.size(); ++x)
        for (Elem y = 0; y < c6.size(); ++y) EXPECT_EQ(q->at(c6.mul(x, y)), c3.mul(q->at(x), q->at(y)));
}

TEST(Opposite, ReversesProducts) {
    const SigmaMonoid m = syntactic("(ab)*", ab);
    const SigmaMonoid o = opposite(m);
    EXPECT_TRUE(validate_monoid(o));
    EXPECT_EQ(eval_word(o, "ab"), eval_word(m, "ba"));
    // the reversal of a*b* is b*a*
    const SigmaMonoid forward = syntactic("a*b*", ab);
    EXPECT_FALSE(monoid_isomorphism(opposite(forward), forward).has_value());
    EXPECT_TRUE(monoid_isomorphism(opposite(forward), syntactic("b*a*", ab)).has_value());
}

TEST(LeftAction, InitialIsUnit) {
    const SigmaMonoid m = syntactic("(ab)*", ab);
    const DAlgebra a = left_action_algebra(m);
    EXPECT_EQ(a.init, m.unit);
    EXPECT_TRUE(is_reachable(a));
    for (std::size_t c = 0; c < 2; ++c)
        for (Elem x = 0; x < m.size(); ++x) EXPECT_EQ(a.alpha[c](x), m.mul(m.gen[c], x));
}

TEST(Json, MonoidShape) {
    const Json j = to_json(cyclic(3));
    EXPECT_EQ(j["mult"].size(), 3u);
    EXPECT_EQ(j["gen"].size(), 1u);
    EXPECT_TRUE(j.contains("unit"));
    EXPECT_EQ(j["carrier"]["tag"], "SET");
}
