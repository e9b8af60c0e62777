#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace locvar;

namespace {

const Alphabet ab("ab");
const Alphabet unary("a");

constexpr DualityTag all_dualities[] = {DualityTag::BA_SET, DualityTag::DL01_POS, DualityTag::JSL_SELF,
                                        DualityTag::Z2_SELF};

LanguageId lang(std::string_view r, const Alphabet& alphabet = ab) { return compile(r, alphabet); }

LocalVarietyPiece piece(DualityTag d, std::vector<LanguageId> gens) { return rqc_closure(c_side(d), gens); }

SigmaMonoid syntactic(std::string_view r, const Alphabet& alphabet) {
    return oracle::as_sigma_monoid(oracle::syntactic_monoid(parse_regex(r, alphabet), alphabet), alphabet);
}

Limits test_limits() {
    Limits l;
    l.max_carrier = 512;
    return l;
}

}  // namespace

TEST(PieceToMonoid, Examples) {
    const SigmaMonoid m = piece_to_monoid(DualityTag::BA_SET, piece(DualityTag::BA_SET, {lang("(ab)*")}));
    EXPECT_EQ(m.size(), 6u);
    EXPECT_TRUE(validate_monoid(m));
    EXPECT_TRUE(monoid_isomorphism(m, syntactic("(ab)*", ab)).has_value());
    EXPECT_EQ(eval_word(m, "aba"), eval_word(m, "a"));

    EXPECT_EQ(piece_to_monoid(DualityTag::BA_SET, piece(DualityTag::BA_SET, {LanguageId::full(ab)})).size(), 1u);
    EXPECT_EQ(piece_to_monoid(DualityTag::JSL_SELF, piece(DualityTag::JSL_SELF, {LanguageId::empty(ab)})).size(), 1u);
    EXPECT_THROW(piece_to_monoid(DualityTag::BA_SET, generate_subcoalgebra(VarietyTag::BA, {lang("(ab)*")})),
                 NotRqcClosed);
}

TEST(PieceToMonoid, BooleanPiecesGiveSyntacticMonoids) {
    for (const auto& r : oracle::regex_corpus(41, 25, 4)) {
        LocalVarietyPiece p;
        try {
            p = piece(DualityTag::BA_SET, {lang(r)});
        } catch (const ResourceExceeded&) {
            continue;
        }
        const SigmaMonoid m = piece_to_monoid(DualityTag::BA_SET, p);
        EXPECT_TRUE(validate_monoid(m)) << r;
        EXPECT_TRUE(monoid_isomorphism(m, syntactic(r, ab)).has_value()) << r;
    }
}

TEST(MonoidToPiece, Examples) {
    const LocalVarietyPiece p = monoid_to_piece(DualityTag::BA_SET, trivial_monoid(VarietyTag::SET, ab));
    EXPECT_EQ(label_set(p), (std::set<LanguageId>{LanguageId::empty(ab), LanguageId::full(ab)}));
    // Z2 with unit 1 and a ↦ 1 recognizes only ∅ and Σ*
    const SigmaMonoid z{unary, FinAlgebra::vector_space(1), 1, {0, 0, 0, 1}, {1}};
    ASSERT_TRUE(validate_monoid(z));
    const LocalVarietyPiece zp = monoid_to_piece(DualityTag::Z2_SELF, z);
    EXPECT_EQ(zp.carrier.dim(), 1u);
    EXPECT_EQ(label_set(zp), (std::set<LanguageId>{LanguageId::empty(unary), LanguageId::full(unary)}));
    EXPECT_THROW(monoid_to_piece(DualityTag::BA_SET, z), TagMismatch);
    // C2 recognizes the Boolean combinations of (aa)*
    const LocalVarietyPiece c2 = monoid_to_piece(DualityTag::BA_SET, syntactic("(aa)*", unary));
    EXPECT_EQ(label_set(c2), oracle::closure(VarietyTag::BA, {lang("(aa)*", unary)}, true));
    EXPECT_TRUE(is_rqc_closed(c2));
}

TEST(Roundtrip, Examples) {
    const std::size_t expect_piece[] = {64, 21, 16, 16};
    const std::size_t expect_monoid[] = {6, 6, 16, 16};
    for (std::size_t i = 0; i < 4; ++i) {
        const DualityTag d = all_dualities[i];
        const RoundtripResult r = roundtrip_check(d, piece(d, {lang("(ab)*")}));
        EXPECT_TRUE(r.ok()) << to_string(d);
        EXPECT_EQ(r.piece_size, expect_piece[i]) << to_string(d);
        EXPECT_EQ(r.monoid_size, expect_monoid[i]) << to_string(d);
    }
}

TEST(Roundtrip, RandomGenerators) {
    const auto regexes = oracle::regex_corpus(42, 24, 4);
    for (DualityTag d : all_dualities)
        for (std::size_t i = 0; i + 1 < regexes.size(); i += 2) {
            std::vector<LanguageId> gens{lang(regexes[i])};
            if (i % 4) gens.push_back(lang(regexes[i + 1]));
            LocalVarietyPiece p;
            try {
                p = rqc_closure(c_side(d), gens, test_limits());
                const RoundtripResult r = roundtrip_check(d, p, test_limits());
                EXPECT_TRUE(r.ok()) << to_string(d) << " " << regexes[i];
                const auto m = monoid_roundtrip(d, piece_to_monoid(d, p, test_limits()), test_limits());
                EXPECT_TRUE(m.has_value()) << to_string(d) << " " << regexes[i];
            } catch (const ResourceExceeded&) {
                continue;
            }
        }
}

TEST(Roundtrip, MonoidSide) {
    for (std::size_t n : {1, 2, 3, 6}) {
        const SigmaMonoid c = syntactic("(" + std::string(n, 'a') + ")*", unary);
        EXPECT_TRUE(monoid_roundtrip(DualityTag::BA_SET, c).has_value()) << n;
    }
    for (DualityTag d : all_dualities)
        EXPECT_TRUE(monoid_roundtrip(d, trivial_monoid(d_side(d), ab)).has_value()) << to_string(d);
}

TEST(Roundtrip, MismatchReportsLanguage) {
    const LocalVarietyPiece p = piece(DualityTag::JSL_SELF, {lang("(ab)*")});
    const LocalVarietyPiece q = piece(DualityTag::JSL_SELF, {lang("a*")});
    const RoundtripResult r = match_pieces(p, q);
    EXPECT_FALSE(r.ok());
    ASSERT_TRUE(r.counterexample.has_value());
    const std::set<LanguageId> first = label_set(p), second = label_set(q);
    EXPECT_EQ(first.count(r.counterexample->language) == 1, r.counterexample->in_first);
    EXPECT_NE(first.count(r.counterexample->language), second.count(r.counterexample->language));
}

TEST(Order, InclusionMatchesQuotients) {
    const std::vector<std::string> unary_regexes{"(aa)*", "(aaa)*", "(aaaaaa)*", "a*", "a", "aa*"};
    for (DualityTag d : all_dualities)
        for (const auto& r1 : unary_regexes)
            for (const auto& r2 : unary_regexes) {
                const LocalVarietyPiece p1 = piece(d, {lang(r1, unary)}), p2 = piece(d, {lang(r2, unary)});
                EXPECT_TRUE(order_check(d, p1, p2)) << to_string(d) << " " << r1 << " " << r2;
            }
    const LocalVarietyPiece c2 = piece(DualityTag::BA_SET, {lang("(aa)*", unary)});
    const LocalVarietyPiece c6 = piece(DualityTag::BA_SET, {lang("(aaaaaa)*", unary)});
    EXPECT_TRUE(quotient_leq(piece_to_monoid(DualityTag::BA_SET, c2), piece_to_monoid(DualityTag::BA_SET, c6)));
    EXPECT_FALSE(quotient_leq(piece_to_monoid(DualityTag::BA_SET, c6), piece_to_monoid(DualityTag::BA_SET, c2)));
}

TEST(Join, Examples) {
    const DualityTag d = DualityTag::BA_SET;
    const LocalVarietyPiece p2 = piece(d, {lang("(aa)*", unary)}), p3 = piece(d, {lang("(aaa)*", unary)});
    const LocalVarietyPiece j = piece_join(d, p2, p3);
    const SigmaMonoid m = piece_to_monoid(d, j);
    EXPECT_EQ(m.size(), 6u);
    EXPECT_TRUE(monoid_isomorphism(m, syntactic("(aaaaaa)*", unary)).has_value());
    EXPECT_EQ(label_set(piece_join(d, p2, p2)), label_set(p2));
    EXPECT_THROW(piece_join(DualityTag::JSL_SELF, p2, p3), TagMismatch);
}

TEST(Join, MatchesSubdirectProduct) {
    const auto regexes = oracle::regex_corpus(43, 16, 3);
    for (DualityTag d : all_dualities)
        for (std::size_t i = 0; i + 1 < regexes.size(); i += 2) {
            try {
                const LocalVarietyPiece p1 = rqc_closure(c_side(d), {lang(regexes[i])}, test_limits());
                const LocalVarietyPiece p2 = rqc_closure(c_side(d), {lang(regexes[i + 1])}, test_limits());
                const LocalVarietyPiece j = piece_join(d, p1, p2, test_limits());
                EXPECT_TRUE(is_rqc_closed(j));
                const SigmaMonoid s = subdirect_product(piece_to_monoid(d, p1), piece_to_monoid(d, p2));
                EXPECT_TRUE(monoid_isomorphism(piece_to_monoid(d, j, test_limits()), s).has_value())
                    << to_string(d) << " " << regexes[i] << " " << regexes[i + 1];
            } catch (const ResourceExceeded&) {
                continue;
            }
        }
}

TEST(Correspondence, Holds) {
    for (DualityTag d : all_dualities) {
        const Correspondence c = correspond(d, piece(d, {lang("(ab)*")}));
        EXPECT_TRUE(correspondence_holds(c)) << to_string(d);
        EXPECT_EQ(c.monoid.size(), c.algebra.carrier.size());
    }
    Correspondence broken = correspond(DualityTag::BA_SET, piece(DualityTag::BA_SET, {lang("(ab)*")}));
    std::swap(broken.witness.graph[0], broken.witness.graph[1]);
    EXPECT_FALSE(correspondence_holds(broken));
}

TEST(Json, RoundtripReport) {
    const LocalVarietyPiece p = piece(DualityTag::BA_SET, {lang("(ab)*")});
    const SigmaMonoid m = piece_to_monoid(DualityTag::BA_SET, p);
    EXPECT_EQ(roundtrip_json(roundtrip_check(DualityTag::BA_SET, p)), "ok");
    const Json report = correspondence_report(p, m, roundtrip_check(DualityTag::BA_SET, p));
    EXPECT_EQ(report["roundtrip"], "ok");
    EXPECT_EQ(report["monoid"]["size"], 6);
}
