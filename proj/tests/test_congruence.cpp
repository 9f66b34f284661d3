#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdissect/congruence.hpp"

using namespace qdissect;
using namespace qdissect::congruence;

namespace {

// shared across test cases; moderate budget keeps the suite quick
const Source& shared_source() {
    static Source source(2500);
    return source;
}

}  // namespace

TEST_CASE("indexed family arithmetic") {
    IndexedFamily f0 = indexed_family(0);
    CHECK(f0.a == 54);
    CHECK(f0.b == 38);
    IndexedFamily f1 = indexed_family(1);
    CHECK(f1.a == 486);
    CHECK(f1.b == 344);
    IndexedFamily f2 = indexed_family(2);
    CHECK(f2.a == 4374);
    CHECK(f2.b == 3098);
    for (int k = 0; k <= 6; ++k) CHECK(indexed_family(k).b % 9 == 2);
}

TEST_CASE("check_family verifies the mod-64 progression on a small range") {
    const Source& source = shared_source();
    FamilyReport report = check_family(family_27n11_mod64(), 30, source);
    CHECK(report.status == "verified");
    CHECK(report.instances_checked == 31);
    CHECK(report.counterexamples.empty());
}

TEST_CASE("the mod-128 sharpening of 27n+11 fails at n = 0") {
    const Source& source = shared_source();
    CongruenceFamily sharpened{27, 11, 128, "count(27n+11) == 0 (mod 128)"};
    FamilyReport report = check_family(sharpened, 20, source);
    // count(11) = 320 == 64 (mod 128); this is why the claim stops at 64
    CHECK(report.status == "failed");
    REQUIRE(!report.counterexamples.empty());
    CHECK(report.counterexamples[0].n == 0);
    CHECK(report.counterexamples[0].argument == 11);
    CHECK(report.counterexamples[0].residue == 64);
}

TEST_CASE("budget overruns are rejected") {
    const Source& source = shared_source();
    CHECK_THROWS_AS(check_family(family_27n11_mod64(), 1000000, source),
                    std::invalid_argument);
}

TEST_CASE("indexed family holds for k = 0 within the unit-test budget") {
    const Source& source = shared_source();
    IndexedFamilyReport report = check_indexed_family(0, source);
    REQUIRE(report.per_k.size() == 1);
    CHECK(report.passed());
    // budget 2500 covers n = 0..45 for the 54n+38 progression
    CHECK(report.per_k[0].instances_checked == 46);
}

TEST_CASE("closing remark on a small range") {
    const Source& source = shared_source();
    FamilyReport report = check_closing_remark(25, source);
    CHECK(report.status == "verified");
}

TEST_CASE("t1_t2_decomposition at a moderate order") {
    DecompositionReport report = t1_t2_decomposition(120);
    CHECK(report.exact_step_ok);
    CHECK(report.split_ok);
    CHECK(report.reduced_form_ok);
    CHECK(report.passed());
}

TEST_CASE("claim templates") {
    eta::EtaExpr minus0 = t1_claim_template(-1, 0);
    REQUIRE(minus0.terms.size() == 2);
    CHECK(minus0.terms[0].coeff == -32);
    CHECK(minus0.terms[1].coeff == -12);
    CHECK_THROWS_AS(t1_claim_template(2, 0), std::invalid_argument);

    CHECK(t2_claim_template(0).terms.size() == 1);
    CHECK(t2_claim_template(1).terms.size() == 2);
    CHECK_THROWS_AS(t2_claim_template(5), std::invalid_argument);
}

TEST_CASE("match_claim_T1 finds the unique k=1 instance") {
    auto match = match_claim_T1(1, 2000);
    REQUIRE(match.has_value());
    CHECK(match->sign == -1);
    CHECK(match->a == 0);
    CHECK(match->verified_order == (2000 - 2) / 9);
    CHECK_THROWS_AS(match_claim_T1(1, 10), std::invalid_argument);
    CHECK_THROWS_AS(match_claim_T1(0, 2000), std::invalid_argument);
}

TEST_CASE("match_claim_T1 k=2 follows the induction image of k=1") {
    auto match = match_claim_T1(2, 2500);
    REQUIRE(match.has_value());
    // sign flips, a maps through 5a+1 on the minus branch: (-, 0) -> (+, 1)
    CHECK(match->sign == 1);
    CHECK(match->a == 1);
}

TEST_CASE("match_claim_T2 lambda alternates from 0") {
    auto m0 = match_claim_T2(0, 600);
    REQUIRE(m0.has_value());
    CHECK(m0->lambda == 0);
    auto m1 = match_claim_T2(1, 2000);
    REQUIRE(m1.has_value());
    CHECK(m1->lambda == 1);
}

TEST_CASE("negative controls: corrupted templates do not match") {
    CoefficientRing m128 = CoefficientRing::mod(128);
    Series t1 = eta::expand_expr(t1_series_expr(), m128, 900);
    Series lane = extract_ap(t1, 2, 9);
    int depth = lane.order();
    Series good = eta::expand_expr(t1_claim_template(-1, 0), m128, depth);
    CHECK(congruent_upto(lane, good, 128, depth));

    eta::EtaExpr corrupted = t1_claim_template(-1, 0);
    corrupted.terms[0].coeff = -16;  // was -32
    Series bad = eta::expand_expr(corrupted, m128, depth);
    CHECK_FALSE(congruent_upto(lane, bad, 128, depth));

    Series t2 = eta::expand_expr(t2_series_expr(), m128, 600);
    Series lane2 = extract_ap(t2, 0, 2);
    eta::EtaExpr corrupted2 = t2_claim_template(0);
    corrupted2.terms[0].quotient = eta::EtaQuotient::from_pairs({{3, 3}, {6, 2}});
    Series bad2 = eta::expand_expr(corrupted2, m128, lane2.order());
    CHECK_FALSE(congruent_upto(lane2, bad2, 128, lane2.order()));
}

TEST_CASE("one induction step beyond the k=1 match lands on even support") {
    // the 3n+1 branch of the level-1 lane: step 27, residue 11; odd-index
    // coefficients must vanish mod 128, and the whole lane is 64*f2^5
    CoefficientRing m128 = CoefficientRing::mod(128);
    Series t1 = eta::expand_expr(t1_series_expr(), m128, 2500);
    Series lane = extract_ap(t1, 11, 27);
    int depth = lane.order();
    for (int i = 1; i <= depth; i += 2) CHECK(lane.residue(i) == 0);
    Series expected = scale(pow(eta::expand_f(2, m128, depth), 5), 64);
    CHECK(congruent_upto(lane, expected, 128, depth));
}

TEST_CASE("quadratic residue facts") {
    CHECK(square_progression_empty(5, 12, true));
    CHECK(square_progression_empty(21, 36, true));
    CHECK_FALSE(square_progression_empty(1, 12, true));
    CHECK_FALSE(square_progression_empty(4, 12, false));
}

TEST_CASE("triangular gaps agree with the QR facts") {
    CHECK(triangular_gap_check(kGapTriangularPlus3k, 10000));
    CHECK(triangular_gap_check(kGapTriangular3n1, 10000));
    CHECK(triangular_gap_check(kGapTriangular9n5, 10000));
    // positive control: m(m+1) = 2n has solutions
    CHECK_FALSE(triangular_gap_check({0, 2, 0}, 10000));
}
