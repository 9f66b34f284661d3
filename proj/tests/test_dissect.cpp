#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdissect/dissect.hpp"
#include "qdissect/dsl.hpp"

using namespace qdissect;
using dissect::IdentityRecord;
using dissect::PolyReduction;

TEST_CASE("catalog shape") {
    const auto& records = dissect::catalog();
    REQUIRE(records.size() == 10);
    for (const auto& r : records) CHECK(r.kind == dissect::IdentityKind::Exact);

    const IdentityRecord& f2f1sq = dissect::catalog_record("f2-over-f1sq");
    CHECK(f2f1sq.rhs.terms.size() == 3);

    const IdentityRecord& invcube = dissect::catalog_record("one-over-f1cubed");
    REQUIRE(invcube.rhs.terms.size() == 6);
    std::vector<long> coeffs;
    for (const auto& t : invcube.rhs.terms) coeffs.push_back(t.coeff.get_si());
    CHECK(coeffs == std::vector<long>{1, 3, 9, 8, 12, 16});

    CHECK(dissect::catalog_record("jacobi-cube").rhs_form == dissect::RhsForm::JacobiTheta);
    CHECK(dissect::catalog_record("binomial-lemma").rhs_form ==
          dissect::RhsForm::BinomialFamily);
    CHECK_THROWS_AS(dissect::catalog_record("no-such"), std::invalid_argument);
}

TEST_CASE("all identities verify at a moderate order") {
    for (const auto& r : dissect::catalog()) {
        dissect::VerifyResult result = dissect::verify_identity(r, 120);
        INFO("identity ", r.name);
        CHECK(result.passed);
    }
}

TEST_CASE("verification is monotone in the order") {
    const IdentityRecord& r = dissect::catalog_record("f1cubed-over-f3");
    CHECK(dissect::verify_identity(r, 1).passed);
    CHECK(dissect::verify_identity(r, 40).passed);
    CHECK(dissect::verify_identity(r, 200).passed);
}

TEST_CASE("a corrupted coefficient is caught with its exponent") {
    IdentityRecord r = dissect::catalog_record("f1cubed-over-f3");
    REQUIRE(r.rhs.terms.size() == 2);
    r.rhs.terms[1].coeff = -2;  // was -3
    dissect::VerifyResult result = dissect::verify_identity(r, 50);
    CHECK_FALSE(result.passed);
    CHECK(result.first_bad_exponent == 1);
    CHECK(result.lhs_coeff == -3);
    CHECK(result.rhs_coeff == -2);
}

TEST_CASE("catalog export round-trips through the DSL") {
    std::string exported = dissect::export_catalog();
    CHECK(exported.find("f2-over-f1sq:") != std::string::npos);
    for (const auto& r : dissect::catalog()) {
        if (r.rhs_form != dissect::RhsForm::Expression) continue;
        eta::EtaExpr lhs = dsl::eta_expr_from_ast(*dsl::parse_expr(r.lhs_text));
        eta::EtaExpr rhs = dsl::eta_expr_from_ast(*dsl::parse_expr(r.rhs_text));
        CHECK(lhs == r.lhs);
        CHECK(rhs == r.rhs);
        // canonical printer output parses back to the same expression
        CHECK(dsl::eta_expr_from_ast(*dsl::parse_expr(r.rhs.to_string())) == r.rhs);
    }
}

TEST_CASE("poly catalog holds the six reductions") {
    const auto& ps = dissect::poly_catalog();
    REQUIRE(ps.size() == 6);

    const PolyReduction& cube = ps[2];
    CHECK(cube.name == "cube-mod128");
    CHECK(cube.variables == std::vector<std::string>{"a", "b", "c"});
    // RHS is 64(a^3 + a^2 b + a b^2 + b^3)
    REQUIRE(cube.rhs.terms.size() == 4);
    for (const auto& [e, c] : cube.rhs.terms) CHECK(c == 64);

    CHECK(ps[3].name == "pow5-mod64");
    CHECK(ps[3].modulus == 64);

    // single substitution sanity check on the affine reduction:
    // 21*12 + 32 = 284 == 28 = 16*1 + 12 (mod 128)
    const PolyReduction& plus = ps[4];
    CHECK(plus.lhs.evaluate({0}) == 284);
    CHECK(plus.rhs.evaluate({0}) == 28);
    CHECK((plus.lhs.evaluate({0}) - plus.rhs.evaluate({0})) % 128 == 0);
}

TEST_CASE("all poly reductions verify by expansion and substitution") {
    for (const auto& p : dissect::poly_catalog()) {
        INFO("reduction ", p.name);
        CHECK(dissect::verify_poly_reduction(p));
        CHECK(dissect::verify_poly_by_substitution(p));
    }
}

TEST_CASE("poly verification has power") {
    PolyReduction p = dissect::poly_catalog()[1];  // pow9 mod 128
    p.modulus = 256;
    // exact expansion sees the coefficient that differs by 128; pointwise
    // substitution does not, since the deviation vanishes at every point
    CHECK_FALSE(dissect::verify_poly_reduction(p));

    PolyReduction corrupt = dissect::poly_catalog()[0];
    corrupt.rhs = corrupt.rhs + dissect::Polynomial::constant(1, 2);
    CHECK_FALSE(dissect::verify_poly_reduction(corrupt));
    CHECK_FALSE(dissect::verify_poly_by_substitution(corrupt));

    // identity polynomial vs itself mod 2
    PolyReduction self;
    self.name = "self";
    self.variables = {"a"};
    self.lhs = dissect::Polynomial::variable(0, 1);
    self.rhs = dissect::Polynomial::variable(0, 1);
    self.modulus = 2;
    CHECK(dissect::verify_poly_reduction(self));
    CHECK(dissect::verify_poly_by_substitution(self));
}
