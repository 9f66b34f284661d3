#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdissect/eta.hpp"
#include "qdissect/oracle.hpp"

using namespace qdissect;
using eta::EtaQuotient;

namespace {

// Independent oracle: pentagonal number theorem. f_1 has coefficient
// (-1)^j at the generalized pentagonal numbers j(3j-1)/2, j in Z.
Series pentagonal_f1(int order) {
    std::vector<mpz_class> c(static_cast<std::size_t>(order) + 1);
    for (long long j = -order - 1; j <= order + 1; ++j) {
        long long g = j * (3 * j - 1) / 2;
        if (g >= 0 && g <= order)
            c[static_cast<std::size_t>(g)] = (j % 2 == 0) ? 1 : -1;
    }
    return Series(std::move(c), CoefficientRing::exact());
}

std::vector<long> coeff_values(const Series& s) {
    std::vector<long> out;
    for (int i = 0; i <= s.order(); ++i) out.push_back(s.coeff(i).get_si());
    return out;
}

const CoefficientRing kExact = CoefficientRing::exact();

}  // namespace

TEST_CASE("expand_f matches the direct finite product values") {
    CHECK(coeff_values(eta::expand_f(1, 7)) ==
          std::vector<long>{1, -1, -1, 0, 0, 1, 0, 1});
    CHECK(coeff_values(eta::expand_f(2, 3)) == std::vector<long>{1, 0, -1, 0});
    CHECK(coeff_values(eta::expand_f(9, 5)) == std::vector<long>{1, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(eta::expand_f(0, 5), std::invalid_argument);
}

TEST_CASE("expand_f agrees with the pentagonal number theorem") {
    Series product = eta::expand_f(1, 300);
    Series theorem = pentagonal_f1(300);
    CHECK(equal_upto(product, theorem, 300));
}

TEST_CASE("expand_f coefficients stay in {-1, 0, +1}") {
    for (int k : {1, 2, 3, 6, 9, 18}) {
        Series s = eta::expand_f(k, 200);
        for (int i = 0; i <= 200; ++i) {
            mpz_class c = s.coeff(i);
            CHECK((c == 0 || c == 1 || c == -1));
        }
    }
}

TEST_CASE("dilation law: f_k is f_1 with exponents scaled by k") {
    int n = 120;
    for (int k : {2, 3, 9}) {
        Series fk = eta::expand_f(k, n);
        Series f1 = eta::expand_f(1, n / k);
        for (int i = 0; i <= n; ++i)
            CHECK(fk.coeff(i) == (i % k == 0 ? f1.coeff(i / k) : mpz_class(0)));
    }
}

TEST_CASE("modular expand_f is the reduction of the exact expansion") {
    Series exact = eta::expand_f(1, 150);
    Series mod = eta::expand_f(1, CoefficientRing::mod(128), 150);
    CHECK(reduce_mod(exact, 128) == mod);
}

TEST_CASE("expand_eta_quotient basics") {
    Series r6 = eta::expand_eta_quotient(
        EtaQuotient::from_pairs({{1, -2}, {2, 1}, {6, 1}}), kExact, 4);
    CHECK(coeff_values(r6) == std::vector<long>{1, 2, 4, 8, 14});

    CHECK(eta::expand_eta_quotient(EtaQuotient::single(1, 1), kExact, 30) ==
          eta::expand_f(1, 30));
    CHECK(eta::expand_eta_quotient(EtaQuotient{}, kExact, 5) ==
          Series::one(kExact, 5));
}

TEST_CASE("quotient times its inverse is 1") {
    EtaQuotient q = EtaQuotient::from_pairs({{1, -2}, {2, 1}, {6, 1}});
    Series a = eta::expand_eta_quotient(q, kExact, 60);
    Series b = eta::expand_eta_quotient(q.inverse(), kExact, 60);
    CHECK(equal_upto(mul(a, b), Series::one(kExact, 60), 60));
}

TEST_CASE("mul of f1 and its inverse is 1 to order 50") {
    Series f1 = eta::expand_f(1, 50);
    CHECK(equal_upto(mul(f1, invert(f1)), Series::one(kExact, 50), 50));
}

TEST_CASE("jacobi_theta3 values and the cube identity") {
    Series j = eta::jacobi_theta3(10);
    CHECK(coeff_values(j) == std::vector<long>{1, -3, 0, 5, 0, 0, -7, 0, 0, 0, 9});
    CHECK(coeff_values(eta::jacobi_theta3(0)) == std::vector<long>{1});
    CHECK(equal_upto(eta::jacobi_theta3(200), pow(eta::expand_f(1, 200), 3), 200));
}

TEST_CASE("check_binomial_congruence") {
    CHECK(eta::check_binomial_congruence(2, 1, 1, 200));
    CHECK(eta::check_binomial_congruence(3, 1, 2, 200));
    CHECK_THROWS_AS(eta::check_binomial_congruence(4, 1, 1, 50), std::invalid_argument);
    CHECK_THROWS_AS(eta::check_binomial_congruence(6, 1, 1, 50), std::invalid_argument);

    // the same instance has no power against a deliberately wrong modulus
    Series f1sq = pow(eta::expand_f(1, 200), 2);
    Series f2 = eta::expand_f(2, 200);
    CHECK(congruent_upto(f1sq, f2, 2, 200));
    CHECK_FALSE(congruent_upto(f1sq, f2, 4, 200));
    CHECK(first_incongruent(f1sq, f2, 4, 200) == 1);
}

TEST_CASE("f1^4 congruent to f2^2 mod 4 to order 100") {
    Series lhs = pow(eta::expand_f(1, 100), 4);
    Series rhs = pow(eta::expand_f(2, 100), 2);
    CHECK(congruent_upto(lhs, rhs, 4, 100));
    // and f1 vs f2 mod 2 already fails at q^1
    CHECK(first_incongruent(eta::expand_f(1, 10), eta::expand_f(2, 10), 2, 10) == 1);
}

TEST_CASE("overpartition_gf merges exponents for small l") {
    CHECK(coeff_values(eta::overpartition_gf(6, kExact, 4)) ==
          std::vector<long>{1, 2, 4, 8, 14});
    CHECK(eta::overpartition_gf(3, kExact, 4).coeff(4) == 12);

    // l = 1: {1:-1, 2:1}; l = 2: {1:-2, 2:2}
    CHECK(eta::overpartition_gf(1, kExact, 40) ==
          eta::expand_eta_quotient(EtaQuotient::from_pairs({{1, -1}, {2, 1}}), kExact, 40));
    CHECK(eta::overpartition_gf(2, kExact, 40) ==
          eta::expand_eta_quotient(EtaQuotient::from_pairs({{1, -2}, {2, 2}}), kExact, 40));
}

TEST_CASE("expand_expr evaluates monomial sums") {
    using eta::EtaExpr;
    using eta::EtaMonomial;

    EtaExpr empty;
    CHECK(eta::expand_expr(empty, kExact, 5).is_zero());

    EtaExpr single;
    single.terms.push_back(EtaMonomial{4, 2, EtaQuotient{}});
    CHECK(coeff_values(eta::expand_expr(single, kExact, 4)) ==
          std::vector<long>{0, 0, 4, 0, 0});

    // the 3-dissection of f1^3: quotient form against pow(f1, 3)
    EtaExpr e;
    e.terms.push_back(EtaMonomial{1, 0, EtaQuotient::from_pairs({{6, 1}, {9, 6}, {3, -1}, {18, -3}})});
    e.terms.push_back(EtaMonomial{-3, 1, EtaQuotient::single(9, 3)});
    e.terms.push_back(EtaMonomial{4, 3, EtaQuotient::from_pairs({{3, 2}, {18, 6}, {6, -2}, {9, -3}})});
    CHECK(equal_upto(eta::expand_expr(e, kExact, 30), pow(eta::expand_f(1, 30), 3), 30));
}

TEST_CASE("inverse cube expansion matches the catalog 3-dissection of 1/f1^3") {
    Series invf1cubed = pow(invert(eta::expand_f(1, 30)), 3);
    using eta::EtaExpr;
    using eta::EtaMonomial;
    EtaExpr rhs;
    rhs.terms.push_back(EtaMonomial{1, 0, EtaQuotient::from_pairs({{6, 2}, {9, 15}, {3, -14}, {18, -6}})});
    rhs.terms.push_back(EtaMonomial{3, 1, EtaQuotient::from_pairs({{6, 1}, {9, 12}, {3, -13}, {18, -3}})});
    rhs.terms.push_back(EtaMonomial{9, 2, EtaQuotient::from_pairs({{9, 9}, {3, -12}})});
    rhs.terms.push_back(EtaMonomial{8, 3, EtaQuotient::from_pairs({{9, 6}, {18, 3}, {3, -11}, {6, -1}})});
    rhs.terms.push_back(EtaMonomial{12, 4, EtaQuotient::from_pairs({{9, 3}, {18, 6}, {3, -10}, {6, -2}})});
    rhs.terms.push_back(EtaMonomial{16, 6, EtaQuotient::from_pairs({{18, 12}, {3, -8}, {6, -4}, {9, -3}})});
    CHECK(equal_upto(invf1cubed, eta::expand_expr(rhs, kExact, 30), 30));
}

TEST_CASE("quotient printer emits increasing subscripts") {
    EtaQuotient q = EtaQuotient::from_pairs({{6, 1}, {1, -2}, {2, 1}});
    CHECK(q.to_string() == "f1^-2*f2*f6");
    CHECK(EtaQuotient{}.to_string() == "1");
    EtaQuotient merged = EtaQuotient::from_pairs({{1, -2}, {1, 1}, {2, 1}});
    CHECK(merged.to_string() == "f1^-1*f2");
    EtaQuotient cancelled = EtaQuotient::from_pairs({{3, 2}, {3, -2}});
    CHECK(cancelled.to_string() == "1");
}
