#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdissect/eta.hpp"
#include "qdissect/series.hpp"

namespace qdissect::dissect {

/// How the right-hand side of a catalog record is realized.
enum class RhsForm {
    Expression,      // ordinary sum of eta monomials
    JacobiTheta,     // builtin:jacobi_theta3 (theta sum, not an eta quotient)
    BinomialFamily,  // f_l^{p^k} == f_{lp}^{p^{k-1}} (mod p^k), parameterized
};

enum class IdentityKind { Exact, Congruence };

struct IdentityRecord {
    std::string name;
    std::string lhs_text;  // DSL form
    std::string rhs_text;
    eta::EtaExpr lhs;
    eta::EtaExpr rhs;      // empty for builtin forms
    RhsForm rhs_form = RhsForm::Expression;
    IdentityKind kind = IdentityKind::Exact;
    std::uint64_t modulus = 0;  // Congruence kind only
    std::string source;         // literature citation
};

struct VerifyResult {
    bool passed = true;
    int first_bad_exponent = -1;
    mpz_class lhs_coeff, rhs_coeff;
};

/// The dissection identity table: ten records. Nine expand-and-compare
/// identities (one with a builtin theta RHS) plus the binomial-lemma
/// family marker, whose verification runs the standard (p, k, l)
/// instances. Built once, immutable afterwards.
const std::vector<IdentityRecord>& catalog();

const IdentityRecord& catalog_record(const std::string& name);

/// Standard (p, k, l) instances used to verify the binomial-lemma record.
const std::vector<std::array<int, 3>>& binomial_instances();

/// Expands both sides to the given order (exactly, or mod m for a
/// Congruence record) and reports the first discrepancy, if any.
VerifyResult verify_identity(const IdentityRecord& record, int order);

/// DSL text of every identity, one per line: "name: LHS == RHS".
std::string export_catalog();

/// Small dense multivariate polynomial with exact coefficients.
struct Polynomial {
    // exponent vector (one entry per variable) -> coefficient
    std::map<std::vector<int>, mpz_class> terms;
    int nvars = 0;

    static Polynomial constant(const mpz_class& c, int nvars);
    static Polynomial variable(int index, int nvars);

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial pow(int e) const;
    Polynomial scaled(const mpz_class& c) const;

    mpz_class evaluate(const std::vector<std::uint64_t>& point) const;
    void drop_zero_terms();
};

/// An in-proof congruence of two integer polynomials mod a power of two.
struct PolyReduction {
    std::string name;
    std::vector<std::string> variables;
    Polynomial lhs, rhs;
    std::uint64_t modulus = 2;
};

/// The six in-proof reductions used by the 3-dissection pipelines.
const std::vector<PolyReduction>& poly_catalog();

/// Compares the exact multinomial expansions coefficientwise mod the
/// record's modulus.
bool verify_poly_reduction(const PolyReduction& p);

/// Independent route: substitution over [0, m)^vars, exhaustive for at
/// most two variables, randomly sampled otherwise.
bool verify_poly_by_substitution(const PolyReduction& p, int samples = 10000,
                                 std::uint64_t seed = 12345);

}  // namespace qdissect::dissect
