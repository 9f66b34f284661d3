#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdissect/series.hpp"

namespace qdissect::eta {

/// Finite product prod_k f_k^{e_k} with f_k = prod_{m>=1} (1 - q^{km}).
/// Normalized: subscripts >= 1, no zero exponents stored. The expansion
/// always has constant term 1, so quotients are always invertible.
struct EtaQuotient {
    std::map<int, int> exps;

    EtaQuotient() = default;
    static EtaQuotient from_pairs(std::initializer_list<std::pair<int, int>> pairs);
    static EtaQuotient single(int k, int e);

    /// Adds e to the exponent of f_k, dropping zero entries.
    void merge(int k, int e);
    EtaQuotient inverse() const;

    /// Canonical text form, subscripts increasing: "f1^-2*f2*f6"; "1" when empty.
    std::string to_string() const;

    friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;
};

/// One term c * q^a * quotient of a dissection right-hand side.
struct EtaMonomial {
    mpz_class coeff;
    int qpow = 0;
    EtaQuotient quotient;

    std::string to_string() const;
    friend bool operator==(const EtaMonomial&, const EtaMonomial&) = default;
};

/// Formal sum of eta monomials.
struct EtaExpr {
    std::vector<EtaMonomial> terms;

    std::string to_string() const;
    friend bool operator==(const EtaExpr&, const EtaExpr&) = default;
};

/// Expansion of f_k to the given order, exact coefficients.
/// Only factors (1 - q^{km}) with km <= order can contribute.
Series expand_f(int k, int order);
Series expand_f(int k, const CoefficientRing& ring, int order);

Series expand_eta_quotient(const EtaQuotient& eq, const CoefficientRing& ring, int order);
Series expand_expr(const EtaExpr& e, const CoefficientRing& ring, int order);

/// sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}, the theta expansion of f_1^3.
Series jacobi_theta3(int order);

/// True iff f_l^{p^k} == f_{lp}^{p^{k-1}} (mod p^k) up to the given order.
/// p must be prime (validated by trial division).
bool check_binomial_congruence(int p, int k, int l, int order);

/// f_2 f_l / f_1^2: generating function of overpartitions whose
/// non-overlined parts are not divisible by l. Exponents are merged, so
/// l = 1 and l = 2 degenerate correctly.
Series overpartition_gf(int l, const CoefficientRing& ring, int order);

bool is_prime(int p);

}  // namespace qdissect::eta
