#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qdissect {

/// Coefficient domain of a truncated series: exact integers or Z/mZ.
class CoefficientRing {
public:
    static CoefficientRing exact() { return CoefficientRing(0); }
    static CoefficientRing mod(std::uint64_t m);

    bool is_exact() const { return modulus_ == 0; }
    std::uint64_t modulus() const { return modulus_; }
    std::string to_string() const;

    friend bool operator==(const CoefficientRing&, const CoefficientRing&) = default;

private:
    explicit CoefficientRing(std::uint64_t m) : modulus_(m) {}
    std::uint64_t modulus_;
};

/// Dense truncated power series: coefficients c_0..c_N of q^0..q^N.
///
/// Values are immutable after construction. Exact coefficients are
/// arbitrary precision; modular coefficients are machine words kept in
/// canonical range [0, m). Truncation order of every binary operation is
/// the minimum of the operand orders, so stored coefficients are always
/// exact for the ring.
class Series {
public:
    Series(std::vector<mpz_class> coeffs, CoefficientRing ring);

    static Series zero(CoefficientRing ring, int order);
    static Series one(CoefficientRing ring, int order);
    static Series constant(const mpz_class& c, CoefficientRing ring, int order);
    static Series q_power(int e, CoefficientRing ring, int order);

    const CoefficientRing& ring() const { return ring_; }
    int order() const;
    /// Canonical coefficient of q^i (residue in [0,m) under a modular ring).
    mpz_class coeff(int i) const;
    std::uint64_t residue(int i) const;  // modular rings only
    bool is_zero() const;

    friend bool operator==(const Series&, const Series&);

    // Raw storage, used by the arithmetic kernels.
    const std::vector<mpz_class>& exact_coeffs() const { return zc_; }
    const std::vector<std::uint64_t>& modular_coeffs() const { return rc_; }

private:
    Series(CoefficientRing ring, std::vector<mpz_class> zc, std::vector<std::uint64_t> rc)
        : ring_(ring), zc_(std::move(zc)), rc_(std::move(rc)) {}

    CoefficientRing ring_;
    std::vector<mpz_class> zc_;        // exact ring
    std::vector<std::uint64_t> rc_;    // modular ring

    friend Series add(const Series&, const Series&);
    friend Series sub(const Series&, const Series&);
    friend Series scale(const Series&, const mpz_class&);
    friend Series mul(const Series&, const Series&);
    friend Series invert(const Series&);
    friend Series extract_ap(const Series&, int r, int m);
    friend Series reduce_mod(const Series&, std::uint64_t m);
    friend Series truncate(const Series&, int n);
};

Series add(const Series& s, const Series& t);
Series sub(const Series& s, const Series& t);
Series scale(const Series& s, const mpz_class& c);

/// Truncated Cauchy product; result order = min(order(s), order(t)).
Series mul(const Series& s, const Series& t);

/// Binary exponentiation under truncated mul; pow(s, 0) = 1.
Series pow(const Series& s, int e);

/// Multiplicative inverse up to the truncation order. The constant term
/// must be a unit (+-1 exactly, or coprime to the modulus).
Series invert(const Series& s);

/// Arithmetic-progression extraction: sum of c_{m n + r} q^n.
/// Composes "extract the q^{mn+r} terms, divide by q^r, replace q^m by q".
/// Requires 0 <= r < m <= order(s)+1; result order = floor((order(s)-r)/m).
Series extract_ap(const Series& s, int r, int m);

/// Coefficientwise reduction into Z/mZ. Accepts an exact series, or a
/// modular series whose modulus m divides.
Series reduce_mod(const Series& s, std::uint64_t m);

/// True iff c_i(s) == c_i(t) (mod m) for all 0 <= i <= n.
/// Requires n <= both orders; modular operands need m | modulus.
bool congruent_upto(const Series& s, const Series& t, std::uint64_t m, int n);

/// Exact coefficient equality on 0..n; rings must match.
bool equal_upto(const Series& s, const Series& t, int n);

/// First exponent in 0..n where s and t differ mod m, or -1 if none.
int first_incongruent(const Series& s, const Series& t, std::uint64_t m, int n);

Series truncate(const Series& s, int n);

}  // namespace qdissect
