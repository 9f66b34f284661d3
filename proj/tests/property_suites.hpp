#pragma once

// Randomized property suites over the series ring, shared by the unit
// tests and the acceptance runner. Each function runs `cases` random
// instances at order <= 64 and returns the number of failures.

#include <random>

#include "qdissect/series.hpp"

namespace qdissect::props {

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    int order() { return static_cast<int>(rng() % 64) + 1; }

    CoefficientRing ring() {
        switch (rng() % 4) {
            case 0: return CoefficientRing::exact();
            case 1: return CoefficientRing::mod(2 + rng() % 127);
            case 2: return CoefficientRing::mod(128);
            default: return CoefficientRing::mod(2 + rng() % 1000);
        }
    }

    Series series(const CoefficientRing& r, int n, bool unit_constant = false) {
        std::vector<mpz_class> coeffs(static_cast<std::size_t>(n) + 1);
        for (auto& c : coeffs)
            c = static_cast<long>(static_cast<std::int64_t>(rng() % 2001) - 1000);
        if (unit_constant) {
            if (r.is_exact()) {
                coeffs[0] = rng() % 2 == 0 ? 1 : -1;
            } else {
                std::uint64_t m = r.modulus();
                std::uint64_t c0 = rng() % m;
                while (std::gcd(c0, m) != 1) c0 = (c0 + 1) % m;
                coeffs[0] = static_cast<unsigned long>(c0);
            }
        }
        return Series(std::move(coeffs), r);
    }
};

/// mul commutes, associates, and distributes over add.
inline int ring_laws(int cases, std::uint64_t seed = 1) {
    Gen g(seed);
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        CoefficientRing r = g.ring();
        int n = g.order();
        Series a = g.series(r, n), b = g.series(r, n), c = g.series(r, n);
        if (!(mul(a, b) == mul(b, a))) ++failures;
        if (!(mul(mul(a, b), c) == mul(a, mul(b, c)))) ++failures;
        if (!(mul(a, add(b, c)) == add(mul(a, b), mul(a, c)))) ++failures;
    }
    return failures;
}

/// mul(s, invert(s)) == 1 up to the truncation order.
inline int invert_round_trip(int cases, std::uint64_t seed = 2) {
    Gen g(seed);
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        CoefficientRing r = g.ring();
        int n = g.order();
        Series s = g.series(r, n, /*unit_constant=*/true);
        if (!(mul(s, invert(s)) == Series::one(r, n))) ++failures;
    }
    return failures;
}

/// extract_ap(s + t) == extract_ap(s) + extract_ap(t).
inline int extraction_linearity(int cases, std::uint64_t seed = 3) {
    Gen g(seed);
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        CoefficientRing r = g.ring();
        int n = g.order();
        Series s = g.series(r, n), t = g.series(r, n);
        int m = 1 + static_cast<int>(g.rng() % static_cast<std::uint64_t>(n + 1));
        int res = static_cast<int>(g.rng() % static_cast<std::uint64_t>(m));
        Series lhs = extract_ap(add(s, t), res, m);
        Series rhs = add(extract_ap(s, res, m), extract_ap(t, res, m));
        if (!(lhs == rhs)) ++failures;
    }
    return failures;
}

/// Re-interleaving the m residue-class extractions reproduces s.
inline int interleave_round_trip(int cases, std::uint64_t seed = 4) {
    Gen g(seed);
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        CoefficientRing r = g.ring();
        int n = g.order();
        Series s = g.series(r, n);
        int m = 1 + static_cast<int>(g.rng() % static_cast<std::uint64_t>(n + 1));
        std::vector<mpz_class> rebuilt(static_cast<std::size_t>(n) + 1);
        for (int res = 0; res < m; ++res) {
            Series part = extract_ap(s, res, m);
            for (int j = 0; j <= part.order(); ++j)
                rebuilt[static_cast<std::size_t>(m * j + res)] = part.coeff(j);
        }
        if (!(Series(std::move(rebuilt), r) == s)) ++failures;
    }
    return failures;
}

/// reduce_mod commutes with add, mul, pow, and with extract_ap.
inline int reduce_commutation(int cases, std::uint64_t seed = 5) {
    Gen g(seed);
    int failures = 0;
    for (int i = 0; i < cases; ++i) {
        int n = g.order();
        CoefficientRing exact = CoefficientRing::exact();
        std::uint64_t m = 2 + g.rng() % 127;
        Series a = g.series(exact, n), b = g.series(exact, n);
        if (!(reduce_mod(add(a, b), m) == add(reduce_mod(a, m), reduce_mod(b, m)))) ++failures;
        if (!(reduce_mod(mul(a, b), m) == mul(reduce_mod(a, m), reduce_mod(b, m)))) ++failures;
        int e = static_cast<int>(g.rng() % 5);
        if (!(reduce_mod(pow(a, e), m) == pow(reduce_mod(a, m), e))) ++failures;
        int step = 1 + static_cast<int>(g.rng() % static_cast<std::uint64_t>(n + 1));
        int res = static_cast<int>(g.rng() % static_cast<std::uint64_t>(step));
        if (!(reduce_mod(extract_ap(a, res, step), m) ==
              extract_ap(reduce_mod(a, m), res, step)))
            ++failures;
    }
    return failures;
}

}  // namespace qdissect::props
