#include "qdissect/series.hpp"

#include <stdexcept>

namespace qdissect {

namespace {

// Largest modulus we accept: products of two residues must fit the u128
// accumulator used in the convolution kernels.
constexpr std::uint64_t kMaxModulus = 0xFFFFFFFFull;

std::uint64_t canonical_residue(const mpz_class& v, std::uint64_t m) {
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
    return r.get_ui();
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    // extended euclid; a must be coprime to m
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t quot = old_r / r;
        std::int64_t tmp = old_r - quot * r; old_r = r; r = tmp;
        tmp = old_s - quot * s; old_s = s; s = tmp;
    }
    if (old_r != 1)
        throw std::invalid_argument("constant term is not a unit in the ring");
    std::int64_t res = old_s % static_cast<std::int64_t>(m);
    if (res < 0) res += static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(res);
}

void require_same_ring(const Series& s, const Series& t) {
    if (!(s.ring() == t.ring()))
        throw std::invalid_argument("ring mismatch: " + s.ring().to_string() + " vs " + t.ring().to_string());
}

}  // namespace

CoefficientRing CoefficientRing::mod(std::uint64_t m) {
    if (m < 2)
        throw std::invalid_argument("modulus must be >= 2");
    if (m > kMaxModulus)
        throw std::invalid_argument("modulus too large for machine-word arithmetic");
    return CoefficientRing(m);
}

std::string CoefficientRing::to_string() const {
    return is_exact() ? "exact" : "mod " + std::to_string(modulus_);
}

Series::Series(std::vector<mpz_class> coeffs, CoefficientRing ring)
    : ring_(ring) {
    if (coeffs.empty())
        throw std::invalid_argument("empty coefficient sequence");
    if (ring.is_exact()) {
        zc_ = std::move(coeffs);
    } else {
        rc_.reserve(coeffs.size());
        for (const auto& c : coeffs)
            rc_.push_back(canonical_residue(c, ring.modulus()));
    }
}

Series Series::zero(CoefficientRing ring, int order) {
    if (order < 0) throw std::invalid_argument("negative order");
    if (ring.is_exact())
        return Series(ring, std::vector<mpz_class>(order + 1), {});
    return Series(ring, {}, std::vector<std::uint64_t>(order + 1, 0));
}

Series Series::one(CoefficientRing ring, int order) {
    return constant(1, ring, order);
}

Series Series::constant(const mpz_class& c, CoefficientRing ring, int order) {
    Series s = zero(ring, order);
    if (ring.is_exact())
        s.zc_[0] = c;
    else
        s.rc_[0] = canonical_residue(c, ring.modulus());
    return s;
}

Series Series::q_power(int e, CoefficientRing ring, int order) {
    if (e < 0) throw std::invalid_argument("negative power of q");
    Series s = zero(ring, order);
    if (e <= order) {
        if (ring.is_exact()) s.zc_[e] = 1; else s.rc_[e] = 1;
    }
    return s;
}

int Series::order() const {
    return static_cast<int>((ring_.is_exact() ? zc_.size() : rc_.size())) - 1;
}

mpz_class Series::coeff(int i) const {
    if (i < 0 || i > order())
        throw std::out_of_range("coefficient index out of range");
    if (ring_.is_exact()) return zc_[static_cast<std::size_t>(i)];
    return mpz_class(static_cast<unsigned long>(rc_[static_cast<std::size_t>(i)]));
}

std::uint64_t Series::residue(int i) const {
    if (ring_.is_exact())
        throw std::logic_error("residue() called on an exact series");
    if (i < 0 || i > order())
        throw std::out_of_range("coefficient index out of range");
    return rc_[static_cast<std::size_t>(i)];
}

bool Series::is_zero() const {
    if (ring_.is_exact()) {
        for (const auto& c : zc_) if (c != 0) return false;
    } else {
        for (auto c : rc_) if (c != 0) return false;
    }
    return true;
}

bool operator==(const Series& s, const Series& t) {
    return s.ring_ == t.ring_ && s.zc_ == t.zc_ && s.rc_ == t.rc_;
}

Series add(const Series& s, const Series& t) {
    require_same_ring(s, t);
    int n = std::min(s.order(), t.order());
    Series out = Series::zero(s.ring(), n);
    if (s.ring().is_exact()) {
        for (int i = 0; i <= n; ++i) out.zc_[i] = s.zc_[i] + t.zc_[i];
    } else {
        std::uint64_t m = s.ring().modulus();
        for (int i = 0; i <= n; ++i) out.rc_[i] = (s.rc_[i] + t.rc_[i]) % m;
    }
    return out;
}

Series sub(const Series& s, const Series& t) {
    require_same_ring(s, t);
    int n = std::min(s.order(), t.order());
    Series out = Series::zero(s.ring(), n);
    if (s.ring().is_exact()) {
        for (int i = 0; i <= n; ++i) out.zc_[i] = s.zc_[i] - t.zc_[i];
    } else {
        std::uint64_t m = s.ring().modulus();
        for (int i = 0; i <= n; ++i) out.rc_[i] = (s.rc_[i] + m - t.rc_[i]) % m;
    }
    return out;
}

Series scale(const Series& s, const mpz_class& c) {
    Series out = Series::zero(s.ring(), s.order());
    if (s.ring().is_exact()) {
        for (std::size_t i = 0; i < s.zc_.size(); ++i) out.zc_[i] = c * s.zc_[i];
    } else {
        std::uint64_t m = s.ring().modulus();
        std::uint64_t cr = canonical_residue(c, m);
        for (std::size_t i = 0; i < s.rc_.size(); ++i)
            out.rc_[i] = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(cr) * s.rc_[i]) % m);
    }
    return out;
}

Series mul(const Series& s, const Series& t) {
    require_same_ring(s, t);
    int n = std::min(s.order(), t.order());
    Series out = Series::zero(s.ring(), n);
    if (s.ring().is_exact()) {
        for (int i = 0; i <= n; ++i) {
            const mpz_class& a = s.zc_[i];
            if (a == 0) continue;
            for (int j = 0; j + i <= n; ++j) {
                if (t.zc_[j] != 0)
                    mpz_addmul(out.zc_[i + j].get_mpz_t(), a.get_mpz_t(), t.zc_[j].get_mpz_t());
            }
        }
    } else {
        std::uint64_t m = s.ring().modulus();
        for (int k = 0; k <= n; ++k) {
            unsigned __int128 acc = 0;
            for (int i = 0; i <= k; ++i)
                acc += static_cast<unsigned __int128>(s.rc_[i]) * t.rc_[k - i];
            out.rc_[k] = static_cast<std::uint64_t>(acc % m);
        }
    }
    return out;
}

Series pow(const Series& s, int e) {
    if (e < 0) throw std::invalid_argument("negative exponent in pow");
    Series result = Series::one(s.ring(), s.order());
    Series base = s;
    while (e > 0) {
        if (e & 1) result = mul(result, base);
        e >>= 1;
        if (e > 0) base = mul(base, base);
    }
    return result;
}

Series invert(const Series& s) {
    int n = s.order();
    Series out = Series::zero(s.ring(), n);
    if (s.ring().is_exact()) {
        const mpz_class& c0 = s.zc_[0];
        if (c0 != 1 && c0 != -1)
            throw std::invalid_argument("constant term is not a unit in the ring");
        out.zc_[0] = c0;  // c0^{-1} == c0 for +-1
        mpz_class acc;
        for (int k = 1; k <= n; ++k) {
            acc = 0;
            for (int i = 1; i <= k; ++i) {
                if (s.zc_[i] != 0)
                    mpz_addmul(acc.get_mpz_t(), s.zc_[i].get_mpz_t(), out.zc_[k - i].get_mpz_t());
            }
            out.zc_[k] = -c0 * acc;
        }
    } else {
        std::uint64_t m = s.ring().modulus();
        std::uint64_t inv0 = mod_inverse(s.rc_[0], m);
        out.rc_[0] = inv0;
        for (int k = 1; k <= n; ++k) {
            unsigned __int128 acc = 0;
            for (int i = 1; i <= k; ++i)
                acc += static_cast<unsigned __int128>(s.rc_[i]) * out.rc_[k - i];
            std::uint64_t a = static_cast<std::uint64_t>(acc % m);
            out.rc_[k] = static_cast<std::uint64_t>(
                (static_cast<unsigned __int128>(m - a) * inv0) % m);
        }
    }
    return out;
}

Series extract_ap(const Series& s, int r, int m) {
    if (m < 1 || r < 0 || r >= m)
        throw std::invalid_argument("extraction requires 0 <= r < m");
    if (m > s.order() + 1)
        throw std::invalid_argument("extraction step exceeds series order + 1");
    int out_order = (s.order() - r) / m;
    Series out = Series::zero(s.ring(), out_order);
    if (s.ring().is_exact()) {
        for (int i = 0; i <= out_order; ++i) out.zc_[i] = s.zc_[m * i + r];
    } else {
        for (int i = 0; i <= out_order; ++i) out.rc_[i] = s.rc_[m * i + r];
    }
    return out;
}

Series reduce_mod(const Series& s, std::uint64_t m) {
    CoefficientRing target = CoefficientRing::mod(m);
    if (!s.ring().is_exact() && s.ring().modulus() % m != 0)
        throw std::invalid_argument("cannot reduce mod " + std::to_string(m) +
                                    " a series over " + s.ring().to_string());
    Series out = Series::zero(target, s.order());
    if (s.ring().is_exact()) {
        for (std::size_t i = 0; i < s.zc_.size(); ++i)
            out.rc_[i] = canonical_residue(s.zc_[i], m);
    } else {
        for (std::size_t i = 0; i < s.rc_.size(); ++i)
            out.rc_[i] = s.rc_[i] % m;
    }
    return out;
}

int first_incongruent(const Series& s, const Series& t, std::uint64_t m, int n) {
    if (m < 2) throw std::invalid_argument("modulus must be >= 2");
    if (n > s.order() || n > t.order())
        throw std::invalid_argument("comparison order exceeds series order");
    auto residue_at = [m](const Series& x, int i) -> std::uint64_t {
        if (x.ring().is_exact())
            return canonical_residue(x.exact_coeffs()[static_cast<std::size_t>(i)], m);
        if (x.ring().modulus() % m != 0)
            throw std::invalid_argument("modulus " + std::to_string(m) +
                                        " does not divide series ring " + x.ring().to_string());
        return x.modular_coeffs()[static_cast<std::size_t>(i)] % m;
    };
    for (int i = 0; i <= n; ++i)
        if (residue_at(s, i) != residue_at(t, i)) return i;
    return -1;
}

bool congruent_upto(const Series& s, const Series& t, std::uint64_t m, int n) {
    return first_incongruent(s, t, m, n) == -1;
}

bool equal_upto(const Series& s, const Series& t, int n) {
    require_same_ring(s, t);
    if (n > s.order() || n > t.order())
        throw std::invalid_argument("comparison order exceeds series order");
    if (s.ring().is_exact()) {
        for (int i = 0; i <= n; ++i)
            if (s.exact_coeffs()[i] != t.exact_coeffs()[i]) return false;
    } else {
        for (int i = 0; i <= n; ++i)
            if (s.modular_coeffs()[i] != t.modular_coeffs()[i]) return false;
    }
    return true;
}

Series truncate(const Series& s, int n) {
    if (n < 0 || n > s.order())
        throw std::invalid_argument("truncation order out of range");
    Series out = Series::zero(s.ring(), n);
    if (s.ring().is_exact())
        out.zc_.assign(s.zc_.begin(), s.zc_.begin() + n + 1);
    else
        out.rc_.assign(s.rc_.begin(), s.rc_.begin() + n + 1);
    return out;
}

}  // namespace qdissect
