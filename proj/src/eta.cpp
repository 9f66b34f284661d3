#include "qdissect/eta.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace qdissect::eta {

namespace {

// Cache of exact f_k expansions, keyed by subscript. Each entry holds the
// longest expansion computed so far; shorter requests take a prefix.
// Behaves as if absent: same outputs, safe under concurrent lookup.
std::mutex g_fk_cache_mutex;
std::map<int, std::shared_ptr<const std::vector<mpz_class>>> g_fk_cache;

std::vector<mpz_class> compute_f_exact(int k, int order) {
    std::vector<mpz_class> c(static_cast<std::size_t>(order) + 1);
    c[0] = 1;
    for (long long step = k; step <= order; step += k)
        for (long long i = order; i >= step; --i)
            c[i] -= c[i - step];
    return c;
}

}  // namespace

EtaQuotient EtaQuotient::from_pairs(std::initializer_list<std::pair<int, int>> pairs) {
    EtaQuotient q;
    for (const auto& [k, e] : pairs) q.merge(k, e);
    return q;
}

EtaQuotient EtaQuotient::single(int k, int e) {
    EtaQuotient q;
    q.merge(k, e);
    return q;
}

void EtaQuotient::merge(int k, int e) {
    if (k < 1) throw std::invalid_argument("eta subscript must be >= 1");
    if (e == 0) return;
    auto it = exps.find(k);
    if (it == exps.end()) {
        exps.emplace(k, e);
    } else {
        it->second += e;
        if (it->second == 0) exps.erase(it);
    }
}

EtaQuotient EtaQuotient::inverse() const {
    EtaQuotient q;
    for (const auto& [k, e] : exps) q.exps.emplace(k, -e);
    return q;
}

std::string EtaQuotient::to_string() const {
    if (exps.empty()) return "1";
    std::string out;
    for (const auto& [k, e] : exps) {
        if (!out.empty()) out += "*";
        out += "f" + std::to_string(k);
        if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
}

std::string EtaMonomial::to_string() const {
    std::string out;
    bool have_factor = false;
    if (coeff != 1 || (qpow == 0 && quotient.exps.empty())) {
        out += coeff.get_str();
        have_factor = true;
    }
    if (qpow > 0) {
        if (have_factor) out += "*";
        out += qpow == 1 ? "q" : "q^" + std::to_string(qpow);
        have_factor = true;
    }
    if (!quotient.exps.empty()) {
        if (have_factor) out += "*";
        out += quotient.to_string();
    }
    return out;
}

std::string EtaExpr::to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const EtaMonomial& t = terms[i];
        if (i == 0) {
            out += t.to_string();
        } else if (t.coeff < 0) {
            EtaMonomial flipped{-t.coeff, t.qpow, t.quotient};
            out += " - " + flipped.to_string();
        } else {
            out += " + " + t.to_string();
        }
    }
    return out;
}

Series expand_f(int k, int order) {
    if (k < 1) throw std::invalid_argument("eta subscript must be >= 1");
    if (order < 0) throw std::invalid_argument("negative order");
    std::lock_guard<std::mutex> lock(g_fk_cache_mutex);
    auto it = g_fk_cache.find(k);
    if (it == g_fk_cache.end() || static_cast<int>(it->second->size()) <= order) {
        auto fresh = std::make_shared<const std::vector<mpz_class>>(compute_f_exact(k, order));
        it = g_fk_cache.insert_or_assign(k, std::move(fresh)).first;
    }
    const auto& full = *it->second;
    std::vector<mpz_class> coeffs(full.begin(), full.begin() + order + 1);
    return Series(std::move(coeffs), CoefficientRing::exact());
}

Series expand_f(int k, const CoefficientRing& ring, int order) {
    if (ring.is_exact()) return expand_f(k, order);
    if (k < 1) throw std::invalid_argument("eta subscript must be >= 1");
    if (order < 0) throw std::invalid_argument("negative order");
    std::uint64_t m = ring.modulus();
    std::vector<std::uint64_t> c(static_cast<std::size_t>(order) + 1, 0);
    c[0] = 1;
    for (long long step = k; step <= order; step += k)
        for (long long i = order; i >= step; --i)
            c[i] = (c[i] + m - c[i - step]) % m;
    std::vector<mpz_class> coeffs(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) coeffs[i] = static_cast<unsigned long>(c[i]);
    return Series(std::move(coeffs), ring);
}

Series expand_eta_quotient(const EtaQuotient& eq, const CoefficientRing& ring, int order) {
    Series result = Series::one(ring, order);
    for (const auto& [k, e] : eq.exps) {
        Series base = expand_f(k, ring, order);
        if (e < 0) base = invert(base);  // constant term 1, always invertible
        result = mul(result, pow(base, e < 0 ? -e : e));
    }
    return result;
}

Series expand_expr(const EtaExpr& e, const CoefficientRing& ring, int order) {
    Series result = Series::zero(ring, order);
    for (const EtaMonomial& t : e.terms) {
        if (t.qpow < 0) throw std::invalid_argument("negative q power in eta monomial");
        if (t.qpow > order) continue;
        Series part = expand_eta_quotient(t.quotient, ring, order - t.qpow);
        part = scale(part, t.coeff);
        // shift by q^{qpow}, padding back to the requested order
        std::vector<mpz_class> shifted(static_cast<std::size_t>(order) + 1);
        for (int i = 0; i <= part.order(); ++i) shifted[static_cast<std::size_t>(i + t.qpow)] = part.coeff(i);
        result = add(result, Series(std::move(shifted), ring));
    }
    return result;
}

Series jacobi_theta3(int order) {
    Series out = Series::zero(CoefficientRing::exact(), order);
    std::vector<mpz_class> c(static_cast<std::size_t>(order) + 1);
    for (long long m = 0; m * (m + 1) / 2 <= order; ++m)
        c[static_cast<std::size_t>(m * (m + 1) / 2)] =
            static_cast<long>((m % 2 == 0 ? 1 : -1) * (2 * m + 1));
    return Series(std::move(c), CoefficientRing::exact());
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

bool check_binomial_congruence(int p, int k, int l, int order) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");
    if (k < 1 || l < 1) throw std::invalid_argument("k and l must be >= 1");
    std::uint64_t pk = 1;
    for (int i = 0; i < k; ++i) {
        if (pk > 0xFFFFFFFFull / static_cast<std::uint64_t>(p))
            throw std::invalid_argument("p^k too large");
        pk *= static_cast<std::uint64_t>(p);
    }
    CoefficientRing ring = CoefficientRing::mod(pk);
    std::uint64_t pk1 = pk / static_cast<std::uint64_t>(p);
    Series lhs = pow(expand_f(l, ring, order), static_cast<int>(pk));
    Series rhs = pow(expand_f(l * p, ring, order), static_cast<int>(pk1));
    return equal_upto(lhs, rhs, order);
}

Series overpartition_gf(int l, const CoefficientRing& ring, int order) {
    if (l < 1) throw std::invalid_argument("l must be >= 1");
    EtaQuotient q;
    q.merge(1, -2);
    q.merge(2, 1);
    q.merge(l, 1);
    return expand_eta_quotient(q, ring, order);
}

}  // namespace qdissect::eta
