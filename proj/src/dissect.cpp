#include "qdissect/dissect.hpp"

#include <random>
#include <stdexcept>

#include "qdissect/dsl.hpp"

namespace qdissect::dissect {

namespace {

IdentityRecord make_record(std::string name, std::string lhs, std::string rhs,
                           std::string source, RhsForm form = RhsForm::Expression) {
    IdentityRecord r;
    r.name = std::move(name);
    r.lhs_text = std::move(lhs);
    r.rhs_text = std::move(rhs);
    r.rhs_form = form;
    r.kind = IdentityKind::Exact;
    r.source = std::move(source);
    r.lhs = dsl::eta_expr_from_ast(*dsl::parse_expr(r.lhs_text));
    if (form == RhsForm::Expression)
        r.rhs = dsl::eta_expr_from_ast(*dsl::parse_expr(r.rhs_text));
    return r;
}

std::vector<IdentityRecord> build_catalog() {
    std::vector<IdentityRecord> records;
    records.push_back(make_record(
        "jacobi-cube", "f1^3", "builtin:jacobi_theta3",
        "Jacobi; Hirschhorn, The Power of q, (1.7.1)", RhsForm::JacobiTheta));
    records.push_back(make_record(
        "f1-over-f3cubed", "f1/f3^3",
        "f2*f4^2*f12^2/f6^7 - q*f2^3*f12^6/(f4^2*f6^9)",
        "classical 2-dissection"));
    records.push_back(make_record(
        "f1cubed-over-f3", "f1^3/f3",
        "f4^3/f12 - 3*q*f2^2*f12^3/(f4*f6^2)",
        "classical 2-dissection"));
    records.push_back(make_record(
        "f1sq-over-f2", "f1^2/f2",
        "f9^2/f18 - 2*q*f3*f18^2/(f6*f9)",
        "Hirschhorn, The Power of q, (14.3.2)"));
    records.push_back(make_record(
        "f2sq-over-f1", "f2^2/f1",
        "f6*f9^2/(f3*f18) + q*f18^2/f9",
        "Hirschhorn, The Power of q, (14.3.3)"));
    records.push_back(make_record(
        "f2-over-f1sq", "f2/f1^2",
        "f6^4*f9^6/(f3^8*f18^3) + 2*q*f6^3*f9^3/f3^7 + 4*q^2*f6^2*f18^3/f3^6",
        "Hirschhorn-Sellers (2005)"));
    records.push_back(make_record(
        "f1-times-f2", "f1*f2",
        "f6*f9^4/(f3*f18^2) - q*f9*f18 - 2*q^2*f3*f18^4/(f6*f9^2)",
        "Hirschhorn-Sellers (2014)"));
    records.push_back(make_record(
        "f1cubed-3dissect", "f1^3",
        "f6*f9^6/(f3*f18^3) - 3*q*f9^3 + 4*q^3*f3^2*f18^6/(f6^2*f9^3)",
        "classical 3-dissection"));
    records.push_back(make_record(
        "one-over-f1cubed", "1/f1^3",
        "f6^2*f9^15/(f3^14*f18^6) + 3*q*f6*f9^12/(f3^13*f18^3) + 9*q^2*f9^9/f3^12"
        " + 8*q^3*f9^6*f18^3/(f3^11*f6) + 12*q^4*f9^3*f18^6/(f3^10*f6^2)"
        " + 16*q^6*f18^12/(f3^8*f6^4*f9^3)",
        "classical 3-dissection"));

    IdentityRecord binom;
    binom.name = "binomial-lemma";
    binom.lhs_text = "f{l}^{p^k}";
    binom.rhs_text = "f{l*p}^{p^(k-1)} (mod p^k)";
    binom.rhs_form = RhsForm::BinomialFamily;
    binom.kind = IdentityKind::Exact;  // per-instance modulus comes from (p, k)
    binom.source = "binomial theorem";
    records.push_back(std::move(binom));
    return records;
}

}  // namespace

const std::vector<IdentityRecord>& catalog() {
    static const std::vector<IdentityRecord> records = build_catalog();
    return records;
}

const IdentityRecord& catalog_record(const std::string& name) {
    for (const auto& r : catalog())
        if (r.name == name) return r;
    throw std::invalid_argument("no catalog record named '" + name + "'");
}

const std::vector<std::array<int, 3>>& binomial_instances() {
    static const std::vector<std::array<int, 3>> instances = {
        {2, 7, 1}, {2, 6, 1}, {2, 1, 1}, {3, 1, 1}, {3, 1, 2}, {2, 3, 1},
    };
    return instances;
}

VerifyResult verify_identity(const IdentityRecord& record, int order) {
    if (order < 1) throw std::invalid_argument("verification order must be >= 1");
    VerifyResult result;
    if (record.rhs_form == RhsForm::BinomialFamily) {
        for (const auto& [p, k, l] : binomial_instances()) {
            if (!eta::check_binomial_congruence(p, k, l, order)) {
                result.passed = false;
                return result;
            }
        }
        return result;
    }

    CoefficientRing ring = record.kind == IdentityKind::Exact
                               ? CoefficientRing::exact()
                               : CoefficientRing::mod(record.modulus);
    Series lhs = eta::expand_expr(record.lhs, ring, order);
    Series rhs = record.rhs_form == RhsForm::JacobiTheta
                     ? (ring.is_exact() ? eta::jacobi_theta3(order)
                                        : reduce_mod(eta::jacobi_theta3(order), ring.modulus()))
                     : eta::expand_expr(record.rhs, ring, order);
    for (int i = 0; i <= order; ++i) {
        if (lhs.coeff(i) != rhs.coeff(i)) {
            result.passed = false;
            result.first_bad_exponent = i;
            result.lhs_coeff = lhs.coeff(i);
            result.rhs_coeff = rhs.coeff(i);
            return result;
        }
    }
    return result;
}

std::string export_catalog() {
    std::string out;
    for (const auto& r : catalog()) {
        out += r.name + ": " + r.lhs_text;
        out += r.kind == IdentityKind::Exact ? " == " : " =mod= " + std::to_string(r.modulus) + " ";
        out += r.rhs_text + "\n";
    }
    return out;
}

Polynomial Polynomial::constant(const mpz_class& c, int nvars) {
    Polynomial p;
    p.nvars = nvars;
    if (c != 0) p.terms.emplace(std::vector<int>(static_cast<std::size_t>(nvars), 0), c);
    return p;
}

Polynomial Polynomial::variable(int index, int nvars) {
    Polynomial p;
    p.nvars = nvars;
    std::vector<int> e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(index)] = 1;
    p.terms.emplace(std::move(e), 1);
    return p;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms) out.terms[e] += c;
    out.drop_zero_terms();
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms) out.terms[e] -= c;
    out.drop_zero_terms();
    return out;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    Polynomial out;
    out.nvars = nvars;
    for (const auto& [ea, ca] : terms) {
        for (const auto& [eb, cb] : o.terms) {
            std::vector<int> e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.terms[std::move(e)] += ca * cb;
        }
    }
    out.drop_zero_terms();
    return out;
}

Polynomial Polynomial::pow(int e) const {
    Polynomial out = constant(1, nvars);
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
}

Polynomial Polynomial::scaled(const mpz_class& c) const {
    Polynomial out;
    out.nvars = nvars;
    if (c == 0) return out;
    for (const auto& [e, coeff] : terms) out.terms.emplace(e, c * coeff);
    return out;
}

mpz_class Polynomial::evaluate(const std::vector<std::uint64_t>& point) const {
    mpz_class total = 0;
    for (const auto& [e, c] : terms) {
        mpz_class term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            mpz_class base(static_cast<unsigned long>(point[i])), powv;
            mpz_pow_ui(powv.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e[i]));
            term *= powv;
        }
        total += term;
    }
    return total;
}

void Polynomial::drop_zero_terms() {
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second == 0 ? terms.erase(it) : std::next(it);
}

namespace {

// front * (a + scale_b * b)^e in variables {a, b}
Polynomial two_var_power(int scale_b, int e, const mpz_class& front) {
    Polynomial a = Polynomial::variable(0, 2);
    Polynomial b = Polynomial::variable(1, 2);
    return (a + b.scaled(scale_b)).pow(e).scaled(front);
}

// c0*a^e0*b^e1 helper for right-hand sides in two variables
Polynomial term2(const mpz_class& c, int e0, int e1) {
    Polynomial p;
    p.nvars = 2;
    p.terms.emplace(std::vector<int>{e0, e1}, c);
    return p;
}

Polynomial term3(const mpz_class& c, int e0, int e1, int e2) {
    Polynomial p;
    p.nvars = 3;
    p.terms.emplace(std::vector<int>{e0, e1, e2}, c);
    return p;
}

Polynomial term1(const mpz_class& c, int e0) {
    Polynomial p;
    p.nvars = 1;
    p.terms.emplace(std::vector<int>{e0}, c);
    return p;
}

std::vector<PolyReduction> build_poly_catalog() {
    std::vector<PolyReduction> out;

    {
        PolyReduction p;
        p.name = "pow13-mod128";
        p.variables = {"a", "b"};
        p.lhs = two_var_power(-2, 13, 4);  // 4*(a - 2b)^13
        p.rhs = term2(4, 13, 0) + term2(24, 12, 1) + term2(96, 11, 2) +
                term2(64, 10, 3) + term2(64, 9, 4);
        p.modulus = 128;
        out.push_back(std::move(p));
    }
    {
        PolyReduction p;
        p.name = "pow9-mod128";
        p.variables = {"x", "y"};
        p.lhs = two_var_power(-2, 9, 12);  // 12*(x - 2y)^9
        p.rhs = term2(12, 9, 0) + term2(-216, 8, 1) + term2(192, 7, 2);
        p.modulus = 128;
        out.push_back(std::move(p));
    }
    {
        PolyReduction p;
        p.name = "cube-mod128";
        p.variables = {"a", "b", "c"};
        Polynomial a = Polynomial::variable(0, 3);
        Polynomial b = Polynomial::variable(1, 3);
        Polynomial c = Polynomial::variable(2, 3);
        p.lhs = (a - b - c.scaled(2)).pow(3).scaled(64);  // 64*(a - b - 2c)^3
        p.rhs = term3(64, 3, 0, 0) + term3(64, 2, 1, 0) + term3(64, 1, 2, 0) +
                term3(64, 0, 3, 0);
        p.modulus = 128;
        out.push_back(std::move(p));
    }
    {
        PolyReduction p;
        p.name = "pow5-mod64";
        p.variables = {"a", "b"};
        p.lhs = two_var_power(-2, 5, 4);  // 4*(a - 2b)^5
        p.rhs = term2(4, 5, 0) + term2(24, 4, 1) + term2(32, 3, 2);
        p.modulus = 64;
        out.push_back(std::move(p));
    }
    {
        PolyReduction p;
        p.name = "affine21-plus-mod128";
        p.variables = {"a"};
        p.lhs = term1(21 * 16, 1) + term1(21 * 12 + 32, 0);  // 21*(16a + 12) + 32
        p.rhs = term1(16 * 5, 1) + term1(16 + 12, 0);        // 16*(5a + 1) + 12
        p.modulus = 128;
        out.push_back(std::move(p));
    }
    {
        PolyReduction p;
        p.name = "affine21-minus-mod128";
        p.variables = {"a"};
        p.lhs = term1(21 * 16, 1) + term1(21 * 12 - 32, 0);  // 21*(16a + 12) - 32
        p.rhs = term1(16 * 5, 1) + term1(16 * 5 + 12, 0);    // 16*(5a + 5) + 12
        p.modulus = 128;
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace

const std::vector<PolyReduction>& poly_catalog() {
    static const std::vector<PolyReduction> records = build_poly_catalog();
    return records;
}

bool verify_poly_reduction(const PolyReduction& p) {
    Polynomial diff = p.lhs - p.rhs;
    mpz_class m(static_cast<unsigned long>(p.modulus));
    for (const auto& [e, c] : diff.terms)
        if (c % m != 0) return false;
    return true;
}

bool verify_poly_by_substitution(const PolyReduction& p, int samples, std::uint64_t seed) {
    std::uint64_t m = p.modulus;
    mpz_class mz(static_cast<unsigned long>(m));
    std::size_t nv = p.variables.size();
    auto agree_at = [&](const std::vector<std::uint64_t>& point) {
        mpz_class d = p.lhs.evaluate(point) - p.rhs.evaluate(point);
        return d % mz == 0;
    };
    if (nv <= 2) {
        std::vector<std::uint64_t> point(nv, 0);
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < nv; ++i) total *= m;
        for (std::uint64_t idx = 0; idx < total; ++idx) {
            std::uint64_t v = idx;
            for (std::size_t i = 0; i < nv; ++i) { point[i] = v % m; v /= m; }
            if (!agree_at(point)) return false;
        }
        return true;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(0, m - 1);
    std::vector<std::uint64_t> point(nv);
    for (int s = 0; s < samples; ++s) {
        for (auto& x : point) x = dist(rng);
        if (!agree_at(point)) return false;
    }
    return true;
}

}  // namespace qdissect::dissect
