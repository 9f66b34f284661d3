#include "qdissect/congruence.hpp"

#include <stdexcept>

#include "qdissect/dsl.hpp"

namespace qdissect::congruence {

namespace {

constexpr int kRestriction = 6;
constexpr int kExactCheckOrder = 300;
constexpr std::size_t kMaxCounterexamples = 8;

eta::EtaExpr parse_eta(const char* text) {
    return dsl::eta_expr_from_ast(*dsl::parse_expr(text));
}

std::uint64_t pow_u64(std::uint64_t base, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > UINT64_MAX / base) throw std::overflow_error("power overflows u64");
        r *= base;
    }
    return r;
}

}  // namespace

CongruenceFamily family_27n11_mod64() {
    return {27, 11, 64, "count(27n+11) == 0 (mod 64)"};
}

CongruenceFamily family_81n47_mod24() {
    return {81, 47, 24, "count(81n+47) == 0 (mod 24)"};
}

CongruenceFamily family_81n74_mod24() {
    return {81, 74, 24, "count(81n+74) == 0 (mod 24)"};
}

Source::Source(int order_budget)
    : budget_(order_budget),
      table_(oracle::count_restricted(kRestriction, order_budget)) {}

void Source::validate(std::uint64_t modulus) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (!exact_checked_) {
        int n = std::min(budget_, kExactCheckOrder);
        Series expansion = eta::overpartition_gf(kRestriction, CoefficientRing::exact(), n);
        for (int i = 0; i <= n; ++i)
            if (expansion.coeff(i) != table_.counts[static_cast<std::size_t>(i)])
                throw std::logic_error("eta expansion disagrees with the combinatorial count at n=" +
                                       std::to_string(i));
        exact_checked_ = true;
    }
    if (validated_.count(modulus)) return;
    Series expansion =
        eta::overpartition_gf(kRestriction, CoefficientRing::mod(modulus), budget_);
    for (int i = 0; i <= budget_; ++i) {
        std::uint64_t dp = mpz_fdiv_ui(table_.counts[static_cast<std::size_t>(i)].get_mpz_t(),
                                       static_cast<unsigned long>(modulus));
        if (dp != expansion.residue(i))
            throw std::logic_error("eta expansion disagrees with the combinatorial count mod " +
                                   std::to_string(modulus) + " at n=" + std::to_string(i));
    }
    validated_.insert(modulus);
}

std::uint64_t Source::coeff_mod(std::uint64_t argument, std::uint64_t modulus) const {
    if (argument > static_cast<std::uint64_t>(budget_))
        throw std::invalid_argument("requested order exceeds expansion budget");
    return mpz_fdiv_ui(table_.counts[static_cast<std::size_t>(argument)].get_mpz_t(),
                       static_cast<unsigned long>(modulus));
}

FamilyReport check_family(const CongruenceFamily& f, std::uint64_t nmax, const Source& source) {
    if (f.a == 0 || f.modulus < 2)
        throw std::invalid_argument("family requires a >= 1 and modulus >= 2");
    if (f.a * nmax + f.b > static_cast<std::uint64_t>(source.budget()))
        throw std::invalid_argument("requested order exceeds expansion budget");
    source.validate(f.modulus);

    FamilyReport report;
    report.family = f;
    report.max_n = nmax;
    for (std::uint64_t n = 0; n <= nmax; ++n) {
        std::uint64_t r = source.coeff_mod(f.a * n + f.b, f.modulus);
        ++report.instances_checked;
        if (r != 0 && report.counterexamples.size() < kMaxCounterexamples)
            report.counterexamples.push_back({n, f.a * n + f.b, r});
    }
    report.status = report.counterexamples.empty() ? "verified" : "failed";
    return report;
}

IndexedFamily indexed_family(int k) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    IndexedFamily f;
    f.k = k;
    f.a = 18 * pow_u64(3, 2 * k + 1);
    std::uint64_t p9k = pow_u64(9, k);
    f.b = (153 * p9k - 1) / 4;  // 153*9^k == 1 (mod 4), so this is exact
    if ((153 * p9k - 1) % 4 != 0) throw std::logic_error("b(k) is not an integer");
    if (f.b % 9 != 2) throw std::logic_error("b(k) must lie in the 9n+2 progression");
    return f;
}

bool IndexedFamilyReport::passed() const {
    if (per_k.empty()) return false;
    for (const auto& r : per_k)
        if (!r.passed()) return false;
    return true;
}

IndexedFamilyReport check_indexed_family(int kmax, const Source& source) {
    IndexedFamilyReport report;
    for (int k = 0; k <= kmax; ++k) {
        IndexedFamily f = indexed_family(k);
        if (f.b > static_cast<std::uint64_t>(source.budget()))
            throw std::invalid_argument("budget too small for k=" + std::to_string(k));
        std::uint64_t nmax = (static_cast<std::uint64_t>(source.budget()) - f.b) / f.a;
        CongruenceFamily cf{f.a, f.b, f.modulus,
                            "count(" + std::to_string(f.a) + "n+" + std::to_string(f.b) +
                                ") == 0 (mod 128), k=" + std::to_string(k)};
        report.per_k.push_back(check_family(cf, nmax, source));
    }
    return report;
}

FamilyReport check_closing_remark(std::uint64_t nmax, const Source& source) {
    return check_family(family_81n74_mod24(), nmax, source);
}

eta::EtaExpr t1_series_expr() { return parse_eta("4*f2^3*f3^26/f6^13"); }

eta::EtaExpr t2_series_expr() { return parse_eta("64*q*f1^3*f3^17/f6^4"); }

DecompositionReport t1_t2_decomposition(int order) {
    if (order < 1) throw std::invalid_argument("order must be >= 1");
    DecompositionReport report;
    report.order = order;

    // extract(gf, 2, 3) == 4 f2^3 f6^3 / f1^6 with exact coefficients
    CoefficientRing exact = CoefficientRing::exact();
    Series gf_exact = eta::overpartition_gf(kRestriction, exact, 3 * order + 2);
    Series lane_exact = extract_ap(gf_exact, 2, 3);
    Series rhs_exact = eta::expand_expr(parse_eta("4*f2^3*f6^3/f1^6"), exact, order);
    report.exact_step_ok = equal_upto(lane_exact, rhs_exact, order);

    // 9n+2 lane == T1 + T2 mod 128
    CoefficientRing m128 = CoefficientRing::mod(128);
    Series gf_mod = eta::overpartition_gf(kRestriction, m128, 9 * order + 2);
    Series lane_mod = extract_ap(extract_ap(gf_mod, 2, 3), 0, 3);
    eta::EtaExpr split = t1_series_expr();
    eta::EtaExpr t2e = t2_series_expr();
    split.terms.insert(split.terms.end(), t2e.terms.begin(), t2e.terms.end());
    Series rhs_mod = eta::expand_expr(split, m128, order);
    report.split_ok = congruent_upto(lane_mod, rhs_mod, 128, order);

    // 64 q f1^3 f3^17 / f6^4 == 64 q f1^3 f3^9 (mod 128)
    Series t2_full = eta::expand_expr(t2_series_expr(), m128, order);
    Series t2_reduced = eta::expand_expr(parse_eta("64*q*f1^3*f3^9"), m128, order);
    report.reduced_form_ok = congruent_upto(t2_full, t2_reduced, 128, order);
    return report;
}

eta::EtaExpr t1_claim_template(int sign, int a) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    eta::EtaExpr e;
    e.terms.push_back({mpz_class(32 * sign), 1, eta::EtaQuotient::from_pairs({{1, 3}, {3, 9}})});
    e.terms.push_back({mpz_class(-(16 * a + 12)), 0,
                       eta::EtaQuotient::from_pairs({{1, 8}, {3, 18}, {2, -1}, {6, -9}})});
    return e;
}

eta::EtaExpr t2_claim_template(int lambda) {
    if (lambda != 0 && lambda != 1) throw std::invalid_argument("lambda must be 0 or 1");
    eta::EtaExpr e;
    if (lambda == 1)
        e.terms.push_back({mpz_class(64), 0, eta::EtaQuotient::single(1, 3)});
    e.terms.push_back({mpz_class(64), 1, eta::EtaQuotient::from_pairs({{3, 3}, {6, 3}})});
    return e;
}

std::optional<ClaimT1Match> match_claim_T1(int k, int source_order) {
    if (k < 1) throw std::invalid_argument("k must be >= 1 for the T1 claim");
    std::uint64_t step = pow_u64(9, k);
    std::uint64_t residue = (step - 1) / 4;
    if (static_cast<std::uint64_t>(source_order) < residue + 2 * step)
        throw std::invalid_argument("series order insufficient for requested k");

    CoefficientRing m128 = CoefficientRing::mod(128);
    Series t1 = eta::expand_expr(t1_series_expr(), m128, source_order);
    Series lane = extract_ap(t1, static_cast<int>(residue), static_cast<int>(step));
    int depth = lane.order();

    std::optional<ClaimT1Match> found;
    for (int sign : {1, -1}) {
        for (int a = 0; a < 8; ++a) {
            Series tpl = eta::expand_expr(t1_claim_template(sign, a), m128, depth);
            if (congruent_upto(lane, tpl, 128, depth)) {
                if (found) return std::nullopt;  // not unique
                found = ClaimT1Match{k, sign, a, depth};
            }
        }
    }
    return found;
}

std::optional<ClaimT2Match> match_claim_T2(int k, int source_order) {
    if (k < 0) throw std::invalid_argument("k must be >= 0");
    std::uint64_t step = 2 * pow_u64(9, k);
    std::uint64_t residue = (pow_u64(9, k) - 1) / 4;
    if (static_cast<std::uint64_t>(source_order) < residue + 2 * step)
        throw std::invalid_argument("series order insufficient for requested k");

    CoefficientRing m128 = CoefficientRing::mod(128);
    Series t2 = eta::expand_expr(t2_series_expr(), m128, source_order);
    Series lane = extract_ap(t2, static_cast<int>(residue), static_cast<int>(step));
    int depth = lane.order();

    std::optional<ClaimT2Match> found;
    for (int lambda : {0, 1}) {
        Series tpl = eta::expand_expr(t2_claim_template(lambda), m128, depth);
        if (congruent_upto(lane, tpl, 128, depth)) {
            if (found) return std::nullopt;
            found = ClaimT2Match{k, lambda, depth};
        }
    }
    return found;
}

bool square_progression_empty(std::uint64_t target, std::uint64_t modulus, bool odd_only) {
    if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
    for (std::uint64_t r = 0; r < modulus; ++r) {
        if (odd_only && r % 2 == 0) continue;
        if ((r * r) % modulus == target % modulus) return false;
    }
    return true;
}

bool triangular_gap_check(const DiophantineForm& form, std::uint64_t bound) {
    if (form.target_mod == 0) throw std::invalid_argument("target modulus must be >= 1");
    for (std::uint64_t m = 0; m * (m + 1) <= bound; ++m) {
        std::uint64_t base = m * (m + 1);
        for (std::uint64_t v = base;; v += form.step) {
            if (v > bound) break;
            if (v >= form.target_res && (v - form.target_res) % form.target_mod == 0)
                return false;  // solution found
            if (form.step == 0) break;
        }
    }
    return true;
}

}  // namespace qdissect::congruence
