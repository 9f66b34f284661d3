#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdissect/eta.hpp"
#include "qdissect/oracle.hpp"
#include "qdissect/series.hpp"

namespace qdissect::congruence {

/// Claim shape: count(a*n + b) == 0 (mod modulus) for all n >= 0,
/// where count is the 6-restricted overpartition function.
struct CongruenceFamily {
    std::uint64_t a = 1;
    std::uint64_t b = 0;
    std::uint64_t modulus = 2;
    std::string description;
};

CongruenceFamily family_27n11_mod64();
CongruenceFamily family_81n47_mod24();
CongruenceFamily family_81n74_mod24();

struct Counterexample {
    std::uint64_t n = 0;
    std::uint64_t argument = 0;   // a*n + b
    std::uint64_t residue = 0;    // count(argument) mod modulus
};

struct FamilyReport {
    CongruenceFamily family;
    std::string status;  // "verified" | "failed"
    std::uint64_t instances_checked = 0;
    std::uint64_t max_n = 0;
    std::vector<Counterexample> counterexamples;

    bool passed() const { return status == "verified"; }
};

/// Cross-validated coefficient source for the restricted-overpartition
/// congruence checks. The combinatorial DP is the authority; before any
/// verdict is issued against a modulus, the eta-quotient expansion of
/// f2*f6/f1^2 must agree with the DP over the whole budget mod that
/// modulus, and exactly up to order min(300, budget).
class Source {
public:
    explicit Source(int order_budget);

    int budget() const { return budget_; }
    const oracle::CountTable& table() const { return table_; }

    /// Runs (and caches) the eta-expansion cross-check for a modulus.
    /// Throws std::logic_error if the two computation paths disagree.
    void validate(std::uint64_t modulus) const;

    std::uint64_t coeff_mod(std::uint64_t argument, std::uint64_t modulus) const;

private:
    int budget_;
    oracle::CountTable table_;
    mutable std::mutex mutex_;
    mutable std::set<std::uint64_t> validated_;
    mutable bool exact_checked_ = false;
};

/// Checks count(a*n + b) == 0 (mod m) for n = 0..nmax against the source.
/// Requires a*nmax + b <= source budget.
FamilyReport check_family(const CongruenceFamily& f, std::uint64_t nmax, const Source& source);

/// k-indexed family a(k) = 18*3^(2k+1), b(k) = (153*9^k - 1)/4, mod 128.
/// b(k) == 2 (mod 9) for every k, which places each member inside the
/// 9n+2 progression handled by the T1/T2 split.
struct IndexedFamily {
    int k = 0;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    std::uint64_t modulus = 128;
};

IndexedFamily indexed_family(int k);

struct IndexedFamilyReport {
    std::vector<FamilyReport> per_k;
    bool passed() const;
};

/// Checks the full k-indexed mod-128 family for k = 0..kmax, each k over
/// every n that fits the source budget.
IndexedFamilyReport check_indexed_family(int kmax, const Source& source);

FamilyReport check_closing_remark(std::uint64_t nmax, const Source& source);

/// The two arms of the 9n+2 split mod 128:
///   T1 lane: 4 f2^3 f3^26 / f6^13
///   T2 lane: 64 q f1^3 f3^17 / f6^4  (== 64 q f1^3 f3^9 mod 128)
eta::EtaExpr t1_series_expr();
eta::EtaExpr t2_series_expr();

struct DecompositionReport {
    bool exact_step_ok = false;    // extract(gf, 2, 3) equals 4 f2^3 f6^3 / f1^6 exactly
    bool split_ok = false;         // 9n+2 lane == T1 + T2 mod 128
    bool reduced_form_ok = false;  // the two T2 forms agree mod 128
    int order = 0;

    bool passed() const { return exact_step_ok && split_ok && reduced_form_ok; }
};

DecompositionReport t1_t2_decomposition(int order);

/// Claim templates for the T1 and T2 lanes mod 128.
///   T1: sign*32 q f1^3 f3^9 - (16a + 12) f1^8 f3^18 / (f2 f6^9)
///   T2: lambda*64 f1^3 + 64 q f3^3 f6^3
eta::EtaExpr t1_claim_template(int sign, int a);
eta::EtaExpr t2_claim_template(int lambda);

struct ClaimT1Match {
    int k = 0;
    int sign = 0;  // +1 or -1
    int a = 0;     // meaningful mod 8 (16a enters only mod 128)
    int verified_order = 0;
};

struct ClaimT2Match {
    int k = 0;
    int lambda = 0;  // 0 or 1
    int verified_order = 0;
};

/// Extracts the level-k T1 lane (step 9^k, residue (9^k - 1)/4) from the
/// T1 series expanded mod 128 to source_order, then searches
/// sign in {+,-} x a in {0..7} for the unique template match. Returns
/// nullopt when no candidate, or more than one, matches.
std::optional<ClaimT1Match> match_claim_T1(int k, int source_order);

/// Same for the T2 lane: step 2*9^k, residue (9^k - 1)/4, lambda in {0,1}.
std::optional<ClaimT2Match> match_claim_T2(int k, int source_order);

/// True iff no residue r mod m (odd r only, when odd_only) has
/// r^2 == target (mod m). Brute force over all residues.
bool square_progression_empty(std::uint64_t target, std::uint64_t modulus, bool odd_only);

/// Diophantine gap: no m, k, n >= 0 with m(m+1) + step*k = target_mod*n + target_res,
/// searched over all values m(m+1) + step*k <= bound. step = 0 drops the k term.
struct DiophantineForm {
    std::uint64_t step = 0;
    std::uint64_t target_mod = 1;
    std::uint64_t target_res = 0;
};

bool triangular_gap_check(const DiophantineForm& form, std::uint64_t bound);

/// The three forms whose emptiness the vanishing arguments rest on.
inline constexpr DiophantineForm kGapTriangularPlus3k{3, 6, 4};
inline constexpr DiophantineForm kGapTriangular3n1{0, 3, 1};
inline constexpr DiophantineForm kGapTriangular9n5{0, 9, 5};

}  // namespace qdissect::congruence
