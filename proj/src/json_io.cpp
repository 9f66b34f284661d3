#include "qdissect/json_io.hpp"

#include <stdexcept>

namespace qdissect {

using nlohmann::json;

json series_to_json(const Series& s) {
    json j;
    if (s.ring().is_exact())
        j["ring"] = "exact";
    else
        j["ring"] = json{{"mod", s.ring().modulus()}};
    json coeffs = json::array();
    for (int i = 0; i <= s.order(); ++i) coeffs.push_back(s.coeff(i).get_str());
    j["coeffs"] = std::move(coeffs);
    return j;
}

Series series_from_json(const json& j) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("coeffs"))
        throw std::invalid_argument("series JSON needs 'ring' and 'coeffs'");
    CoefficientRing ring = CoefficientRing::exact();
    const json& r = j.at("ring");
    if (r.is_string()) {
        if (r.get<std::string>() != "exact")
            throw std::invalid_argument("unknown ring tag '" + r.get<std::string>() + "'");
    } else if (r.is_object() && r.contains("mod")) {
        ring = CoefficientRing::mod(r.at("mod").get<std::uint64_t>());
    } else {
        throw std::invalid_argument("ring must be \"exact\" or {\"mod\": m}");
    }
    const json& cj = j.at("coeffs");
    if (!cj.is_array() || cj.empty())
        throw std::invalid_argument("coeffs must be a nonempty array of decimal strings");
    std::vector<mpz_class> coeffs;
    coeffs.reserve(cj.size());
    for (const auto& c : cj) {
        if (!c.is_string())
            throw std::invalid_argument("coefficients must be decimal strings");
        try {
            coeffs.emplace_back(c.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("bad decimal coefficient '" + c.get<std::string>() + "'");
        }
    }
    return Series(std::move(coeffs), ring);
}

json count_table_to_json(const oracle::CountTable& t) {
    json counts = json::array();
    for (const auto& c : t.counts) counts.push_back(c.get_str());
    return json{{"l", t.l}, {"nmax", t.nmax}, {"counts", std::move(counts)}};
}

json verify_result_to_json(const dissect::IdentityRecord& record,
                           const dissect::VerifyResult& result, int order) {
    json j{{"name", record.name},
           {"source", record.source},
           {"order", order},
           {"status", result.passed ? "verified" : "failed"}};
    if (!result.passed && result.first_bad_exponent >= 0) {
        j["first_bad_exponent"] = result.first_bad_exponent;
        j["lhs_coeff"] = result.lhs_coeff.get_str();
        j["rhs_coeff"] = result.rhs_coeff.get_str();
    }
    return j;
}

json family_report_to_json(const congruence::FamilyReport& report) {
    json counterexamples = json::array();
    for (const auto& c : report.counterexamples)
        counterexamples.push_back(
            json{{"n", c.n}, {"argument", c.argument}, {"residue", c.residue}});
    return json{{"claim", report.family.description},
                {"modulus", report.family.modulus},
                {"instances_checked", report.instances_checked},
                {"status", report.status},
                {"counterexamples", std::move(counterexamples)}};
}

json script_report_to_json(const dsl::Report& report) {
    json asserts = json::array();
    for (const auto& a : report.assertions) {
        json entry{{"line", a.line},
                   {"text", a.text},
                   {"status", a.passed ? "pass" : "fail"},
                   {"order_checked", a.order_checked}};
        if (!a.passed) {
            entry["first_bad_exponent"] = a.first_bad_exponent;
            entry["lhs_coeff"] = a.lhs_coeff;
            entry["rhs_coeff"] = a.rhs_coeff;
        }
        asserts.push_back(std::move(entry));
    }
    return json{{"assertions", std::move(asserts)}, {"all_passed", report.all_passed()}};
}

}  // namespace qdissect
