#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "n4/numeric.hpp"
#include "n4/rational.hpp"

namespace n4 {

enum class CaseStatus { pass, fail, skip };
std::string to_string(CaseStatus s);

struct CaseOutcome {
    CaseStatus status = CaseStatus::pass;
    std::string detail;
};

struct SuiteCase {
    std::string id;
    std::function<CaseOutcome()> run;
};

struct CaseResult {
    std::string id;
    CaseStatus status = CaseStatus::pass;
    std::string detail;
};

struct SuiteConfig {
    Rational q_order = 8;
    double tol = 1e-9;         // numeric identity residuals
    double span_tol = 1e-7;    // span-closure certificates
    Precision precision = Precision::Double;
    double im_tau_floor = default_im_tau_floor;
    unsigned threads = 0;      // 0: hardware concurrency
};

struct SuiteReport {
    std::string suite;
    SuiteConfig config;
    std::vector<CaseResult> cases;
    double wall_time_s = 0;

    std::size_t count(CaseStatus s) const;
    bool passed() const { return count(CaseStatus::fail) == 0; }
};

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"theta", "psi", "characters", "reduction", "modular"};
    return names;
}

/// Cases of one named suite, or of every suite for "all". Throws std::invalid_argument on unknown names.
std::vector<SuiteCase> suite_cases(std::string_view suite, const SuiteConfig& cfg);

std::vector<SuiteCase> theta_cases(const SuiteConfig& cfg);
std::vector<SuiteCase> psi_cases(const SuiteConfig& cfg);
std::vector<SuiteCase> character_cases(const SuiteConfig& cfg);
std::vector<SuiteCase> reduction_cases(const SuiteConfig& cfg);
std::vector<SuiteCase> modular_cases(const SuiteConfig& cfg);

/// Runs cases concurrently; results keep the input order. Exceptions become failures.
SuiteReport run_suite(std::string suite, const std::vector<SuiteCase>& cases, const SuiteConfig& cfg);

/// Case subset whose ids start with prefix.
std::vector<SuiteCase> with_prefix(const std::vector<SuiteCase>& cases, std::string_view prefix);

/// timing is left out unless asked for, so repeated runs print identical bytes
std::string to_json(const SuiteReport& r, bool timing = false, int indent = 2);
std::string to_text(const SuiteReport& r, bool timing = false);

} // namespace n4
