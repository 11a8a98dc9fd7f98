#pragma once

#include <map>
#include <string>
#include <vector>

namespace colorpoincare {

struct CheckFailure {
    std::string context;
    std::string detail;
};

// Result of one verification pass. failure_count is the true total;
// failures keeps at most kMaxStoredFailures examples for reporting.
struct SuiteReport {
    static constexpr int kMaxStoredFailures = 32;

    std::string name;
    long long cases = 0;
    long long failure_count = 0;
    std::vector<CheckFailure> failures;
    double seconds = 0.0;
    std::map<std::string, std::string> info;

    bool passed() const { return failure_count == 0; }
    void add_failure(std::string context, std::string detail) {
        ++failure_count;
        if (static_cast<int>(failures.size()) < kMaxStoredFailures)
            failures.push_back({std::move(context), std::move(detail)});
    }
    void merge(const SuiteReport& o) {
        cases += o.cases;
        failure_count += o.failure_count;
        for (const auto& f : o.failures)
            if (static_cast<int>(failures.size()) < kMaxStoredFailures) failures.push_back(f);
    }
};

struct ToolReport {
    int schema = 1;
    std::string command;
    std::map<std::string, std::string> config;
    std::vector<SuiteReport> suites;

    bool passed() const {
        for (const auto& s : suites)
            if (!s.passed()) return false;
        return true;
    }
};

std::string to_text(const ToolReport& r);
std::string to_json(const ToolReport& r);

}  // namespace colorpoincare
