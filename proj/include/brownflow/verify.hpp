#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace brownflow::verify {

struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
    nlohmann::json metrics = nlohmann::json::object();
};

struct SuiteOptions {
    // quick shrinks the stochastic checks (matrix sizes, trials, samples);
    // it is a smoke test, not the acceptance run
    bool quick = false;
    int threads = 0;
    std::vector<int> only;  // empty runs all 13
    std::function<void(const CheckResult&)> on_result;
};

int criterion_count();
std::vector<CheckResult> run_suite(const SuiteOptions& opt);
nlohmann::json to_json(const std::vector<CheckResult>& results, const SuiteOptions& opt);
std::string format_line(const CheckResult& r);

}  // namespace brownflow::verify
