#pragma once

#include "parapot/check.hpp"
#include "parapot/pde.hpp"

#include <optional>
#include <string>
#include <vector>

namespace parapot {

struct ReportEntry {
    std::string key;
    std::string value;
    bool expression = false;  // value is a canonical expression string
};

// Key/value report emitted by the command-line tool.
struct Report {
    std::string command;
    std::vector<ReportEntry> inputs;
    std::vector<ReportEntry> outputs;
    Checks checks;
    std::optional<double> timing_ms;

    void input(const std::string& key, const std::string& value) { inputs.push_back({key, value, false}); }
    void input(const std::string& key, const Expr& e) { inputs.push_back({key, e.str(), true}); }
    void input(const std::string& key, const ParabolicEquation& eq);
    void output(const std::string& key, const std::string& value) { outputs.push_back({key, value, false}); }
    void output(const std::string& key, const Expr& e) { outputs.push_back({key, e.str(), true}); }
    void output(const std::string& key, const ParabolicEquation& eq);
    void check(const Check& c) { checks.push_back(c); }
    void check(const Checks& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }
    void check(const std::string& name, bool pass, const std::string& residual = "");

    bool passed() const { return all_pass(checks); }
    std::string text() const;
    std::string json() const;
};

}  // namespace parapot
