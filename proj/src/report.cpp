#include "parapot/report.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace parapot {

void Report::input(const std::string& key, const ParabolicEquation& eq) {
    input(key + ".A", eq.A);
    input(key + ".B", eq.B);
    input(key + ".C", eq.C);
}

void Report::output(const std::string& key, const ParabolicEquation& eq) {
    output(key + ".A", eq.A);
    output(key + ".B", eq.B);
    output(key + ".C", eq.C);
}

void Report::check(const std::string& name, bool pass, const std::string& residual) {
    checks.push_back({name, pass, residual.empty() ? (pass ? "0" : "failed") : residual});
}

std::string Report::text() const {
    std::ostringstream os;
    os << "command: " << command << "\n";
    auto section = [&](const char* title, const std::vector<ReportEntry>& es) {
        if (es.empty()) return;
        os << title << ":\n";
        for (const auto& e : es) os << "  " << e.key << ": " << e.value << "\n";
    };
    section("inputs", inputs);
    section("outputs", outputs);
    if (!checks.empty()) {
        os << "checks:\n";
        for (const auto& c : checks) {
            os << "  " << (c.pass ? "PASS" : "FAIL") << " " << c.name;
            if (!c.pass) os << ": " << c.residual;
            os << "\n";
        }
    }
    if (timing_ms) os << "timing_ms: " << std::fixed << std::setprecision(3) << *timing_ms << "\n";
    os << "result: " << (passed() ? "ok" : "failed") << "\n";
    return os.str();
}

std::string Report::json() const {
    using nlohmann::ordered_json;
    ordered_json j;
    j["command"] = command;
    auto entries = [](const std::vector<ReportEntry>& es) {
        ordered_json a = ordered_json::array();
        for (const auto& e : es) a.push_back({{"key", e.key}, {"value", e.value}, {"expression", e.expression}});
        return a;
    };
    j["inputs"] = entries(inputs);
    j["outputs"] = entries(outputs);
    ordered_json cs = ordered_json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
    j["checks"] = cs;
    if (timing_ms) j["timing_ms"] = *timing_ms;
    j["result"] = passed() ? "ok" : "failed";
    return j.dump(2) + "\n";
}

}  // namespace parapot
