#pragma once

#include "parapot/expr.hpp"

#include <string>
#include <vector>

namespace parapot {

struct Check {
    std::string name;
    bool pass = false;
    std::string residual;  // canonical string of the residual, "0" on success
};

using Checks = std::vector<Check>;

inline Check zero_check(const std::string& name, const Expr& residual) {
    bool ok = residual.is_zero();
    return {name, ok, ok ? "0" : residual.str()};
}

inline bool all_pass(const Checks& cs) {
    for (const auto& c : cs)
        if (!c.pass) return false;
    return true;
}

}  // namespace parapot
