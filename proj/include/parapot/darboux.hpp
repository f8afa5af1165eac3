#pragma once

#include "parapot/check.hpp"
#include "parapot/funalg.hpp"
#include "parapot/pde.hpp"

namespace parapot {

struct DarbouxSeed {
    FunctionTuple psis;
    ParabolicEquation source;

    // checks that every psi solves the source and that the tuple is independent
    static DarbouxSeed make(const ParabolicEquation& source, const FunctionTuple& psis);
};

Expr dt_apply(const Expr& psi, const Expr& w);
Expr crum_apply(const FunctionTuple& psis, const Expr& w);
Expr crum_apply(const DarbouxSeed& seed, const Expr& w);
// composition of single steps with the intermediate seeds DT[psi^1..psi^{s-1}](psi^s)
Expr crum_apply_stepwise(const FunctionTuple& psis, const Expr& w);

// image equation of a single transformation, found by elimination and
// cross-checked against the closed form
ParabolicEquation dt_target_equation(const DarbouxSeed& seed);
ParabolicEquation dt_target_by_elimination(const ParabolicEquation& source, const Expr& psi);
ParabolicEquation crum_target_equation(const DarbouxSeed& seed);
ParabolicEquation crum_target_iterated(const DarbouxSeed& seed);

FunctionTuple dual_characteristics(const DarbouxSeed& seed);

// images of test solutions solve the target; seed members map to zero
Checks verify_dt_solution_map(const DarbouxSeed& seed, const FunctionTuple& tests);

}  // namespace parapot
