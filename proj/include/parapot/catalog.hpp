#pragma once

#include "parapot/pde.hpp"
#include "parapot/symmetry.hpp"

#include <string>
#include <utility>
#include <vector>

namespace parapot {

inline constexpr unsigned kHeatPolyMax = 24;
inline constexpr unsigned kLadderMax = 4;

// P_k = sum_j t^j x^{k-2j} / (j! (k-2j)!)
Expr heat_polynomial(unsigned k);
Expr backward_heat_polynomial(unsigned k);  // P_k(-t, x)

// (x^{nu-}, x^{nu+}), nu = (1 -+ sqrt(1 + 4 mu))/2; needs 1 + 4mu a positive rational square
std::pair<Expr, Expr> mu_stationary_solutions(const Expr& mu);
// symbolic branch: (x^{1-nu}, x^nu) with mu = nu^2 - nu
std::pair<Expr, Expr> mu_stationary_solutions_nu(const Expr& nu);
ParabolicEquation mu_equation(const Expr& mu);  // reduced, V = mu/x^2

// -4t^2 phi_t - 4tx phi_x - (x^2 + 2t) phi
Expr pi_hat(const Expr& phi);
std::pair<Expr, Expr> pi_ladder(const Expr& mu, unsigned k);
// (phi^{01}, phi^{02}, ..., phi^{k1}, phi^{k2})
FunctionTuple pi_ladder_tuple(const Expr& mu, unsigned k);

// V = P - 2 (W_x / W)_x for seeds of w_t = w_xx - P w
Expr potential_V_from_seeds(const Expr& P, const FunctionTuple& psis);

// T = t, X = x - 2 delta t, U1 = exp(delta x - delta^2 t); heat to heat
EquivalenceTransformation g0_transformation(const Expr& delta);

struct FixtureOperator {
    PointOperator op;        // Lie symmetry of the potential equation
    Expr eta;                // expected u-coefficient of the prolongation
    ProlongedOperator prolonged;
};

struct Fixture {
    std::string name;
    std::string source;
    ParabolicEquation equation;
    Expr alpha;
    ParabolicEquation potential_equation;
    std::vector<FixtureOperator> operators;
};

std::vector<std::string> fixture_names();
// reads <dir>/<name>.fix and re-verifies every operator
Fixture load_fixture(const std::string& path);
Fixture fixture(const std::string& name);
std::string fixture_dir();

// sample data shared by the suites
struct EquationCharacteristic {
    std::string label;
    ParabolicEquation eq;
    Expr alpha;
};
std::vector<EquationCharacteristic> catalog_characteristic_pairs();

struct EquationSolution {
    std::string label;
    ParabolicEquation eq;
    Expr solution;
};
std::vector<EquationSolution> catalog_solution_pairs();
std::vector<ParabolicEquation> catalog_equations();

struct FrameCase {
    std::string label;
    ParabolicEquation eq;
    FunctionTuple alphas;
};
std::vector<FrameCase> catalog_frames();  // p <= 4

struct SeedCase {
    std::string label;
    ParabolicEquation source;
    FunctionTuple psis;
};
std::vector<SeedCase> catalog_seeds();  // length <= 4

std::vector<NamedOperator> essential_heat_operators();

}  // namespace parapot
