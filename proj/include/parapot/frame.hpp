#pragma once

#include "parapot/check.hpp"
#include "parapot/funalg.hpp"
#include "parapot/pde.hpp"

#include <cstdint>

namespace parapot {

// Potential frame of an equation and a tuple of characteristics. Level
// indices follow f^0 = w^0 = u, W^0 = W^{-1} = 1, beta^{-1,s} = 1.
struct PotentialFrame {
    ParabolicEquation equation;
    FunctionTuple alphas;
    std::vector<Expr> wronskians;              // W^0..W^p
    std::vector<std::vector<Expr>> betas;      // betas[s + 1][sigma] for s = -1..p-1, sigma = 0..p
    std::vector<Expr> H;                       // H[1..p], H[0] unused
    std::vector<Expr> G;                       // G[1..p]
    std::vector<Expr> levelB;                  // B^0..B^p
    std::vector<Expr> levelC;                  // C^0..C^p
    std::vector<FunctionTuple> wsols;          // wsols[s] = (w^{s,1}..w^{s,s})

    size_t p() const { return alphas.size(); }
    const Expr& W(int s) const;  // s >= -1
    const Expr& beta(int s, int sigma) const;
};

PotentialFrame build_frame(const ParabolicEquation& eq, const FunctionTuple& alphas);

ParabolicEquation modified_potential_equation(const PotentialFrame& fr, size_t s);
const FunctionTuple& w_solutions(const PotentialFrame& fr, size_t s);

// potential symbols v1.., f1.., w1..
Var v_pot(size_t s);
Var f_pot(size_t s);
Var w_pot(size_t s);

JetSystem potential_system_v(const PotentialFrame& fr);
// minimal p-level system together with its first-order consequences
JetSystem potential_system_f(const PotentialFrame& fr);
JetSystem modified_potential_system_w(const PotentialFrame& fr);
// f^p_t = A f^p_xx - ((G^p + A H^p_x)/H^p) f^p_x
ParabolicEquation p_level_potential_equation(const PotentialFrame& fr);

// determinant form in terms of v1..v^{s-1}, v^sigma
Expr g_potential(const PotentialFrame& fr, size_t s, size_t sigma);
Expr g_potential_recursive(const PotentialFrame& fr, size_t s, size_t sigma);

// level s equation derived from level s-1 by eliminating the potential
ParabolicEquation level_by_elimination(const PotentialFrame& fr, size_t s);

// Conditions on (A, H^1..H^p, G^p) to form a p-level potential system of an
// equation with zero-order coefficient C; G^s for s < p are rebuilt by the
// backward recursion. The C term enters only at s = 1.
Checks validate_frame_data(const Expr& A, const Expr& C, const std::vector<Expr>& H, const Expr& Gp,
                           std::vector<Expr>* G_out = nullptr);

// C H^1 at s = 1 and zero above: H^s_t + G^s_x + defect = 0
Expr conservation_defect(const PotentialFrame& fr, size_t s);

Checks frame_invariant_checks(const PotentialFrame& fr);
// invariants plus basis-change invariance under a random upper-triangular matrix
Checks frame_consistency(const PotentialFrame& fr, uint64_t seed = 0);

}  // namespace parapot
