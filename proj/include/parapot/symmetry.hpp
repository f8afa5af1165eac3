#pragma once

#include "parapot/frame.hpp"
#include "parapot/funalg.hpp"
#include "parapot/pde.hpp"

#include <string>
#include <vector>

namespace parapot {

enum class CaseTag { generic_V_of_x, mu_x_minus_2, zero, unknown };
const char* to_string(CaseTag t);

struct NamedOperator {
    std::string name;  // Dt, Dx, G, D, Pi, I
    PointOperator op;
};

struct SymmetryClassification {
    CaseTag tag = CaseTag::unknown;
    std::vector<NamedOperator> operators;  // nontrivial (essential) operators
    std::vector<NamedOperator> trivial;    // w Dw
    Expr mu;                               // set for the mu/x^2 case
};

// standard operators of reduced equations
PointOperator op_Dt();
PointOperator op_Dx();
PointOperator op_G();   // 2t Dx - x w Dw
PointOperator op_D();   // 2t Dt + x Dx
PointOperator op_Pi();  // 4t^2 Dt + 4tx Dx - (x^2 + 2t) w Dw
PointOperator op_I();   // w Dw

SymmetryClassification classify_reduced(const Expr& V);

// simplest potential system v_x = alpha u, v_t = alpha A u_x - ((alpha A)_x - alpha B) u
ParabolicEquation simplest_potential_equation(const ParabolicEquation& eq, const Expr& alpha);
ProlongedOperator prolong_simplest(const PointOperator& Qp, const ParabolicEquation& eq, const Expr& alpha);
ProlongedOperator prolong_frame(const PointOperator& Qp, const PotentialFrame& fr);
// operator on w^p expressed for f^p = beta^{p-1,p} w^p
PointOperator w_operator_to_f(const PointOperator& Q, const PotentialFrame& fr);

// eta (level 0) or theta^level depends on a potential of higher index
bool is_pure_potential(const ProlongedOperator& Q, size_t level);

// Q'[psi] = zeta1 psi - tau psi_t - xi psi_x
Expr induced_action(const PointOperator& Q, const Expr& psi);

struct EigenResult {
    bool eigenfunction = false;
    Expr lambda;
};
EigenResult eigen_test(const PointOperator& Qp, const Expr& psi, const ParabolicEquation& eq);

// Largest subspace S of the coordinate space with E S = 0 and M S in S;
// returns a basis as columns.
ExprMatrix largest_invariant_subspace(const ExprMatrix& M, const ExprMatrix& E);

struct InducedMatrix {
    ExprMatrix M;          // coordinates of Q'[psi_i] along psi
    ExprMatrix E;          // coordinates along the extra functions
    FunctionTuple extra;   // images outside span(psi) completing the basis
};
InducedMatrix induced_matrix(const PointOperator& Qp, const FunctionTuple& psis, const ParabolicEquation& eq);

FunctionTuple stable_invariant_subspace(const PointOperator& Qp, const FunctionTuple& psis,
                                        const ParabolicEquation& eq);
bool strictly_p_order(const PointOperator& Qp, const FunctionTuple& psis, const ParabolicEquation& eq);

struct OperatorVerdict {
    std::string name;
    PointOperator op;
    bool strict = false;
    std::string prolonged;  // full operator on the f-system when strict
};

struct PotentialSymmetryReport {
    bool decided = false;
    bool exists = false;
    CaseTag tag = CaseTag::unknown;
    ParabolicEquation level_equation;
    FunctionTuple psis;
    std::vector<OperatorVerdict> verdicts;
    std::vector<std::string> generators;  // "Pi-type", ...
    std::string note;
    std::string summary() const;
};

PotentialSymmetryReport potential_symmetry_report(const ParabolicEquation& eq, const FunctionTuple& alphas);

}  // namespace parapot
