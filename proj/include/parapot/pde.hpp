#pragma once

#include "parapot/expr.hpp"

#include <string>
#include <vector>

namespace parapot {

// u_t = A u_xx + B u_x + C u
struct ParabolicEquation {
    Expr A{1};
    Expr B;
    Expr C;

    static ParabolicEquation reduced(const Expr& V) { return {Expr(1), Expr(), -V}; }
    bool is_reduced_form() const { return A.is_one() && B.is_structural_zero(); }
    Expr V() const { return -C; }  // meaningful for reduced form
    bool operator==(const ParabolicEquation& o) const;
    std::string str() const;
};

bool same_equation(const ParabolicEquation& a, const ParabolicEquation& b);  // via is_zero
ParabolicEquation heat_equation();

// parses "eq { A = ...; B = ...; C = ... }" or "reduced { V = ... }"
ParabolicEquation parse_equation(const std::string& text);
std::string format_equation(const ParabolicEquation& eq);

ParabolicEquation adjoint(const ParabolicEquation& eq);
Expr apply_operator(const ParabolicEquation& eq, const Expr& phi);  // L phi
bool is_solution(const ParabolicEquation& eq, const Expr& phi);

// ---------------------------------------------------------------- jets

// u, u_x, u_xx, ...; returns the symbol for the k-th x-derivative of u
Var ujet(int k);
int max_jet_order(const Expr& e);  // -1 if no jet symbol occurs

struct Potential {
    Var name;
    Expr x_rel;  // expression of D_x(name)
    Expr t_rel;  // expression of D_t(name)
};

// Evolution equation for u together with potentials whose derivatives are
// given explicitly; total derivatives act on functions of (t, x, u jets, potentials).
class JetSystem {
public:
    explicit JetSystem(ParabolicEquation eq, std::vector<Potential> pots = {});

    const ParabolicEquation& equation() const { return eq_; }
    const std::vector<Potential>& potentials() const { return pots_; }

    Expr Dx(const Expr& e) const;
    Expr Dt(const Expr& e) const;
    Expr Dx(const Expr& e, unsigned n) const;
    Expr ut(int k) const;  // D_x^k of the right-hand side of the u equation

    // cross-derivative compatibility D_t(x_rel) - D_x(t_rel) of every potential
    std::vector<Expr> compatibility_residuals() const;

private:
    ParabolicEquation eq_;
    std::vector<Potential> pots_;
    mutable std::vector<Expr> ut_cache_;
};

Expr total_derivative(const Expr& e, char dir, const ParabolicEquation& eq);

// ---------------------------------------------------------------- operators

// tau d_t + xi d_x + (zeta1 w + zeta0) d_w
struct PointOperator {
    Expr tau;
    Expr xi;
    Expr zeta1;
    Expr zeta0;

    static PointOperator parse(const std::string& text);
    std::string str() const;
    bool is_zero() const;
    PointOperator operator+(const PointOperator& o) const;
    PointOperator operator*(const Expr& c) const;
};

// Operator on the full jet system: tau d_t + xi d_x + eta d_u + sum theta_i d_{pot_i}
struct ProlongedOperator {
    PointOperator base;
    Expr tau;
    Expr xi;
    Expr eta;
    std::vector<Var> pots;
    std::vector<Expr> thetas;

    std::string str() const;
};

// all determining residuals of the operator on the system (empty pots means the bare equation)
std::vector<Expr> system_invariance_residuals(const JetSystem& sys, const ProlongedOperator& Q);
Expr invariance_residual(const ParabolicEquation& eq, const PointOperator& Q);
bool is_symmetry(const ParabolicEquation& eq, const PointOperator& Q);
ProlongedOperator as_prolonged(const PointOperator& Q);

// Q-dagger with theta1 = -xi_x - zeta1, a symmetry of the adjoint equation
PointOperator adjoint_pair_prolong(const PointOperator& Q, const ParabolicEquation& eq);

// ---------------------------------------------------------------- equivalence

struct EquivalenceTransformation {
    Expr T{Expr::t()};
    Expr X{Expr::x()};
    Expr U1{1};
    Expr U0;

    static EquivalenceTransformation identity() { return {}; }
    std::string str() const;
};

void validate_transformation(const EquivalenceTransformation& tr);
// coefficients of the image equation written in the old variables
ParabolicEquation transformed_coefficients_old_vars(const ParabolicEquation& eq,
                                                     const EquivalenceTransformation& tr);
ParabolicEquation apply_equivalence(const ParabolicEquation& eq, const EquivalenceTransformation& tr);
EquivalenceTransformation invert_transformation(const EquivalenceTransformation& tr);
// (second after first)
EquivalenceTransformation compose(const EquivalenceTransformation& second,
                                  const EquivalenceTransformation& first);
// rewrites an expression in the old variables in terms of the new ones
Expr to_new_variables(const Expr& e, const EquivalenceTransformation& tr);
// substitutes t -> T(t), x -> X(t, x)
Expr pull_back(const Expr& e, const EquivalenceTransformation& tr);

// U1 = exp(int B/2 dx) removing B when A = 1 and B is a polynomial
EquivalenceTransformation gauge_to_reduced(const ParabolicEquation& eq);

}  // namespace parapot
