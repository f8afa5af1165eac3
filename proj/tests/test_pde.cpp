#include "parapot/catalog.hpp"
#include "parapot/pde.hpp"

#include <gtest/gtest.h>

using namespace parapot;

namespace {

Expr P(const char* s) { return Expr::parse(s); }
ParabolicEquation eqn(const char* A, const char* B, const char* C) { return {P(A), P(B), P(C)}; }

}  // namespace

TEST(Equation, ParseFormats) {
    auto eq = parse_equation("# comment\neq { A = 1; B = \"x\"; C = 1 }");
    EXPECT_TRUE(same_equation(eq, eqn("1", "x", "1")));
    auto red = parse_equation("reduced { V = 2/x^2 }");
    EXPECT_TRUE(same_equation(red, eqn("1", "0", "-2/x^2")));
    EXPECT_TRUE(same_equation(parse_equation(format_equation(eq)), eq));
    EXPECT_THROW(parse_equation("eq { B = 1 }"), std::invalid_argument);
    EXPECT_THROW(parse_equation("eq { A = 0 }"), std::invalid_argument);
    EXPECT_THROW(parse_equation("eq { A = 1; D = 2 }"), std::invalid_argument);
}

TEST(Adjoint, Examples) {
    auto V = P("V0*x");
    auto adj = adjoint(ParabolicEquation::reduced(V));
    EXPECT_TRUE(same_equation(adj, {Expr(-1), Expr(), V}));
    auto fp = eqn("1", "x", "1");
    EXPECT_TRUE(same_equation(adjoint(fp), eqn("-1", "x", "0")));
    EXPECT_TRUE(same_equation(adjoint(adjoint(fp)), fp));
}

TEST(Adjoint, InvolutionOnCatalog) {
    auto eqs = catalog_equations();
    ASSERT_GE(eqs.size(), 10u);
    for (const auto& eq : eqs) EXPECT_TRUE(same_equation(adjoint(adjoint(eq)), eq)) << eq.str();
}

TEST(ApplyOperator, Examples) {
    auto heat = heat_equation();
    EXPECT_TRUE(apply_operator(heat, P("x^2 + 2*t")).is_zero());
    EXPECT_TRUE(apply_operator(heat, Expr::t()).is_one());
    // x^nu with mu = nu^2 - nu
    auto [lo, hi] = mu_stationary_solutions_nu(P("nu"));
    auto eq = ParabolicEquation::reduced(P("(nu^2 - nu)/x^2"));
    EXPECT_TRUE(apply_operator(eq, hi).is_zero());
    EXPECT_TRUE(apply_operator(eq, lo).is_zero());
}

TEST(ApplyOperator, CatalogSolutions) {
    for (const auto& s : catalog_solution_pairs()) EXPECT_TRUE(is_solution(s.eq, s.solution)) << s.label;
}

TEST(IsSolution, Examples) {
    auto heat = heat_equation();
    EXPECT_TRUE(is_solution(heat, heat_polynomial(4)));
    EXPECT_FALSE(is_solution(heat, P("x^3")));
    EXPECT_TRUE(is_solution(ParabolicEquation{Expr(-1), Expr(), Expr()}, P("x^2 - 2*t")));
}

TEST(TotalDerivative, Examples) {
    auto heat = heat_equation();
    Expr u = Expr::var(ujet(0)), ux = Expr::var(ujet(1)), uxx = Expr::var(ujet(2));
    EXPECT_EQ(total_derivative(u * u, 'x', heat), 2 * u * ux);
    EXPECT_EQ(total_derivative(u, 't', heat), uxx);
    Expr a = P("x^2/2 - t");
    Expr div = total_derivative(a * u, 't', heat) + total_derivative(-a * ux + a.dx() * u, 'x', heat);
    EXPECT_TRUE(div.is_zero());
}

TEST(TotalDerivative, MixedPartialsCommute) {
    auto eq = eqn("1 + x^2", "t*x", "x");
    JetSystem sys(eq);
    Expr f = P("t*x") * Expr::var(ujet(1)) * Expr::var(ujet(0)) + P("exp(x)") * Expr::var(ujet(2));
    EXPECT_TRUE((sys.Dx(sys.Dt(f)) - sys.Dt(sys.Dx(f))).is_zero());
}

TEST(Symmetry, InvarianceResidualExamples) {
    auto heat = heat_equation();
    EXPECT_TRUE(invariance_residual(heat, PointOperator::parse("Dt")).is_zero());
    EXPECT_TRUE(invariance_residual(heat, PointOperator::parse("4*t^2*Dt + 4*t*x*Dx - (x^2 + 2*t)*w*Dw")).is_zero());
    Expr r = invariance_residual(eqn("1", "0", "-x"), PointOperator::parse("Dx"));
    EXPECT_TRUE((r - Expr::var(ujet(0))).is_zero() || (r + Expr::var(ujet(0))).is_zero()) << r.str();
}

TEST(Operator, ParseAndPrint) {
    auto q = PointOperator::parse("4*t^2*Dt + 4*t*x*Dx - (x^2 + 2*t)*w*Dw + x*Dw");
    EXPECT_EQ(q.tau, P("4*t^2"));
    EXPECT_EQ(q.zeta1, P("-x^2 - 2*t"));
    EXPECT_EQ(q.zeta0, Expr::x());
    auto back = PointOperator::parse(q.str());
    EXPECT_TRUE((back + q * Expr(-1)).is_zero());
    EXPECT_THROW(PointOperator::parse("w^2*Dw"), std::invalid_argument);
}

TEST(Equivalence, Examples) {
    EquivalenceTransformation tr{Expr::t(), Expr::x(), Expr::x(), Expr()};
    EXPECT_TRUE(same_equation(apply_equivalence(eqn("1", "2/x", "0"), tr), heat_equation()));
    EXPECT_TRUE(same_equation(apply_equivalence(eqn("1", "x", "1"), {}), eqn("1", "x", "1")));
    EquivalenceTransformation fp{P("exp(2*t)/2"), P("exp(t)*x"), P("exp(-t)"), Expr()};
    EXPECT_TRUE(same_equation(apply_equivalence(eqn("1", "x", "1"), fp), heat_equation()));
}

TEST(Equivalence, Inverses) {
    auto inv = invert_transformation({P("2*t"), Expr::x(), Expr(1), Expr()});
    EXPECT_EQ(inv.T, P("t/2"));
    inv = invert_transformation({Expr::t(), Expr::x(), Expr::x(), Expr()});
    EXPECT_EQ(inv.U1, P("1/x"));
    // ln(2t)/2 is outside the expression class
    EXPECT_THROW(invert_transformation({P("exp(2*t)/2"), P("exp(t)*x"), P("exp(-t)"), Expr()}), ClassError);
}

TEST(Equivalence, InverseRestoresCoefficients) {
    std::vector<std::pair<ParabolicEquation, EquivalenceTransformation>> cases{
        {eqn("1", "x", "1"), {P("3*t"), P("2*x + t"), P("x^2"), Expr()}},
        {heat_equation(), g0_transformation(Expr(2))},
        {eqn("x^2", "0", "0"), {Expr::t(), P("x^3"), Expr(1), Expr()}},
        {eqn("1", "0", "-2/x^2"), {P("t/(1 - t)"), P("x/(1 - t)"), Expr(1), Expr()}},
    };
    for (const auto& [eq, tr] : cases) {
        auto image = apply_equivalence(eq, tr);
        EXPECT_TRUE(same_equation(apply_equivalence(image, invert_transformation(tr)), eq)) << tr.str();
    }
}

TEST(Equivalence, RespectsComposition) {
    std::vector<std::tuple<ParabolicEquation, EquivalenceTransformation, EquivalenceTransformation>> cases{
        {heat_equation(), {P("4*t"), P("2*x"), Expr(1), Expr()}, g0_transformation(Expr(1))},
        {eqn("1", "x", "1"), {Expr::t(), P("x + t"), P("x"), Expr()}, {P("2*t"), P("x"), P("exp(t)"), Expr()}},
        {eqn("1", "2/x", "0"), {Expr::t(), Expr::x(), Expr::x(), Expr()}, {P("t/(1 + t)"), P("x/(1 + t)"), Expr(1), Expr()}},
        {eqn("x^2", "0", "0"), {Expr::t(), P("x^2"), Expr(1), Expr()}, {Expr::t(), P("4*x"), P("x"), Expr()}},
        {eqn("1", "0", "-x"), {Expr::t(), P("x - t^2"), P("exp(x*t)"), Expr()}, {P("t + 1"), P("x"), Expr(1), Expr()}},
    };
    for (const auto& [eq, tr1, tr2] : cases) {
        auto stepwise = apply_equivalence(apply_equivalence(eq, tr1), tr2);
        auto composed = apply_equivalence(eq, compose(tr2, tr1));
        EXPECT_TRUE(same_equation(stepwise, composed)) << tr1.str() << " then " << tr2.str();
    }
}

TEST(Equivalence, NonzeroU0NeedsSolution) {
    auto heat = heat_equation();
    EquivalenceTransformation ok{Expr::t(), Expr::x(), Expr(1), P("x^2 + 2*t")};
    EXPECT_TRUE(same_equation(apply_equivalence(heat, ok), heat));
    EquivalenceTransformation bad{Expr::t(), Expr::x(), Expr(1), P("x^3")};
    EXPECT_THROW(apply_equivalence(heat, bad), std::invalid_argument);
}

TEST(Equivalence, Validation) {
    EXPECT_THROW(validate_transformation({P("x*t"), Expr::x(), Expr(1), Expr()}), std::invalid_argument);
    EXPECT_THROW(validate_transformation({Expr(1), Expr::x(), Expr(1), Expr()}), std::invalid_argument);
}

TEST(Equivalence, GaugeToReduced) {
    auto eq = eqn("1", "2*x", "t");
    auto tr = gauge_to_reduced(eq);
    auto image = apply_equivalence(eq, tr);
    EXPECT_TRUE(image.A.is_one());
    EXPECT_TRUE(image.B.is_zero());
}

TEST(AdjointPair, Examples) {
    auto heat = heat_equation();
    auto q = adjoint_pair_prolong(op_Dt(), heat);
    EXPECT_TRUE(q.tau.is_one());
    EXPECT_TRUE(q.zeta1.is_zero());
    q = adjoint_pair_prolong(op_G(), heat);
    EXPECT_EQ(q.zeta1, Expr::x());
    EXPECT_TRUE(is_symmetry(adjoint(heat), q));
    q = adjoint_pair_prolong(op_D(), heat);
    EXPECT_EQ(q.zeta1, Expr(-1));
    EXPECT_THROW(adjoint_pair_prolong(PointOperator::parse("x*Dx"), heat), std::invalid_argument);
}

TEST(AdjointPair, EssentialHeatOperators) {
    auto heat = heat_equation();
    auto adj = adjoint(heat);
    for (const auto& [name, q] : essential_heat_operators()) {
        auto d = adjoint_pair_prolong(q, heat);
        EXPECT_TRUE((q.zeta1 + d.zeta1 + q.xi.dx()).is_zero()) << name;
        EXPECT_TRUE(is_symmetry(adj, d)) << name;
    }
}
