#include "parapot/catalog.hpp"
#include "parapot/claws.hpp"

#include <gtest/gtest.h>

using namespace parapot;

namespace {

Expr P(const char* s) { return Expr::parse(s); }
ParabolicEquation eqn(const char* A, const char* B, const char* C) { return {P(A), P(B), P(C)}; }
Expr u() { return Expr::var(ujet(0)); }
Expr ux() { return Expr::var(ujet(1)); }

}  // namespace

TEST(Characteristic, Examples) {
    auto heat = heat_equation();
    EXPECT_TRUE(verify_characteristic(heat, Expr(1)));
    EXPECT_TRUE(verify_characteristic(heat, Expr::x()));
    EXPECT_FALSE(verify_characteristic(heat, Expr::t()));
    EXPECT_TRUE(characteristic_residual(heat, Expr::t()).is_one());
}

TEST(ConservedVector, Canonical) {
    auto heat = heat_equation();
    auto cv = canonical_conserved_vector(heat, Expr(1));
    EXPECT_EQ(cv.F, u());
    EXPECT_EQ(cv.G, -ux());
    cv = canonical_conserved_vector(heat, Expr::x());
    EXPECT_EQ(cv.F, Expr::x() * u());
    EXPECT_TRUE((cv.G - (-Expr::x() * ux() + u())).is_zero());
    cv = canonical_conserved_vector(eqn("1", "x", "1"), Expr(1));
    EXPECT_TRUE((cv.G - (-ux() - Expr::x() * u())).is_zero());
    EXPECT_THROW(canonical_conserved_vector(heat, Expr::t()), std::invalid_argument);
}

TEST(ConservedVector, DivergenceResidualExamples) {
    auto heat = heat_equation();
    EXPECT_TRUE(divergence_residual(canonical_conserved_vector(heat, Expr(1)), heat).is_zero());
    EXPECT_EQ(divergence_residual({u(), Expr()}, heat), Expr::var(ujet(2)));
    auto fp = eqn("1", "x", "1");
    EXPECT_TRUE(divergence_residual(canonical_conserved_vector(fp, Expr(1)), fp).is_zero());
}

TEST(ConservedVector, CatalogPairsConserved) {
    auto pairs = catalog_characteristic_pairs();
    ASSERT_GE(pairs.size(), 8u);
    for (const auto& p : pairs) {
        ASSERT_TRUE(verify_characteristic(p.eq, p.alpha)) << p.label;
        auto cv = canonical_conserved_vector(p.eq, p.alpha);
        EXPECT_TRUE(divergence_residual(cv, p.eq).is_structural_zero()) << p.label;
        EXPECT_TRUE((cv_characteristic(cv) - p.alpha).is_zero()) << p.label;
    }
}

TEST(ConservedVector, Equivalence) {
    auto heat = heat_equation();
    auto a = canonical_conserved_vector(heat, Expr::x());
    // adding a trivial conserved vector (D_x h, -D_t h) with h = x u_x
    JetSystem sys(heat);
    Expr h = Expr::x() * ux();
    ConservedVector b{a.F + sys.Dx(h), a.G - sys.Dt(h)};
    EXPECT_TRUE(equivalent_conserved_vectors(a, b, heat));
    EXPECT_FALSE(equivalent_conserved_vectors(a, canonical_conserved_vector(heat, Expr(1)), heat));
}

TEST(TransformCharacteristic, Examples) {
    auto heat = heat_equation();
    EXPECT_EQ(transform_characteristic(heat, Expr::x(), {}), Expr::x());
    EquivalenceTransformation tr{Expr::t(), Expr::x(), Expr::x(), Expr()};
    EXPECT_TRUE(transform_characteristic(eqn("1", "2/x", "0"), Expr::x(), tr).is_one());
    // heat characteristic x corresponds to exp(t) x of the Fokker-Planck equation
    EquivalenceTransformation fp{P("exp(2*t)/2"), P("exp(t)*x"), P("exp(-t)"), Expr()};
    EXPECT_TRUE((pullback_characteristic(Expr::x(), fp) - P("exp(t)*x")).is_zero());
}

TEST(TransformCharacteristic, InverseRoundTrip) {
    std::vector<std::tuple<ParabolicEquation, Expr, EquivalenceTransformation>> cases{
        {heat_equation(), Expr::x(), g0_transformation(Expr(1))},
        {heat_equation(), P("x^2/2 - t"), {P("4*t"), P("2*x"), Expr(1), Expr()}},
        {eqn("1", "x", "1"), P("exp(t)*x"), {Expr::t(), P("x + t"), P("x^2"), Expr()}},
    };
    for (const auto& [eq, a, tr] : cases) {
        Expr img = transform_characteristic(eq, a, tr);
        Expr back = transform_characteristic(apply_equivalence(eq, tr), img, invert_transformation(tr));
        EXPECT_TRUE((back - a).is_zero()) << tr.str();
        EXPECT_TRUE((pullback_characteristic(img, tr) - a).is_zero()) << tr.str();
    }
}

TEST(TransformConservedVector, Examples) {
    auto heat = heat_equation();
    auto cv = canonical_conserved_vector(heat, Expr(1));
    auto same = transform_conserved_vector(cv, {});
    EXPECT_TRUE((same.F - cv.F).is_zero());
    EXPECT_TRUE((same.G - cv.G).is_zero());
    EquivalenceTransformation scale{P("4*t"), P("2*x"), Expr(1), Expr()};
    auto img = transform_conserved_vector(cv, scale);
    EXPECT_TRUE(divergence_residual(img, apply_equivalence(heat, scale)).is_zero());
    auto eq = eqn("1", "2/x", "0");
    EquivalenceTransformation tr{Expr::t(), Expr::x(), Expr::x(), Expr()};
    auto t2 = transform_conserved_vector(canonical_conserved_vector(eq, Expr::x()), tr);
    EXPECT_TRUE(equivalent_conserved_vectors(t2, canonical_conserved_vector(heat, Expr(1)), heat));
}

TEST(SymmetryAction, Examples) {
    auto heat = heat_equation();
    Expr a = P("x^2 - 2*t");
    auto cv = canonical_conserved_vector(heat, a);
    auto img = symmetry_action_on_cv(cv, op_Dt(), heat);
    EXPECT_TRUE(equivalent_conserved_vectors(img, canonical_conserved_vector(heat, Expr(2)), heat));
    auto one = canonical_conserved_vector(heat, Expr(1));
    img = symmetry_action_on_cv(one, op_I(), heat);
    EXPECT_TRUE((img.F + one.F).is_zero());
    EXPECT_TRUE((img.G + one.G).is_zero());
    img = symmetry_action_on_cv(one, PointOperator{}, heat);
    EXPECT_TRUE(img.F.is_zero());
    EXPECT_TRUE(img.G.is_zero());
}

TEST(SymmetryAction, ShiftsGiveDerivativeCharacteristics) {
    auto heat = heat_equation();
    for (const char* s : {"x^2/2 - t", "x^3/6 - t*x", "exp(x - t)", "x"}) {
        Expr a = P(s);
        auto cv = canonical_conserved_vector(heat, a);
        auto dt = symmetry_action_on_cv(cv, op_Dt(), heat);
        auto dx = symmetry_action_on_cv(cv, op_Dx(), heat);
        EXPECT_TRUE((cv_characteristic(dt) + a.dt()).is_zero()) << s;
        EXPECT_TRUE((cv_characteristic(dx) + a.dx()).is_zero()) << s;
        EXPECT_TRUE(divergence_residual(dt, heat).is_zero());
        EXPECT_TRUE(divergence_residual(dx, heat).is_zero());
    }
}
