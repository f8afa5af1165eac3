#include "parapot/catalog.hpp"
#include "parapot/claws.hpp"
#include "parapot/frame.hpp"
#include "parapot/symmetry.hpp"
#include "invariant_oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace parapot;

namespace {

Expr P(const char* s) { return Expr::parse(s); }
Expr Pk(unsigned k) { return heat_polynomial(k); }
Expr u() { return Expr::var(ujet(0)); }
Expr v1() { return Expr::var(v_pot(1)); }

bool has_operator(const SymmetryClassification& c, const std::string& name) {
    for (const auto& o : c.operators)
        if (o.name == name) return true;
    return false;
}

}  // namespace

// ---------------------------------------------------------------- classification

TEST(Classify, CanonicalCases) {
    auto zero = classify_reduced(Expr());
    EXPECT_EQ(zero.tag, CaseTag::zero);
    EXPECT_EQ(zero.operators.size(), 5u);
    for (const char* n : {"Dt", "Dx", "G", "D", "Pi"}) EXPECT_TRUE(has_operator(zero, n)) << n;
    ASSERT_EQ(zero.trivial.size(), 1u);
    EXPECT_EQ(zero.trivial[0].name, "I");

    auto mu = classify_reduced(P("mu/x^2"));
    EXPECT_EQ(mu.tag, CaseTag::mu_x_minus_2);
    EXPECT_EQ(mu.operators.size(), 3u);
    for (const char* n : {"Dt", "D", "Pi"}) EXPECT_TRUE(has_operator(mu, n)) << n;
    EXPECT_EQ(mu.mu, P("mu"));

    auto gen = classify_reduced(Expr::x());
    EXPECT_EQ(gen.tag, CaseTag::generic_V_of_x);
    ASSERT_EQ(gen.operators.size(), 1u);
    EXPECT_EQ(gen.operators[0].name, "Dt");

    EXPECT_EQ(classify_reduced(P("x^2*t")).tag, CaseTag::unknown);
    EXPECT_TRUE(classify_reduced(P("x^2*t")).operators.empty());
    // no equivalence normalization: a shifted inverse square stays generic
    EXPECT_EQ(classify_reduced(P("2/(x + 2)^2")).tag, CaseTag::generic_V_of_x);
}

TEST(Classify, EveryOperatorIsASymmetry) {
    for (const char* V : {"0", "2/x^2", "mu/x^2", "x", "exp(x)", "1/(1 + x^2)", "-6/x^2"}) {
        Expr Ve = P(V);
        auto c = classify_reduced(Ve);
        auto eq = ParabolicEquation::reduced(Ve);
        for (const auto& o : c.operators) EXPECT_TRUE(invariance_residual(eq, o.op).is_zero()) << V << " " << o.name;
        for (const auto& o : c.trivial) EXPECT_TRUE(invariance_residual(eq, o.op).is_zero()) << V << " " << o.name;
    }
}

TEST(Classify, Labels) {
    EXPECT_STREQ(to_string(CaseTag::generic_V_of_x), "generic-V-of-x");
    EXPECT_STREQ(to_string(CaseTag::mu_x_minus_2), "mu-x-minus-2");
    EXPECT_STREQ(to_string(CaseTag::zero), "zero");
    EXPECT_STREQ(to_string(CaseTag::unknown), "unknown");
}

// ---------------------------------------------------------------- prolongation

TEST(ProlongSimplest, HeatAlphaOne) {
    auto q = prolong_simplest(op_G(), heat_equation(), Expr(1));
    EXPECT_EQ(q.eta, -Expr::x() * u() - v1());
    EXPECT_EQ(q.thetas[0], -Expr::x() * v1());
    EXPECT_TRUE(is_pure_potential(q, 0));
    auto dt = prolong_simplest(op_Dt(), heat_equation(), Expr(1));
    EXPECT_TRUE(dt.eta.is_zero());
    EXPECT_FALSE(is_pure_potential(dt, 0));
}

TEST(ProlongSimplest, HeatAlphaX) {
    auto pot = simplest_potential_equation(heat_equation(), Expr::x());
    EXPECT_TRUE(same_equation(pot, {Expr(1), P("-2/x"), Expr()}));
    auto pi2 = PointOperator::parse("4*t^2*Dt + 4*t*x*Dx - (x^2 - 2*t)*w*Dw");
    auto q = prolong_simplest(pi2, heat_equation(), Expr::x());
    EXPECT_EQ(q.eta, -P("x^2 + 6*t") * u() - 2 * v1());
    EXPECT_TRUE(is_pure_potential(q, 0));
    EXPECT_THROW(prolong_simplest(op_Pi(), heat_equation(), Expr::x()), std::invalid_argument);
    EXPECT_THROW(prolong_simplest(op_Dt(), heat_equation(), Expr::t()), std::invalid_argument);
}

TEST(ProlongSimplest, FixturesReproduced) {
    for (const auto& name : fixture_names()) {
        auto fx = fixture(name);
        for (const auto& o : fx.operators) {
            auto q = prolong_simplest(o.op, fx.equation, fx.alpha);
            EXPECT_TRUE((q.eta - o.eta).is_structural_zero()) << name << ": " << o.op.str();
        }
    }
}

TEST(ProlongSimplest, TrivialOperatorStaysTrivial) {
    for (const auto& c : catalog_characteristic_pairs()) {
        auto q = prolong_simplest(op_I(), c.eq, c.alpha);
        EXPECT_EQ(q.eta, u()) << c.label;
        EXPECT_FALSE(is_pure_potential(q, 0)) << c.label;
    }
}

TEST(ProlongFrame, AgreesWithSimplestAtOrderOne) {
    for (const auto& c : catalog_characteristic_pairs()) {
        auto fr = build_frame(c.eq, {c.alpha});
        auto lvl = p_level_potential_equation(fr);
        for (const auto& Q : {op_I(), PointOperator{Expr(), Expr(), Expr(), Expr(1)}}) {
            ASSERT_TRUE(is_symmetry(lvl, Q));
            auto a = prolong_frame(Q, fr);
            auto b = prolong_simplest(Q, c.eq, c.alpha);
            // f^1 = v^1 here because H^1 = alpha and f^1_x = alpha u
            EXPECT_TRUE((a.eta - b.eta.subs(v_pot(1), Expr::var(f_pot(1)))).is_zero()) << c.label;
        }
    }
}

TEST(ProlongFrame, HeatOneXPiType) {
    auto fr = build_frame(heat_equation(), {Expr(1), Expr::x()});
    auto lvl = p_level_potential_equation(fr);
    EXPECT_TRUE(same_equation(lvl, heat_equation()));
    auto q = prolong_frame(op_Pi(), fr);
    for (const auto& r : system_invariance_residuals(potential_system_f(fr), q)) EXPECT_TRUE(r.is_zero());
    // triangular: theta^s involves only f^sigma with sigma >= s
    for (size_t s = 1; s <= 2; ++s)
        for (size_t sg = 1; sg < s; ++sg) EXPECT_FALSE(q.thetas[s - 1].depends_on(f_pot(sg)));
    EXPECT_TRUE(is_pure_potential(q, 0));
}

TEST(ProlongFrame, TimeShiftExtendsByZero) {
    for (const auto& c : catalog_frames()) {
        auto fr = build_frame(c.eq, c.alphas);
        bool stationary = true;
        for (size_t s = 1; s <= fr.p(); ++s) stationary = stationary && fr.H[s].dt().is_zero();
        auto lvl = p_level_potential_equation(fr);
        if (!stationary || !is_symmetry(lvl, op_Dt())) continue;
        auto q = prolong_frame(op_Dt(), fr);
        EXPECT_TRUE(q.eta.is_zero()) << c.label;
        for (const auto& th : q.thetas) EXPECT_TRUE(th.is_zero()) << c.label;
    }
}

TEST(ProlongFrame, RejectsNonSymmetry) {
    auto fr = build_frame(heat_equation(), {Expr(1), P("x^2 - 2*t")});
    EXPECT_THROW(prolong_frame(op_Dx(), fr), std::invalid_argument);
}

TEST(ProlongFrame, SystemInvarianceOnCatalog) {
    // every classified operator of the top level, moved to f^p, prolongs to a symmetry of the full system
    int checked = 0;
    for (const auto& c : catalog_frames()) {
        auto fr = build_frame(c.eq, c.alphas);
        auto top = modified_potential_equation(fr, fr.p());
        if (!top.is_reduced_form()) continue;
        auto cls = classify_reduced(-top.C);
        for (const auto& o : cls.operators) {
            auto q = prolong_frame(w_operator_to_f(o.op, fr), fr);
            for (const auto& r : system_invariance_residuals(potential_system_f(fr), q))
                EXPECT_TRUE(r.is_zero()) << c.label << " " << o.name;
            ++checked;
        }
    }
    EXPECT_GT(checked, 5);
}

// ---------------------------------------------------------------- induced action

TEST(EigenTest, Examples) {
    auto heat = heat_equation();
    auto r = eigen_test(op_Dt(), Expr(1), heat);
    EXPECT_TRUE(r.eigenfunction);
    EXPECT_TRUE(r.lambda.is_zero());
    EXPECT_FALSE(eigen_test(op_Pi(), Expr(1), heat).eigenfunction);
    EXPECT_EQ(induced_action(op_Pi(), Expr(1)), P("-x^2 - 2*t"));
    r = eigen_test(op_Dx(), P("exp(x + t)"), heat);
    EXPECT_TRUE(r.eigenfunction);
    EXPECT_EQ(r.lambda, Expr(-1));
    EXPECT_THROW(eigen_test(op_Dt(), P("x^3"), heat), std::invalid_argument);
}

TEST(StableSubspace, Examples) {
    auto heat = heat_equation();
    EXPECT_EQ(stable_invariant_subspace(op_Dt(), {Pk(0)}, heat).size(), 1u);
    EXPECT_EQ(stable_invariant_subspace(op_Dx(), {Pk(0), Pk(1)}, heat).size(), 2u);
    EXPECT_TRUE(stable_invariant_subspace(op_Pi(), {Pk(0)}, heat).empty());
    // G maps P1 to -x^2 - 2t and fixes nothing but the line of P0? G'[1] = -x, so no invariant line either
    EXPECT_TRUE(stable_invariant_subspace(op_G(), {Pk(0), Pk(2)}, heat).empty());
    auto line = stable_invariant_subspace(op_Dx(), {Pk(0), Pk(2)}, heat);
    ASSERT_EQ(line.size(), 1u);
    EXPECT_EQ(constant_relations({line[0], Pk(0)}).size(), 1u);
}

TEST(StrictOrder, Examples) {
    auto heat = heat_equation();
    EXPECT_TRUE(strictly_p_order(op_Pi(), {Pk(0)}, heat));
    EXPECT_TRUE(strictly_p_order(op_Pi(), {Pk(0), Pk(1)}, heat));
    EXPECT_FALSE(strictly_p_order(op_Dx(), {Pk(0), Pk(1)}, heat));
    EXPECT_FALSE(strictly_p_order(op_Dt(), {Pk(0)}, heat));
    EXPECT_TRUE(strictly_p_order(op_G(), {Pk(0)}, heat));
}

TEST(InvariantSubspace, Examples) {
    ExprMatrix M{{0, 1}, {0, 0}};
    auto S = largest_invariant_subspace(M, ExprMatrix(0, 2));
    EXPECT_EQ(S.cols(), 2u);
    S = largest_invariant_subspace(M, ExprMatrix{{1, 0}});
    EXPECT_EQ(S.cols(), 0u);
    S = largest_invariant_subspace(M, ExprMatrix{{0, 1}});
    ASSERT_EQ(S.cols(), 1u);
    EXPECT_TRUE(S(1, 0).is_zero());
    // rotation by 90 degrees has an invariant plane but no invariant line
    ExprMatrix R{{0, -1, 0}, {1, 0, 0}, {0, 0, 2}};
    S = largest_invariant_subspace(R, ExprMatrix{{0, 0, 1}});
    EXPECT_EQ(S.cols(), 2u);
}

TEST(InvariantSubspace, AgreesWithBruteForceOracle) {
    std::mt19937_64 rng(20);
    int nonempty = 0, empty = 0;
    for (int trial = 0; trial < 20; ++trial) {
        auto c = oracle::planted_case(rng, trial);
        auto S = largest_invariant_subspace(oracle::to_expr(c.M, c.n), oracle::to_expr(c.E, c.n));
        auto v = oracle::compare(c, S);
        EXPECT_TRUE(v.same_space) << "trial " << trial;
        EXPECT_TRUE(v.contains_planted) << "trial " << trial;
        EXPECT_TRUE(v.emptiness_agrees) << "trial " << trial;
        (v.nonempty ? nonempty : empty)++;
    }
    EXPECT_GT(nonempty, 0);
    EXPECT_GT(empty, 0);
}

TEST(InducedMatrix, HeatPiOnP0P1) {
    auto im = induced_matrix(op_Pi(), {Pk(0), Pk(1)}, heat_equation());
    EXPECT_EQ(im.M.rows(), 2u);
    EXPECT_EQ(im.extra.size(), 2u);
    for (size_t j = 0; j < 2; ++j) {
        bool outside = false;
        for (size_t i = 0; i < im.E.rows(); ++i) outside = outside || !im.E(i, j).is_zero();
        EXPECT_TRUE(outside);
    }
}

// ---------------------------------------------------------------- reports

TEST(Report, HeatSingleCharacteristics) {
    auto heat = heat_equation();
    for (const Expr& a : {Expr(1), Expr::x()}) {
        auto r = potential_symmetry_report(heat, {a});
        EXPECT_TRUE(r.decided);
        EXPECT_TRUE(r.exists) << a.str();
        EXPECT_NE(std::find(r.generators.begin(), r.generators.end(), "Pi-type"), r.generators.end());
    }
    auto r = potential_symmetry_report(heat, {Expr(1)});
    EXPECT_EQ(r.summary(), "pure potential symmetries: YES; generators: Pi-type, G-type");
    EXPECT_EQ(r.tag, CaseTag::zero);
}

TEST(Report, ExponentialCharacteristicMapsOntoOne) {
    auto heat = heat_equation();
    for (long d : {1L, -2L, 3L}) {
        Expr delta(d);
        Expr a = Expr::exp_of(delta * Expr::x() - delta * delta * Expr::t());
        ASSERT_TRUE(verify_characteristic(heat, a));
        auto tr = g0_transformation(delta);
        ASSERT_TRUE(same_equation(apply_equivalence(heat, tr), heat));
        Expr image = transform_characteristic(heat, a, tr);
        EXPECT_TRUE(image.as_rational().has_value()) << image.str();
        auto r = potential_symmetry_report(heat, {a});
        auto r1 = potential_symmetry_report(heat, {Expr(1)});
        EXPECT_TRUE(r.exists);
        EXPECT_EQ(r.generators.size(), r1.generators.size() + 1);
    }
}

TEST(Report, UndecidedAndUnknown) {
    auto heat = heat_equation();
    auto r = potential_symmetry_report(heat, {P("exp(x - t) + exp(-x - t)")});
    EXPECT_EQ(r.tag, CaseTag::generic_V_of_x);
    EXPECT_FALSE(r.decided);
    EXPECT_FALSE(r.exists);
    EXPECT_EQ(r.note, "sufficient-condition only");
    r = potential_symmetry_report(heat, {P("x^2 - 2*t")});
    EXPECT_EQ(r.tag, CaseTag::unknown);
    EXPECT_FALSE(r.decided);
    EXPECT_EQ(r.summary(), "undecided: supply reducing transformation");
}

TEST(Report, FrameOrderTwo) {
    auto r = potential_symmetry_report(heat_equation(), {Expr(1), P("x^2 - 2*t")});
    EXPECT_EQ(r.tag, CaseTag::mu_x_minus_2);
    EXPECT_TRUE(r.decided);
    ASSERT_EQ(r.psis.size(), 2u);
    EXPECT_TRUE(same_equation(r.level_equation, mu_equation(Expr(2))));
}

TEST(Reproduction, SingleSeedHeatCriterion) {
    // pure potential symmetries through a single characteristic of the heat equation exist exactly when
    // the characteristic normalizes to 1 or x
    struct Case {
        Expr alpha;
        EquivalenceTransformation normalize;
        bool expected;
    };
    std::vector<Case> cases{
        {Expr(1), {}, true},
        {Expr::x(), {}, true},
        {P("exp(x - t)"), g0_transformation(Expr(1)), true},
        {P("x + 3"), {Expr::t(), P("x + 3"), Expr(1), Expr()}, true},
        {P("exp(x - t) + exp(-x - t)"), {}, false},
        {P("exp(x - t) - exp(-x - t)"), {}, false},
    };
    auto heat = heat_equation();
    for (const auto& c : cases) {
        Expr a = transform_characteristic(heat, c.alpha, c.normalize);
        auto eq = apply_equivalence(heat, c.normalize);
        ASSERT_TRUE(same_equation(eq, heat));
        auto fr = build_frame(eq, {a});
        auto level = modified_potential_equation(fr, 1);
        ASSERT_TRUE(level.is_reduced_form());
        auto cls = classify_reduced(-level.C);
        ASSERT_NE(cls.tag, CaseTag::unknown) << c.alpha.str();
        bool strict = false;
        for (const auto& o : cls.operators) strict = strict || strictly_p_order(o.op, w_solutions(fr, 1), level);
        EXPECT_EQ(strict, c.expected) << c.alpha.str();
        bool normalized = a.as_rational().has_value() || (a / Expr::x()).as_rational().has_value();
        EXPECT_EQ(normalized, c.expected) << c.alpha.str();
    }
}
