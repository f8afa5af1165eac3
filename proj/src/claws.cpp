#include "parapot/claws.hpp"

#include <stdexcept>

namespace parapot {

Expr characteristic_residual(const ParabolicEquation& eq, const Expr& alpha) {
    return apply_operator(adjoint(eq), alpha);
}

bool verify_characteristic(const ParabolicEquation& eq, const Expr& alpha) {
    return characteristic_residual(eq, alpha).is_zero();
}

ConservedVector canonical_conserved_vector(const ParabolicEquation& eq, const Expr& alpha) {
    if (!verify_characteristic(eq, alpha))
        throw std::invalid_argument("not a characteristic: " + alpha.str() + " does not solve the adjoint equation");
    Expr u = Expr::var(ujet(0)), ux = Expr::var(ujet(1));
    Expr aA = alpha * eq.A;
    return {alpha * u, -aA * ux + (aA.dx() - alpha * eq.B) * u};
}

Expr divergence_residual(const ConservedVector& cv, const ParabolicEquation& eq) {
    JetSystem sys(eq);
    return sys.Dt(cv.F) + sys.Dx(cv.G);
}

Expr cv_characteristic(const ConservedVector& cv) {
    JetSystem sys(heat_equation());
    Expr out;
    int r = max_jet_order(cv.F);
    for (int k = 0; k <= r; ++k) {
        Expr term = sys.Dx(cv.F.diff(ujet(k)), static_cast<unsigned>(k));
        out = (k % 2 == 0) ? out + term : out - term;
    }
    return out;
}

bool equivalent_conserved_vectors(const ConservedVector& a, const ConservedVector& b,
                                  const ParabolicEquation& eq) {
    if (!divergence_residual(a, eq).is_zero() || !divergence_residual(b, eq).is_zero()) return false;
    return (cv_characteristic(a) - cv_characteristic(b)).is_zero();
}

Expr transform_characteristic(const ParabolicEquation& eq, const Expr& alpha,
                              const EquivalenceTransformation& tr) {
    if (!verify_characteristic(eq, alpha)) throw std::invalid_argument("not a characteristic of the equation");
    Expr old = alpha / (tr.X.dx() * tr.U1);
    Expr out = to_new_variables(old, tr);
    ParabolicEquation image = apply_equivalence(eq, tr);
    if (!verify_characteristic(image, out))
        throw InternalError("transformed characteristic fails on the image equation");
    return out;
}

Expr pullback_characteristic(const Expr& alpha_new, const EquivalenceTransformation& tr) {
    return tr.X.dx() * tr.U1 * pull_back(alpha_new, tr);
}

ConservedVector transform_conserved_vector(const ConservedVector& cv, const EquivalenceTransformation& tr) {
    validate_transformation(tr);
    if (!tr.U0.is_zero()) throw std::invalid_argument("conserved vector transformation needs U0 = 0");
    int r = std::max(max_jet_order(cv.F), max_jet_order(cv.G));
    std::vector<Var> tmp;
    for (int k = 0; k <= r + 1; ++k) tmp.push_back(sym("__nu" + std::to_string(k)));
    Expr Xx = tr.X.dx();
    // total x-derivative acting on functions of (t, x, new jets)
    auto D = [&](const Expr& e) {
        Expr out = e.dx();
        for (int k = 0; k < r + 1; ++k)
            if (e.depends_on(tmp[k])) out += Xx * e.diff(tmp[k]) * Expr::var(tmp[k + 1]);
        return out;
    };
    Bindings old_jets;
    Expr cur = Expr::var(tmp[0]) / tr.U1;
    for (int k = 0; k <= r; ++k) {
        old_jets.emplace(ujet(k), cur);
        if (k < r) cur = D(cur);
    }
    Expr F = cv.F.subs(old_jets);
    Expr G = cv.G.subs(old_jets);
    Expr Tt = tr.T.dt();
    Expr Fn = F / Xx;
    Expr Gn = (tr.X.dt() * F + Xx * G) / (Tt * Xx);
    Fn = to_new_variables(Fn, tr);
    Gn = to_new_variables(Gn, tr);
    Bindings rename;
    for (int k = 0; k <= r + 1; ++k) rename.emplace(tmp[k], Expr::var(ujet(k)));
    return {Fn.subs(rename), Gn.subs(rename)};
}

ConservedVector symmetry_action_on_cv(const ConservedVector& cv, const PointOperator& Q,
                                      const ParabolicEquation& eq) {
    if (!is_symmetry(eq, Q)) throw std::invalid_argument("operator is not a Lie symmetry of the equation");
    JetSystem sys(eq);
    Expr phi = Q.zeta1 * Expr::var(ujet(0)) + Q.zeta0 - Q.tau * sys.ut(0) - Q.xi * Expr::var(ujet(1));
    auto apply_Q = [&](const Expr& f) {
        Expr out = Q.tau * sys.Dt(f) + Q.xi * sys.Dx(f);
        int r = max_jet_order(f);
        Expr dphi = phi;
        for (int k = 0; k <= r; ++k) {
            if (f.depends_on(ujet(k))) out += dphi * f.diff(ujet(k));
            if (k < r) dphi = sys.Dx(dphi);
        }
        return out;
    };
    ConservedVector out;
    out.F = -apply_Q(cv.F) + Q.tau.dx() * cv.G - Q.xi.dx() * cv.F;
    out.G = -apply_Q(cv.G) + Q.xi.dt() * cv.F - Q.tau.dt() * cv.G;
    return out;
}

}  // namespace parapot
