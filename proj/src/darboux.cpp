#include "parapot/darboux.hpp"

#include <stdexcept>

namespace parapot {

DarbouxSeed DarbouxSeed::make(const ParabolicEquation& source, const FunctionTuple& psis) {
    if (psis.empty()) throw std::invalid_argument("seed tuple is empty");
    if (psis.size() > kDefaultPMax) throw std::invalid_argument("seed tuple longer than the configured bound");
    for (const auto& psi : psis)
        if (!is_solution(source, psi)) throw std::invalid_argument(psi.str() + " does not solve the source equation");
    if (is_linearly_independent(psis, &source) != Dependence::independent)
        throw std::invalid_argument("seed functions are linearly dependent");
    return {psis, source};
}

Expr dt_apply(const Expr& psi, const Expr& w) {
    if (psi.is_zero()) throw std::invalid_argument("seed function must be nonzero");
    return w.dx() - psi.dx() / psi * w;
}

Expr crum_apply(const FunctionTuple& psis, const Expr& w) {
    FunctionTuple all = psis;
    all.push_back(w);
    return wronskian(all) / wronskian(psis);
}

Expr crum_apply(const DarbouxSeed& seed, const Expr& w) { return crum_apply(seed.psis, w); }

Expr crum_apply_stepwise(const FunctionTuple& psis, const Expr& w) {
    FunctionTuple cur = psis;
    Expr img = w;
    for (size_t s = 0; s < cur.size(); ++s) {
        const Expr seed = cur[s];
        img = dt_apply(seed, img);
        for (size_t j = s + 1; j < cur.size(); ++j) cur[j] = dt_apply(seed, cur[j]);
    }
    return img;
}

ParabolicEquation dt_target_by_elimination(const ParabolicEquation& source, const Expr& psi) {
    JetSystem sys(source);
    Expr rho = psi.dx() / psi;
    Var w0 = ujet(0), w1 = ujet(1), w2 = ujet(2);
    Expr img = Expr::var(w1) - rho * Expr::var(w0);
    Expr img_x = sys.Dx(img);
    Expr r0 = sys.Dt(img) - source.A * sys.Dx(img_x);
    if (!r0.diff(ujet(3)).is_zero()) throw InternalError("third-order term survived elimination");
    ParabolicEquation target;
    target.A = source.A;
    target.B = r0.diff(w2);
    target.C = r0.diff(w1) + rho * target.B;
    Expr rest = r0 - target.B * img_x - target.C * img;
    if (!rest.is_zero()) throw InternalError("elimination left a residual: " + rest.str());
    return target;
}

namespace {

ParabolicEquation crum_closed_form(const ParabolicEquation& eq, const FunctionTuple& psis) {
    const long s = static_cast<long>(psis.size());
    Expr W = wronskian(psis);
    Expr lw = W.dx() / W;
    Expr Ax = eq.A.dx();
    ParabolicEquation out;
    out.A = eq.A;
    out.B = eq.B + s * Ax;
    out.C = eq.C + s * out.B.dx() - rat(s * (s + 1), 2) * Ax.dx() + Ax * lw + 2 * eq.A * lw.dx();
    return out;
}

}  // namespace

ParabolicEquation dt_target_equation(const DarbouxSeed& seed) {
    if (seed.psis.size() != 1) throw std::invalid_argument("single transformation needs one seed function");
    ParabolicEquation elim = dt_target_by_elimination(seed.source, seed.psis[0]);
    if (!same_equation(elim, crum_closed_form(seed.source, seed.psis)))
        throw InternalError("elimination and closed form disagree");
    return elim;
}

ParabolicEquation crum_target_equation(const DarbouxSeed& seed) { return crum_closed_form(seed.source, seed.psis); }

ParabolicEquation crum_target_iterated(const DarbouxSeed& seed) {
    ParabolicEquation eq = seed.source;
    FunctionTuple cur = seed.psis;
    for (size_t s = 0; s < cur.size(); ++s) {
        eq = dt_target_by_elimination(eq, cur[s]);
        for (size_t j = s + 1; j < cur.size(); ++j) cur[j] = dt_apply(cur[s], cur[j]);
    }
    return eq;
}

FunctionTuple dual_characteristics(const DarbouxSeed& seed) {
    const auto& p = seed.psis;
    Expr W = wronskian(p);
    FunctionTuple out;
    for (size_t k = 0; k < p.size(); ++k) {
        FunctionTuple rest;
        for (size_t j = 0; j < p.size(); ++j)
            if (j != k) rest.push_back(p[j]);
        Expr a = wronskian(rest) / W;
        out.push_back(k % 2 == 0 ? a : -a);
    }
    return out;
}

Checks verify_dt_solution_map(const DarbouxSeed& seed, const FunctionTuple& tests) {
    Checks out;
    ParabolicEquation target = crum_target_equation(seed);
    for (size_t i = 0; i < tests.size(); ++i) {
        std::string tag = "test " + std::to_string(i + 1);
        Expr src = apply_operator(seed.source, tests[i]);
        if (!src.is_zero()) {
            out.push_back({tag + " solves source", false, src.str()});
            continue;
        }
        out.push_back(zero_check(tag + " image solves target", apply_operator(target, crum_apply(seed, tests[i]))));
    }
    for (size_t i = 0; i < seed.psis.size(); ++i)
        out.push_back(zero_check("seed " + std::to_string(i + 1) + " maps to zero", crum_apply(seed, seed.psis[i])));
    return out;
}

}  // namespace parapot
