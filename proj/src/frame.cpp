#include "parapot/frame.hpp"

#include "parapot/claws.hpp"
#include "parapot/darboux.hpp"

#include <random>
#include <stdexcept>

namespace parapot {

namespace {

std::string idx(size_t s) { return std::to_string(s); }
std::string idx(size_t s, size_t t) { return std::to_string(s) + "," + std::to_string(t); }

FunctionTuple prefix(const FunctionTuple& a, size_t n) { return FunctionTuple(a.begin(), a.begin() + n); }

Expr closed_form_C(const ParabolicEquation& eq, const Expr& Ws, long s) {
    Expr Ax = eq.A.dx();
    Expr lw = Ws.dx() / Ws;
    return eq.C - s * eq.B.dx() + rat(s * (s + 1), 2) * Ax.dx() + Ax * lw + 2 * eq.A * lw.dx();
}

}  // namespace

// u itself carries the zero-order coefficient C, the potentials f^s do not
Expr conservation_defect(const PotentialFrame& fr, size_t s) {
    return s == 1 ? fr.equation.C * fr.H[1] : Expr();
}

const Expr& PotentialFrame::W(int s) const {
    static const Expr one(1);
    if (s < 0) return one;
    return wronskians.at(s);
}

const Expr& PotentialFrame::beta(int s, int sigma) const { return betas.at(s + 1).at(sigma); }

Var v_pot(size_t s) { return sym("v" + idx(s)); }
Var f_pot(size_t s) { return sym("f" + idx(s)); }
Var w_pot(size_t s) { return sym("w" + idx(s)); }

PotentialFrame build_frame(const ParabolicEquation& eq, const FunctionTuple& alphas) {
    const size_t p = alphas.size();
    if (p == 0) throw std::invalid_argument("at least one characteristic is required");
    if (p > kDefaultPMax) throw std::invalid_argument("characteristic tuple longer than the configured bound");
    for (size_t i = 0; i < p; ++i)
        if (!verify_characteristic(eq, alphas[i]))
            throw std::invalid_argument("alpha" + idx(i + 1) + " = " + alphas[i].str() + " is not a characteristic");

    PotentialFrame fr;
    fr.equation = eq;
    fr.alphas = alphas;
    for (size_t s = 0; s <= p; ++s) fr.wronskians.push_back(wronskian(prefix(alphas, s)));
    if (fr.wronskians[p].is_zero()) throw std::invalid_argument("characteristics are linearly dependent");

    fr.betas.assign(p + 1, std::vector<Expr>(p + 1));
    for (size_t sg = 0; sg <= p; ++sg) fr.betas[0][sg] = Expr(1);
    for (size_t s = 0; s < p; ++s)
        for (size_t sg = s + 1; sg <= p; ++sg) {
            FunctionTuple f = prefix(alphas, s);
            f.push_back(alphas[sg - 1]);
            fr.betas[s + 1][sg] = wronskian(f) / fr.wronskians[s];
        }

    const Expr& A = eq.A;
    fr.levelB.push_back(eq.B);
    fr.levelC.push_back(eq.C);
    fr.H.assign(p + 1, Expr());
    fr.G.assign(p + 1, Expr());
    fr.wsols.assign(p + 1, {});
    for (size_t s = 1; s <= p; ++s) {
        const int si = static_cast<int>(s);
        const Expr& b = fr.beta(si - 1, si);
        const Expr& bprev = fr.beta(si - 2, si - 1);
        fr.H[s] = b / bprev;
        fr.G[s] = (fr.H[s] * A).dx() - fr.H[s] * fr.levelB[s - 1] + 2 * fr.H[s] * A * bprev.dx() / bprev;
        Expr lb = b.dx() / b;
        fr.levelB.push_back(fr.levelB[s - 1] - A.dx());
        fr.levelC.push_back(fr.levelC[s - 1] - fr.levelB[s - 1].dx() + A.dx(2) + A.dx() * lb + 2 * A * lb.dx());
        FunctionTuple ws;
        for (size_t k = 0; k < s; ++k) {
            FunctionTuple rest;
            for (size_t j = 0; j < s; ++j)
                if (j != k) rest.push_back(alphas[j]);
            Expr w = wronskian(rest) / fr.wronskians[s];
            ws.push_back(k % 2 == 0 ? w : -w);
        }
        fr.wsols[s] = ws;
    }

    // type invariants
    for (size_t s = 1; s <= p; ++s) {
        const int si = static_cast<int>(s);
        if (!(fr.H[s] - fr.W(si) * fr.W(si - 2) / fr.W(si - 1).pow(2)).is_zero())
            throw InternalError("H" + idx(s) + " Wronskian form mismatch");
        if (!(fr.H[s].dt() + fr.G[s].dx() + conservation_defect(fr, s)).is_zero())
            throw InternalError("H" + idx(s) + "_t + G" + idx(s) + "_x mismatch");
        if (!(fr.levelB[s] - (eq.B - static_cast<long>(s) * A.dx())).is_zero())
            throw InternalError("B" + idx(s) + " closed form mismatch");
        if (!(fr.levelC[s] - closed_form_C(eq, fr.W(si), static_cast<long>(s))).is_zero())
            throw InternalError("C" + idx(s) + " closed form mismatch");
        if (!(wronskian(fr.wsols[s]) * fr.W(si) - 1).is_zero())
            throw InternalError("Wronskian product identity fails at level " + idx(s));
    }
    return fr;
}

ParabolicEquation modified_potential_equation(const PotentialFrame& fr, size_t s) {
    if (s > fr.p()) throw std::out_of_range("level exceeds frame order");
    return {fr.equation.A, fr.levelB[s], fr.levelC[s]};
}

const FunctionTuple& w_solutions(const PotentialFrame& fr, size_t s) {
    if (s < 1 || s > fr.p()) throw std::out_of_range("level must be in 1..p");
    return fr.wsols[s];
}

JetSystem potential_system_v(const PotentialFrame& fr) {
    const auto& eq = fr.equation;
    Expr u = Expr::var(ujet(0)), ux = Expr::var(ujet(1));
    std::vector<Potential> pots;
    for (size_t s = 1; s <= fr.p(); ++s) {
        const Expr& a = fr.alphas[s - 1];
        Expr aA = a * eq.A;
        pots.push_back({v_pot(s), a * u, aA * ux - (aA.dx() - a * eq.B) * u});
    }
    return JetSystem(eq, pots);
}

JetSystem potential_system_f(const PotentialFrame& fr) {
    const auto& A = fr.equation.A;
    auto f = [](size_t s) { return s == 0 ? Expr::var(ujet(0)) : Expr::var(f_pot(s)); };
    std::vector<Potential> pots;
    for (size_t s = 1; s <= fr.p(); ++s) {
        Expr dprev = s == 1 ? Expr::var(ujet(1)) : fr.H[s - 1] * f(s - 2);
        pots.push_back({f_pot(s), fr.H[s] * f(s - 1), fr.H[s] * A * dprev - fr.G[s] * f(s - 1)});
    }
    return JetSystem(fr.equation, pots);
}

JetSystem modified_potential_system_w(const PotentialFrame& fr) {
    const auto& A = fr.equation.A;
    auto w = [](long s) {
        if (s == -1) return Expr::var(ujet(1));
        if (s == 0) return Expr::var(ujet(0));
        return Expr::var(w_pot(static_cast<size_t>(s)));
    };
    std::vector<Potential> pots;
    for (size_t s = 1; s <= fr.p(); ++s) {
        const long si = static_cast<long>(s);
        const Expr& b = fr.beta(static_cast<int>(s) - 1, static_cast<int>(s));
        Expr xr = w(si - 1) - b.dx() / b * w(si);
        Expr tr = A * w(si - 2) - fr.G[s] / fr.H[s] * w(si - 1) - b.dt() / b * w(si);
        pots.push_back({w_pot(s), xr, tr});
    }
    return JetSystem(fr.equation, pots);
}

ParabolicEquation p_level_potential_equation(const PotentialFrame& fr) {
    const size_t p = fr.p();
    const Expr& A = fr.equation.A;
    return {A, -(fr.G[p] + A * fr.H[p].dx()) / fr.H[p], Expr()};
}

Expr g_potential(const PotentialFrame& fr, size_t s, size_t sigma) {
    if (s < 1 || sigma < s || sigma > fr.p()) throw std::invalid_argument("g potential needs 1 <= s <= sigma <= p");
    FunctionTuple f = prefix(fr.alphas, s - 1);
    f.push_back(fr.alphas[sigma - 1]);
    ExprMatrix m = wronski_matrix(f);
    for (size_t j = 0; j + 1 < s; ++j) m(s - 1, j) = Expr::var(v_pot(j + 1));
    m(s - 1, s - 1) = Expr::var(v_pot(sigma));
    Expr g = determinant(m) / fr.W(static_cast<int>(s) - 1);
    return s % 2 == 1 ? g : -g;
}

Expr g_potential_recursive(const PotentialFrame& fr, size_t s, size_t sigma) {
    if (s < 1 || sigma < s || sigma > fr.p()) throw std::invalid_argument("g potential needs 1 <= s <= sigma <= p");
    if (s == 1) return Expr::var(v_pot(sigma));
    const int k = static_cast<int>(s) - 1;  // g^{k+1,sigma} from level k
    return fr.beta(k - 1, static_cast<int>(sigma)) / fr.beta(k - 1, k) * g_potential_recursive(fr, s - 1, s - 1) -
           g_potential_recursive(fr, s - 1, sigma);
}

ParabolicEquation level_by_elimination(const PotentialFrame& fr, size_t s) {
    if (s < 1 || s > fr.p()) throw std::out_of_range("level must be in 1..p");
    const Expr& A = fr.equation.A;
    const int si = static_cast<int>(s);
    const Expr& b = fr.beta(si - 1, si);
    Expr rho = b.dx() / b;
    JetSystem pure(heat_equation());
    Expr u0 = Expr::var(ujet(0)), u1 = Expr::var(ujet(1));
    // w^{s-1} = w_x + rho w, then w_t = (f_t - beta_t w) / beta
    Expr prev = u1 + rho * u0;
    Expr wt = A * pure.Dx(prev) - ((b * A).dx() / b - fr.levelB[s - 1]) * prev - b.dt() / b * u0;
    ParabolicEquation out{wt.diff(ujet(2)), wt.diff(ujet(1)), wt.diff(ujet(0))};
    Expr rest = wt - out.A * Expr::var(ujet(2)) - out.B * u1 - out.C * u0;
    if (!rest.is_zero()) throw InternalError("elimination left higher-order terms");
    return out;
}

Checks validate_frame_data(const Expr& A, const Expr& C, const std::vector<Expr>& H, const Expr& Gp,
                           std::vector<Expr>* G_out) {
    // H[1..p], H[0] ignored
    const size_t p = H.size() - 1;
    std::vector<Expr> G(p + 1);
    G[p] = Gp;
    for (size_t s = p - 1; s >= 1; --s)
        G[s] = (G[s + 1] - (A * H[s + 1]).dx()) / H[s + 1] * H[s] - A * H[s].dx();
    Checks out;
    auto defect = [&](size_t s) { return s == 1 ? C * H[1] : Expr(); };
    out.push_back(zero_check("H" + idx(p) + "_t + G" + idx(p) + "_x condition", H[p].dt() + Gp.dx() + defect(p)));
    for (size_t s = 1; s < p; ++s) {
        Expr rhs = (A * H[s]).dx(2) - ((G[s + 1] - A * H[s + 1].dx()) / H[s + 1] * H[s]).dx() - defect(s);
        out.push_back(zero_check("H" + idx(s) + " Fokker-Planck condition", H[s].dt() - rhs));
    }
    if (G_out) *G_out = G;
    return out;
}

Checks frame_invariant_checks(const PotentialFrame& fr) {
    Checks out;
    const size_t p = fr.p();
    const auto& eq = fr.equation;
    for (size_t s = 1; s < p; ++s)
        for (size_t sg = s + 1; sg <= p; ++sg) {
            const int si = static_cast<int>(s), gi = static_cast<int>(sg);
            const Expr& b = fr.beta(si - 1, si);
            Expr rec = b * (fr.beta(si - 1, gi) / b).dx();
            out.push_back(zero_check("beta" + idx(s, sg) + " recursion", fr.beta(si, gi) - rec));
        }
    for (size_t s = 1; s <= p; ++s) {
        const int si = static_cast<int>(s);
        out.push_back(zero_check("H" + idx(s) + " = beta ratio",
                                 fr.H[s] - fr.beta(si - 1, si) / fr.beta(si - 2, si - 1)));
        out.push_back(zero_check("H" + idx(s) + " = Wronskian form",
                                 fr.H[s] - fr.W(si) * fr.W(si - 2) / fr.W(si - 1).pow(2)));
        std::string lhs = "H" + idx(s) + "_t + G" + idx(s) + "_x";
        out.push_back(zero_check(s == 1 ? lhs + " = -C H1" : lhs + " = 0",
                                 fr.H[s].dt() + fr.G[s].dx() + conservation_defect(fr, s)));
        out.push_back(zero_check("B" + idx(s) + " closed form", fr.levelB[s] - (eq.B - static_cast<long>(s) * eq.A.dx())));
        out.push_back(zero_check("C" + idx(s) + " closed form",
                                 fr.levelC[s] - closed_form_C(eq, fr.W(si), static_cast<long>(s))));
        ParabolicEquation el = level_by_elimination(fr, s);
        out.push_back(zero_check("level " + idx(s) + " A by elimination", el.A - eq.A));
        out.push_back(zero_check("level " + idx(s) + " B by elimination", el.B - fr.levelB[s]));
        out.push_back(zero_check("level " + idx(s) + " C by elimination", el.C - fr.levelC[s]));
        ParabolicEquation lev = modified_potential_equation(fr, s);
        for (size_t k = 0; k < s; ++k)
            out.push_back(zero_check("w" + idx(s, k + 1) + " solves level " + idx(s), apply_operator(lev, fr.wsols[s][k])));
        out.push_back(zero_check("W(w^" + idx(s) + ") * W^" + idx(s) + " = 1", wronskian(fr.wsols[s]) * fr.W(si) - 1));
        ParabolicEquation below = modified_potential_equation(fr, s - 1);
        for (size_t sg = s; sg <= p; ++sg)
            out.push_back(zero_check("beta" + idx(s - 1, sg) + " characteristic of level " + idx(s - 1),
                                     characteristic_residual(below, fr.beta(si - 1, static_cast<int>(sg)))));
    }
    auto add_compat = [&](const std::string& name, const JetSystem& sys) {
        auto res = sys.compatibility_residuals();
        for (size_t i = 0; i < res.size(); ++i) out.push_back(zero_check(name + " compatibility " + idx(i + 1), res[i]));
    };
    add_compat("v-system", potential_system_v(fr));
    add_compat("f-system", potential_system_f(fr));
    add_compat("w-system", modified_potential_system_w(fr));

    JetSystem vs = potential_system_v(fr);
    for (size_t s = 1; s <= p; ++s)
        for (size_t sg = s; sg <= p; ++sg)
            out.push_back(zero_check("g" + idx(s, sg) + " determinant = recursion",
                                     g_potential(fr, s, sg) - g_potential_recursive(fr, s, sg)));
    Expr gprev = Expr::var(ujet(0));
    for (size_t s = 1; s <= p; ++s) {
        Expr g = g_potential(fr, s, s);
        out.push_back(zero_check("g" + idx(s, s) + " x-relation", vs.Dx(g) - fr.H[s] * gprev));
        out.push_back(zero_check("g" + idx(s, s) + " t-relation",
                                 vs.Dt(g) - (fr.H[s] * eq.A * vs.Dx(gprev) - fr.G[s] * gprev)));
        gprev = g;
    }
    std::vector<Expr> Grec;
    Checks val = validate_frame_data(eq.A, eq.C, fr.H, fr.G[p], &Grec);
    out.insert(out.end(), val.begin(), val.end());
    for (size_t s = 1; s < p; ++s)
        out.push_back(zero_check("G" + idx(s) + " backward recursion", Grec[s] - fr.G[s]));

    DarbouxSeed back = DarbouxSeed::make(modified_potential_equation(fr, p), fr.wsols[p]);
    ParabolicEquation img = crum_target_equation(back);
    out.push_back(zero_check("DT[w^p] maps level p to the equation (B)", img.B - eq.B));
    out.push_back(zero_check("DT[w^p] maps level p to the equation (C)", img.C - eq.C));
    return out;
}

Checks frame_consistency(const PotentialFrame& fr, uint64_t seed) {
    Checks out = frame_invariant_checks(fr);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-3, 3), diag(1, 3), sign(0, 1);
    const size_t p = fr.p();
    FunctionTuple mixed(p);
    for (size_t j = 0; j < p; ++j) {
        int d = diag(rng) * (sign(rng) ? 1 : -1);
        Expr a = d * fr.alphas[j];
        for (size_t i = 0; i < j; ++i) a += entry(rng) * fr.alphas[i];
        mixed[j] = a;
    }
    PotentialFrame other = build_frame(fr.equation, mixed);
    for (size_t s = 1; s <= p; ++s) {
        ParabolicEquation a = modified_potential_equation(fr, s), b = modified_potential_equation(other, s);
        out.push_back(zero_check("basis change keeps level " + idx(s) + " (B)", a.B - b.B));
        out.push_back(zero_check("basis change keeps level " + idx(s) + " (C)", a.C - b.C));
    }
    return out;
}

}  // namespace parapot
