#include "parapot/symmetry.hpp"

#include "parapot/claws.hpp"

#include <algorithm>
#include <stdexcept>

namespace parapot {

const char* to_string(CaseTag t) {
    switch (t) {
        case CaseTag::generic_V_of_x: return "generic-V-of-x";
        case CaseTag::mu_x_minus_2: return "mu-x-minus-2";
        case CaseTag::zero: return "zero";
        case CaseTag::unknown: return "unknown";
    }
    return "?";
}

PointOperator op_Dt() { return {Expr(1), Expr(), Expr(), Expr()}; }
PointOperator op_Dx() { return {Expr(), Expr(1), Expr(), Expr()}; }
PointOperator op_G() { return {Expr(), 2 * Expr::t(), -Expr::x(), Expr()}; }
PointOperator op_D() { return {2 * Expr::t(), Expr::x(), Expr(), Expr()}; }
PointOperator op_Pi() {
    Expr t = Expr::t(), x = Expr::x();
    return {4 * t * t, 4 * t * x, -(x * x + 2 * t), Expr()};
}
PointOperator op_I() { return {Expr(), Expr(), Expr(1), Expr()}; }

SymmetryClassification classify_reduced(const Expr& V) {
    SymmetryClassification c;
    Expr x = Expr::x();
    if (V.is_zero()) {
        c.tag = CaseTag::zero;
        c.operators = {{"Dt", op_Dt()}, {"Dx", op_Dx()}, {"G", op_G()}, {"D", op_D()}, {"Pi", op_Pi()}};
    } else if (Expr m = V * x * x; !m.depends_on(var_t()) && !m.depends_on(var_x())) {
        c.tag = CaseTag::mu_x_minus_2;
        c.mu = m;
        c.operators = {{"Dt", op_Dt()}, {"D", op_D()}, {"Pi", op_Pi()}};
    } else if (!V.depends_on(var_t())) {
        c.tag = CaseTag::generic_V_of_x;
        c.operators = {{"Dt", op_Dt()}};
    } else {
        return c;
    }
    c.trivial = {{"I", op_I()}};
    ParabolicEquation eq = ParabolicEquation::reduced(V);
    for (const auto* list : {&c.operators, &c.trivial})
        for (const auto& n : *list)
            if (!is_symmetry(eq, n.op)) throw InternalError("classification operator " + n.name + " fails");
    return c;
}

ParabolicEquation simplest_potential_equation(const ParabolicEquation& eq, const Expr& alpha) {
    return {eq.A, eq.B - eq.A.dx() - 2 * eq.A * alpha.dx() / alpha, Expr()};
}

ProlongedOperator prolong_simplest(const PointOperator& Qp, const ParabolicEquation& eq, const Expr& alpha) {
    if (!verify_characteristic(eq, alpha)) throw std::invalid_argument("alpha is not a characteristic");
    if (!is_symmetry(simplest_potential_equation(eq, alpha), Qp))
        throw std::invalid_argument("operator is not a Lie symmetry of the potential equation");
    Var v = v_pot(1);
    Expr vv = Expr::var(v), u = Expr::var(ujet(0));
    ProlongedOperator Q;
    Q.base = Qp;
    Q.tau = Qp.tau;
    Q.xi = Qp.xi;
    Expr theta = Qp.zeta1 * vv + Qp.zeta0;
    Q.eta = (Qp.zeta1 - Qp.xi.dx() - Qp.tau * alpha.dt() / alpha - Qp.xi * alpha.dx() / alpha) * u +
            theta.dx() / alpha;
    Q.pots = {v};
    Q.thetas = {theta};
    Expr aA = alpha * eq.A;
    JetSystem sys(eq, {{v, alpha * u, aA * Expr::var(ujet(1)) - (aA.dx() - alpha * eq.B) * u}});
    for (const auto& r : system_invariance_residuals(sys, Q))
        if (!r.is_zero()) throw InternalError("prolonged operator fails on the potential system: " + r.str());
    return Q;
}

PointOperator w_operator_to_f(const PointOperator& Q, const PotentialFrame& fr) {
    const int p = static_cast<int>(fr.p());
    const Expr& b = fr.beta(p - 1, p);
    return {Q.tau, Q.xi, Q.zeta1 + (Q.tau * b.dt() + Q.xi * b.dx()) / b, Q.zeta0 * b};
}

ProlongedOperator prolong_frame(const PointOperator& Qp, const PotentialFrame& fr) {
    const size_t p = fr.p();
    if (!is_symmetry(p_level_potential_equation(fr), Qp))
        throw std::invalid_argument("operator is not a Lie symmetry of the p-level potential equation");
    auto f = [](size_t s) { return s == 0 ? Expr::var(ujet(0)) : Expr::var(f_pot(s)); };
    std::vector<Expr> theta(p + 1);
    theta[p] = Qp.zeta1 * f(p) + Qp.zeta0;
    for (size_t s = p; s >= 1; --s) {
        const Expr& H = fr.H[s];
        Expr acc = theta[s].dx();
        for (size_t sg = s; sg <= p; ++sg) {
            Var fs = f_pot(sg);
            if (theta[s].depends_on(fs)) acc += theta[s].diff(fs) * fr.H[sg] * f(sg - 1);
        }
        theta[s - 1] = acc / H - (Qp.xi.dx() + Qp.tau * H.dt() / H + Qp.xi * H.dx() / H) * f(s - 1);
    }
    ProlongedOperator Q;
    Q.base = Qp;
    Q.tau = Qp.tau;
    Q.xi = Qp.xi;
    Q.eta = theta[0];
    for (size_t s = 1; s <= p; ++s) {
        Q.pots.push_back(f_pot(s));
        Q.thetas.push_back(theta[s]);
    }
    for (size_t s = 1; s <= p; ++s)
        for (size_t sg = 1; sg < s; ++sg)
            if (theta[s].depends_on(f_pot(sg))) throw InternalError("triangular structure violated");
    for (const auto& r : system_invariance_residuals(potential_system_f(fr), Q))
        if (!r.is_zero()) throw InternalError("prolonged operator fails on the f-system: " + r.str());
    return Q;
}

bool is_pure_potential(const ProlongedOperator& Q, size_t level) {
    const Expr& c = level == 0 ? Q.eta : Q.thetas.at(level - 1);
    for (size_t i = level; i < Q.pots.size(); ++i)
        if (c.depends_on(Q.pots[i])) return true;
    return false;
}

Expr induced_action(const PointOperator& Q, const Expr& psi) {
    return Q.zeta1 * psi - Q.tau * psi.dt() - Q.xi * psi.dx();
}

namespace {

void check_pre(const PointOperator& Qp, const FunctionTuple& psis, const ParabolicEquation& eq) {
    if (!is_symmetry(eq, Qp)) throw std::invalid_argument("operator is not a Lie symmetry of the equation");
    for (const auto& psi : psis)
        if (!is_solution(eq, psi)) throw std::invalid_argument(psi.str() + " does not solve the equation");
}

ExprMatrix mul(const ExprMatrix& a, const ExprMatrix& b) {
    ExprMatrix c(a.rows(), b.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) {
            Expr s;
            for (size_t k = 0; k < a.cols(); ++k)
                if (!a(i, k).is_structural_zero() && !b(k, j).is_structural_zero()) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

ExprMatrix columns(const std::vector<std::vector<Expr>>& vs, size_t n) {
    ExprMatrix m(n, vs.size());
    for (size_t j = 0; j < vs.size(); ++j)
        for (size_t i = 0; i < n; ++i) m(i, j) = vs[j][i];
    return m;
}

ExprMatrix transpose(const ExprMatrix& a) {
    ExprMatrix t(a.cols(), a.rows());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

}  // namespace

EigenResult eigen_test(const PointOperator& Qp, const Expr& psi, const ParabolicEquation& eq) {
    check_pre(Qp, {psi}, eq);
    auto c = express_in_span(induced_action(Qp, psi), {psi}, eq);
    if (!c) return {};
    return {true, (*c)[0]};
}

ExprMatrix largest_invariant_subspace(const ExprMatrix& M, const ExprMatrix& E) {
    const size_t n = M.rows();
    if (!M.is_square() || (E.rows() > 0 && E.cols() != n)) throw std::invalid_argument("matrix shapes do not match");
    ExprMatrix S(n, n);
    for (size_t i = 0; i < n; ++i) S(i, i) = Expr(1);
    while (S.cols() > 0) {
        const size_t k = S.cols();
        ExprMatrix MS = mul(M, S);
        ExprMatrix ES = E.rows() ? mul(E, S) : ExprMatrix(0, k);
        auto ann = nullspace(transpose(S));  // rows annihilating span(S)
        ExprMatrix P(ann.size(), n);
        for (size_t r = 0; r < ann.size(); ++r)
            for (size_t i = 0; i < n; ++i) P(r, i) = ann[r][i];
        ExprMatrix PMS = ann.empty() ? ExprMatrix(0, k) : mul(P, MS);
        ExprMatrix cond(ES.rows() + PMS.rows(), k);
        for (size_t i = 0; i < ES.rows(); ++i)
            for (size_t j = 0; j < k; ++j) cond(i, j) = ES(i, j);
        for (size_t i = 0; i < PMS.rows(); ++i)
            for (size_t j = 0; j < k; ++j) cond(ES.rows() + i, j) = PMS(i, j);
        auto N = nullspace(cond);
        if (N.size() == k) break;
        S = N.empty() ? ExprMatrix(n, 0) : mul(S, columns(N, k));
    }
    return S;
}

InducedMatrix induced_matrix(const PointOperator& Qp, const FunctionTuple& psis, const ParabolicEquation& eq) {
    check_pre(Qp, psis, eq);
    const size_t n = psis.size();
    std::vector<Expr> images;
    for (const auto& psi : psis) images.push_back(induced_action(Qp, psi));
    FunctionTuple basis = psis;
    std::vector<std::vector<Expr>> coords;
    for (const auto& y : images) {
        auto c = express_in_span(y, basis, eq);
        if (!c) {
            basis.push_back(y);
            c = std::vector<Expr>(basis.size());
            c->back() = Expr(1);
        }
        coords.push_back(*c);
    }
    InducedMatrix out;
    out.extra.assign(basis.begin() + static_cast<long>(n), basis.end());
    const size_t m = out.extra.size();
    out.M = ExprMatrix(n, n);
    out.E = ExprMatrix(m, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < coords[j].size(); ++i) {
            if (i < n)
                out.M(i, j) = coords[j][i];
            else
                out.E(i - n, j) = coords[j][i];
        }
    return out;
}

FunctionTuple stable_invariant_subspace(const PointOperator& Qp, const FunctionTuple& psis,
                                        const ParabolicEquation& eq) {
    InducedMatrix im = induced_matrix(Qp, psis, eq);
    ExprMatrix S = largest_invariant_subspace(im.M, im.E);
    FunctionTuple out;
    for (size_t j = 0; j < S.cols(); ++j) {
        Expr f;
        for (size_t i = 0; i < psis.size(); ++i) f += S(i, j) * psis[i];
        out.push_back(f);
    }
    return out;
}

bool strictly_p_order(const PointOperator& Qp, const FunctionTuple& psis, const ParabolicEquation& eq) {
    return stable_invariant_subspace(Qp, psis, eq).empty();
}

std::string PotentialSymmetryReport::summary() const {
    if (!decided && tag == CaseTag::unknown) return "undecided: supply reducing transformation";
    std::string s = "pure potential symmetries: ";
    s += exists ? "YES" : (decided ? "NO" : "UNDECIDED");
    if (!generators.empty()) {
        s += "; generators: ";
        for (size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : "") + generators[i];
    }
    return s;
}

PotentialSymmetryReport potential_symmetry_report(const ParabolicEquation& eq, const FunctionTuple& alphas) {
    PotentialSymmetryReport rep;
    PotentialFrame fr = build_frame(eq, alphas);
    const size_t p = fr.p();
    rep.level_equation = modified_potential_equation(fr, p);
    rep.psis = w_solutions(fr, p);
    if (!rep.level_equation.A.is_one() || !rep.level_equation.B.is_zero()) {
        rep.note = "level equation is not in reduced form";
        return rep;
    }
    SymmetryClassification cls = classify_reduced(rep.level_equation.V());
    rep.tag = cls.tag;
    if (cls.tag == CaseTag::unknown) {
        rep.note = "potential not of a recognised canonical form";
        return rep;
    }
    static const std::vector<std::string> order{"Pi", "G", "D", "Dx", "Dt"};
    auto rank = [&](const std::string& n) { return std::find(order.begin(), order.end(), n) - order.begin(); };
    std::sort(cls.operators.begin(), cls.operators.end(),
              [&](const NamedOperator& a, const NamedOperator& b) { return rank(a.name) < rank(b.name); });
    for (const auto& n : cls.operators) {
        OperatorVerdict v{n.name, n.op, strictly_p_order(n.op, rep.psis, rep.level_equation), ""};
        if (v.strict) {
            rep.generators.push_back(n.name + "-type");
            v.prolonged = prolong_frame(w_operator_to_f(n.op, fr), fr).str();
        }
        rep.verdicts.push_back(v);
    }
    rep.exists = !rep.generators.empty();
    if (cls.tag == CaseTag::generic_V_of_x) {
        rep.decided = rep.exists;
        rep.note = "sufficient-condition only";
    } else {
        rep.decided = true;
    }
    return rep;
}

}  // namespace parapot
