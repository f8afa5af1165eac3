#include "parapot/pde.hpp"

#include <mutex>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace parapot {

bool ParabolicEquation::operator==(const ParabolicEquation& o) const {
    return A == o.A && B == o.B && C == o.C;
}

std::string ParabolicEquation::str() const {
    return "(" + A.str() + ", " + B.str() + ", " + C.str() + ")";
}

bool same_equation(const ParabolicEquation& a, const ParabolicEquation& b) {
    return equal(a.A, b.A) && equal(a.B, b.B) && equal(a.C, b.C);
}

ParabolicEquation heat_equation() { return {Expr(1), Expr(), Expr()}; }

ParabolicEquation parse_equation(const std::string& text) {
    static const std::regex block(R"((eq|reduced)\s*\{([^}]*)\})");
    static const std::regex field(R"re(^\s*([A-Za-z]+)\s*=\s*(?:"([^"]*)"|([^"]*?))\s*$)re");
    std::string cleaned;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        auto hash = line.find('#');
        cleaned += (hash == std::string::npos ? line : line.substr(0, hash)) + "\n";
    }
    std::smatch m;
    if (!std::regex_search(cleaned, m, block))
        throw std::invalid_argument("expected 'eq { A = ...; B = ...; C = ... }' or 'reduced { V = ... }'");
    const bool reduced = m[1] == "reduced";
    std::map<std::string, Expr> vals;
    std::string body = m[2];
    std::istringstream fields(body);
    for (std::string item; std::getline(fields, item, ';');) {
        if (item.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        std::smatch f;
        if (!std::regex_match(item, f, field)) throw std::invalid_argument("malformed field '" + item + "'");
        std::string key = f[1];
        std::string val = f[2].matched ? std::string(f[2]) : std::string(f[3]);
        if (vals.count(key)) throw std::invalid_argument("duplicate field " + key);
        vals[key] = Expr::parse(val);
    }
    if (reduced) {
        if (vals.size() != 1 || !vals.count("V")) throw std::invalid_argument("reduced block needs exactly V");
        return ParabolicEquation::reduced(vals["V"]);
    }
    ParabolicEquation eq;
    for (auto& [k, v] : vals) {
        if (k == "A") eq.A = v;
        else if (k == "B") eq.B = v;
        else if (k == "C") eq.C = v;
        else throw std::invalid_argument("unknown coefficient " + k);
    }
    if (!vals.count("A")) throw std::invalid_argument("coefficient A is required");
    if (eq.A.is_zero()) throw std::invalid_argument("coefficient A must be nonzero");
    return eq;
}

std::string format_equation(const ParabolicEquation& eq) {
    return "eq { A = \"" + eq.A.str() + "\"; B = \"" + eq.B.str() + "\"; C = \"" + eq.C.str() + "\" }";
}

ParabolicEquation adjoint(const ParabolicEquation& eq) {
    Expr Ax = eq.A.dx();
    return {-eq.A, eq.B - 2 * Ax, -eq.C + eq.B.dx() - Ax.dx()};
}

Expr apply_operator(const ParabolicEquation& eq, const Expr& phi) {
    Expr px = phi.dx();
    return phi.dt() - eq.A * px.dx() - eq.B * px - eq.C * phi;
}

bool is_solution(const ParabolicEquation& eq, const Expr& phi) { return apply_operator(eq, phi).is_zero(); }

// ---------------------------------------------------------------- jets

namespace {

std::mutex jet_mutex;
std::vector<Var>& jet_table() {
    static std::vector<Var> t;
    return t;
}

int jet_index(Var v) {
    const std::string& n = v->name;
    if (n.empty() || n[0] != 'u') return -1;
    if (n.size() == 1) return 0;
    if (n[1] != '_' || n.size() < 3) return -1;
    for (size_t i = 2; i < n.size(); ++i)
        if (n[i] != 'x') return -1;
    return static_cast<int>(n.size() - 2);
}

}  // namespace

Var ujet(int k) {
    if (k < 0) throw std::invalid_argument("negative jet order");
    std::lock_guard<std::mutex> lock(jet_mutex);
    auto& t = jet_table();
    while (static_cast<int>(t.size()) <= k) {
        size_t j = t.size();
        t.push_back(sym(j == 0 ? std::string("u") : "u_" + std::string(j, 'x')));
    }
    return t[k];
}

int max_jet_order(const Expr& e) {
    int r = -1;
    for (Var v : e.symbols()) r = std::max(r, jet_index(v));
    return r;
}

JetSystem::JetSystem(ParabolicEquation eq, std::vector<Potential> pots)
    : eq_(std::move(eq)), pots_(std::move(pots)) {}

Expr JetSystem::Dx(const Expr& e) const {
    Expr out = e.dx();
    int r = max_jet_order(e);
    for (int k = 0; k <= r; ++k) {
        Var u = ujet(k);
        if (e.depends_on(u)) out += e.diff(u) * Expr::var(ujet(k + 1));
    }
    for (const auto& p : pots_)
        if (e.depends_on(p.name)) out += e.diff(p.name) * p.x_rel;
    return out;
}

Expr JetSystem::Dx(const Expr& e, unsigned n) const {
    Expr out = e;
    for (unsigned i = 0; i < n; ++i) out = Dx(out);
    return out;
}

Expr JetSystem::ut(int k) const {
    if (ut_cache_.empty())
        ut_cache_.push_back(eq_.A * Expr::var(ujet(2)) + eq_.B * Expr::var(ujet(1)) +
                            eq_.C * Expr::var(ujet(0)));
    while (static_cast<int>(ut_cache_.size()) <= k) ut_cache_.push_back(Dx(ut_cache_.back()));
    return ut_cache_[k];
}

Expr JetSystem::Dt(const Expr& e) const {
    Expr out = e.dt();
    int r = max_jet_order(e);
    for (int k = 0; k <= r; ++k) {
        Var u = ujet(k);
        if (e.depends_on(u)) out += e.diff(u) * ut(k);
    }
    for (const auto& p : pots_)
        if (e.depends_on(p.name)) out += e.diff(p.name) * p.t_rel;
    return out;
}

std::vector<Expr> JetSystem::compatibility_residuals() const {
    std::vector<Expr> out;
    for (const auto& p : pots_) out.push_back(Dt(p.x_rel) - Dx(p.t_rel));
    return out;
}

Expr total_derivative(const Expr& e, char dir, const ParabolicEquation& eq) {
    JetSystem sys(eq);
    if (dir == 'x') return sys.Dx(e);
    if (dir == 't') return sys.Dt(e);
    throw std::invalid_argument("direction must be 't' or 'x'");
}

// ---------------------------------------------------------------- operators

PointOperator PointOperator::parse(const std::string& text) {
    Expr e = Expr::parse(text);
    Var Dt = sym("Dt"), Dx = sym("Dx"), Dw = sym("Dw"), w = sym("w");
    PointOperator q;
    q.tau = e.diff(Dt);
    q.xi = e.diff(Dx);
    Expr zeta = e.diff(Dw);
    Expr rest = e - q.tau * Expr::var(Dt) - q.xi * Expr::var(Dx) - zeta * Expr::var(Dw);
    for (const Expr* c : {&q.tau, &q.xi, &zeta})
        for (Var d : {Dt, Dx, Dw})
            if (c->depends_on(d)) throw std::invalid_argument("operator must be linear in Dt, Dx, Dw");
    if (!rest.is_zero()) throw std::invalid_argument("operator has a term without Dt, Dx or Dw");
    if (q.tau.depends_on(w) || q.xi.depends_on(w))
        throw std::invalid_argument("coefficients of Dt and Dx must not depend on w");
    q.zeta1 = zeta.diff(w);
    q.zeta0 = zeta.subs(w, Expr());
    if (q.zeta1.depends_on(w)) throw std::invalid_argument("coefficient of Dw must be linear in w");
    return q;
}

namespace {

std::string op_term(const Expr& c, const std::string& name) {
    if (c.is_one()) return name;
    if ((-c).is_one()) return "-" + name;
    return "(" + c.str() + ")*" + name;
}

}  // namespace

std::string PointOperator::str() const {
    std::vector<std::string> parts;
    if (!tau.is_structural_zero()) parts.push_back(op_term(tau, "Dt"));
    if (!xi.is_structural_zero()) parts.push_back(op_term(xi, "Dx"));
    Expr zeta = zeta1 * Expr::symbol("w") + zeta0;
    if (!zeta.is_structural_zero()) parts.push_back(op_term(zeta, "Dw"));
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
}

bool PointOperator::is_zero() const {
    return tau.is_zero() && xi.is_zero() && zeta1.is_zero() && zeta0.is_zero();
}

PointOperator PointOperator::operator+(const PointOperator& o) const {
    return {tau + o.tau, xi + o.xi, zeta1 + o.zeta1, zeta0 + o.zeta0};
}

PointOperator PointOperator::operator*(const Expr& c) const {
    return {tau * c, xi * c, zeta1 * c, zeta0 * c};
}

std::string ProlongedOperator::str() const {
    std::vector<std::string> parts;
    if (!tau.is_structural_zero()) parts.push_back(op_term(tau, "Dt"));
    if (!xi.is_structural_zero()) parts.push_back(op_term(xi, "Dx"));
    if (!eta.is_structural_zero()) parts.push_back(op_term(eta, "Du"));
    for (size_t i = 0; i < pots.size(); ++i)
        if (!thetas[i].is_structural_zero()) parts.push_back(op_term(thetas[i], "D" + pots[i]->name));
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
}

std::vector<Expr> system_invariance_residuals(const JetSystem& sys, const ProlongedOperator& Q) {
    const auto& eq = sys.equation();
    const auto& pots = sys.potentials();
    if (Q.thetas.size() != Q.pots.size()) throw std::invalid_argument("theta/potential count mismatch");
    auto find_theta = [&](Var p) -> Expr {
        for (size_t i = 0; i < Q.pots.size(); ++i)
            if (Q.pots[i] == p) return Q.thetas[i];
        return Expr();
    };
    // characteristics of the evolutionary form
    Expr phi_u = Q.eta - Q.tau * sys.ut(0) - Q.xi * Expr::var(ujet(1));
    std::vector<Expr> phi_p;
    for (const auto& p : pots) phi_p.push_back(find_theta(p.name) - Q.tau * p.t_rel - Q.xi * p.x_rel);

    std::vector<Expr> out;
    Expr d1 = sys.Dx(phi_u);
    Expr d2 = sys.Dx(d1);
    out.push_back(sys.Dt(phi_u) - eq.A * d2 - eq.B * d1 - eq.C * phi_u);

    std::vector<Expr> dphi{phi_u, d1, d2};
    auto linearized = [&](const Expr& rel) {
        Expr acc;
        int r = max_jet_order(rel);
        for (int k = 0; k <= r; ++k) {
            Var u = ujet(k);
            if (!rel.depends_on(u)) continue;
            while (static_cast<int>(dphi.size()) <= k) dphi.push_back(sys.Dx(dphi.back()));
            acc += rel.diff(u) * dphi[k];
        }
        for (size_t q = 0; q < pots.size(); ++q)
            if (rel.depends_on(pots[q].name)) acc += rel.diff(pots[q].name) * phi_p[q];
        return acc;
    };
    for (size_t i = 0; i < pots.size(); ++i) {
        out.push_back(sys.Dx(phi_p[i]) - linearized(pots[i].x_rel));
        out.push_back(sys.Dt(phi_p[i]) - linearized(pots[i].t_rel));
    }
    return out;
}

ProlongedOperator as_prolonged(const PointOperator& Q) {
    ProlongedOperator p;
    p.base = Q;
    p.tau = Q.tau;
    p.xi = Q.xi;
    p.eta = Q.zeta1 * Expr::var(ujet(0)) + Q.zeta0;
    return p;
}

Expr invariance_residual(const ParabolicEquation& eq, const PointOperator& Q) {
    return system_invariance_residuals(JetSystem(eq), as_prolonged(Q)).front();
}

bool is_symmetry(const ParabolicEquation& eq, const PointOperator& Q) {
    return invariance_residual(eq, Q).is_zero();
}

PointOperator adjoint_pair_prolong(const PointOperator& Q, const ParabolicEquation& eq) {
    if (!is_symmetry(eq, Q)) throw std::invalid_argument("operator is not a Lie symmetry of the equation");
    if (!Q.zeta0.is_zero()) throw std::invalid_argument("operator must be essential (zeta0 = 0)");
    return {Q.tau, Q.xi, -Q.xi.dx() - Q.zeta1, Expr()};
}

// ---------------------------------------------------------------- equivalence

std::string EquivalenceTransformation::str() const {
    std::string s = "T = " + T.str() + "; X = " + X.str() + "; U1 = " + U1.str();
    if (!U0.is_structural_zero()) s += "; U0 = " + U0.str();
    return s;
}

void validate_transformation(const EquivalenceTransformation& tr) {
    if (tr.T.depends_on(var_x())) throw std::invalid_argument("T must depend on t only");
    for (const Expr* e : {&tr.T, &tr.X, &tr.U1, &tr.U0})
        for (Var v : e->symbols())
            if (jet_index(v) >= 0) throw std::invalid_argument("transformation must not involve u");
    if ((tr.T.dt() * tr.X.dx() * tr.U1).is_zero())
        throw std::invalid_argument("degenerate transformation: T_t X_x U1 = 0");
}

ParabolicEquation transformed_coefficients_old_vars(const ParabolicEquation& eq,
                                                     const EquivalenceTransformation& tr) {
    validate_transformation(tr);
    if (!tr.U0.is_zero() && !is_solution(eq, tr.U0 / tr.U1))
        throw std::invalid_argument("U0/U1 must solve the equation");
    Expr Tt = tr.T.dt();
    Expr Xx = tr.X.dx();
    ParabolicEquation out;
    out.A = Xx * Xx * eq.A / Tt;
    out.B = Xx / Tt * (eq.B - 2 * eq.A * tr.U1.dx() / tr.U1) - (tr.X.dt() - eq.A * Xx.dx()) / Tt;
    out.C = -(tr.U1 / Tt) * apply_operator(eq, Expr(1) / tr.U1);
    return out;
}

namespace {

Expr invert_T(const Expr& T) {
    Var t = var_t();
    if (T.depends_on(var_x())) throw ClassError("T must depend on t only");
    auto rf = T.as_ratfunc();
    if (!rf || rf->num.degree(t) > 1 || rf->den.degree(t) > 1 || rf->num.min_degree(t) < 0 ||
        rf->den.min_degree(t) < 0)
        throw ClassError("inverse of T = " + T.str() + " is outside the expression class");
    Expr a(rf->num.coeff(t, 1)), b(rf->num.coeff(t, 0));
    Expr c(rf->den.coeff(t, 1)), d(rf->den.coeff(t, 0));
    Expr s = Expr::t();
    return (d * s - b) / (a - c * s);
}

// x as a function of the new (t, x), given Tinv
Expr invert_X(const Expr& X, const Expr& Tinv) {
    Var x = var_x(), t = var_t();
    Expr Xx = X.dx();
    Expr nx = Expr::x();
    if (!Xx.depends_on(x)) {
        Expr a = Xx;
        Expr b = X.subs(x, Expr());
        return (nx - b.subs(t, Tinv)) / a.subs(t, Tinv);
    }
    // X = k(t) x^n
    Expr n = (Xx * Expr::x() / X);
    auto nq = n.as_rational();
    if (nq && *nq != 0) {
        Expr k = X / Expr::x().pow(Poly(*nq));
        if (!k.depends_on(x)) {
            Expr base = nx / k.subs(t, Tinv);
            mpq_class inv = 1 / *nq;
            return base.pow(Poly(inv));
        }
    }
    throw ClassError("inverse of X = " + X.str() + " is outside the expression class");
}

}  // namespace

Expr pull_back(const Expr& e, const EquivalenceTransformation& tr) {
    Bindings b;
    b.emplace(var_t(), tr.T);
    b.emplace(var_x(), tr.X);
    return e.subs(b);
}

Expr to_new_variables(const Expr& e, const EquivalenceTransformation& tr) {
    if (!e.depends_on(var_t()) && !e.depends_on(var_x())) return e;
    Expr Tinv = invert_T(tr.T);
    Expr Xinv = invert_X(tr.X, Tinv);
    Bindings b;
    b.emplace(var_t(), Tinv);
    b.emplace(var_x(), Xinv);
    return e.subs(b);
}

ParabolicEquation apply_equivalence(const ParabolicEquation& eq, const EquivalenceTransformation& tr) {
    ParabolicEquation old = transformed_coefficients_old_vars(eq, tr);
    return {to_new_variables(old.A, tr), to_new_variables(old.B, tr), to_new_variables(old.C, tr)};
}

EquivalenceTransformation invert_transformation(const EquivalenceTransformation& tr) {
    validate_transformation(tr);
    Expr Tinv = invert_T(tr.T);
    Expr Xinv = invert_X(tr.X, Tinv);
    Bindings b;
    b.emplace(var_t(), Tinv);
    b.emplace(var_x(), Xinv);
    EquivalenceTransformation inv;
    inv.T = Tinv;
    inv.X = Xinv;
    Expr U1 = tr.U1.subs(b);
    inv.U1 = Expr(1) / U1;
    inv.U0 = -tr.U0.subs(b) / U1;
    return inv;
}

EquivalenceTransformation compose(const EquivalenceTransformation& second,
                                  const EquivalenceTransformation& first) {
    Bindings b;
    b.emplace(var_t(), first.T);
    b.emplace(var_x(), first.X);
    EquivalenceTransformation out;
    out.T = second.T.subs(b);
    out.X = second.X.subs(b);
    Expr U1 = second.U1.subs(b);
    out.U1 = U1 * first.U1;
    out.U0 = U1 * first.U0 + second.U0.subs(b);
    return out;
}

EquivalenceTransformation gauge_to_reduced(const ParabolicEquation& eq) {
    if (!eq.A.is_one()) throw ClassError("gauging is only provided for A = 1");
    auto B = eq.B.as_poly();
    if (!B) throw ClassError("gauging needs a polynomial B");
    Poly prim;
    for (const auto& [m, c] : B->terms()) {
        int e = m.degree(var_x());
        if (e == -1) throw ClassError("antiderivative of B leaves the expression class");
        prim += Poly::term(c / (2 * (e + 1)), m * Monomial::var(var_x()));
    }
    EquivalenceTransformation tr;
    tr.U1 = Expr::exp_of(Expr(prim));
    return tr;
}

}  // namespace parapot
