#include "parapot/catalog.hpp"

#include "parapot/claws.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#ifndef PARAPOT_FIXTURE_DIR
#define PARAPOT_FIXTURE_DIR "data/fixtures"
#endif

namespace parapot {

namespace {

mpq_class factorial(unsigned n) {
    mpz_class f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return mpq_class(f);
}

Expr heat_poly(unsigned k, int tsign) {
    if (k > kHeatPolyMax) throw std::invalid_argument("heat polynomial order above the configured bound");
    Expr t = tsign * Expr::t(), x = Expr::x();
    Expr out;
    for (unsigned j = 0; 2 * j <= k; ++j) {
        mpq_class c = 1 / (factorial(j) * factorial(k - 2 * j));
        c.canonicalize();
        out += Expr(c) * t.pow(j) * x.pow(k - 2 * j);
    }
    return out;
}

std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
    if (q < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    mpq_class r(rn, rd);
    r.canonicalize();
    return r;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

Expr heat_polynomial(unsigned k) { return heat_poly(k, 1); }
Expr backward_heat_polynomial(unsigned k) { return heat_poly(k, -1); }

ParabolicEquation mu_equation(const Expr& mu) { return ParabolicEquation::reduced(mu / Expr::x().pow(2)); }

std::pair<Expr, Expr> mu_stationary_solutions(const Expr& mu) {
    auto q = mu.as_rational();
    if (!q) throw std::invalid_argument("mu must be a rational number; use the symbolic nu branch otherwise");
    mpq_class disc = 1 + 4 * *q;
    if (disc <= 0) throw ClassError("1 + 4 mu <= 0 gives logarithmic or oscillatory solutions (unsupported)");
    auto r = rational_sqrt(disc);
    if (!r) throw ClassError("1 + 4 mu is not a rational square");
    mpq_class lo = (1 - *r) / 2, hi = (1 + *r) / 2;
    return {Expr::x().pow(Poly(lo)), Expr::x().pow(Poly(hi))};
}

std::pair<Expr, Expr> mu_stationary_solutions_nu(const Expr& nu) {
    auto L = nu.as_linear_form();
    if (!L) throw std::invalid_argument("nu must be a constant linear form");
    return {Expr::x().pow(Poly(1) - *L), Expr::x().pow(*L)};
}

Expr pi_hat(const Expr& phi) {
    Expr t = Expr::t(), x = Expr::x();
    return -4 * t * t * phi.dt() - 4 * t * x * phi.dx() - (x * x + 2 * t) * phi;
}

std::pair<Expr, Expr> pi_ladder(const Expr& mu, unsigned k) {
    if (k > kLadderMax) throw std::invalid_argument("ladder step above the configured bound");
    auto [a, b] = mu_stationary_solutions(mu);
    for (unsigned i = 0; i < k; ++i) {
        a = pi_hat(a);
        b = pi_hat(b);
    }
    return {a, b};
}

FunctionTuple pi_ladder_tuple(const Expr& mu, unsigned k) {
    FunctionTuple out;
    for (unsigned i = 0; i <= k; ++i) {
        auto [a, b] = pi_ladder(mu, i);
        out.push_back(a);
        out.push_back(b);
    }
    return out;
}

Expr potential_V_from_seeds(const Expr& P, const FunctionTuple& psis) {
    ParabolicEquation src = ParabolicEquation::reduced(P);
    for (const auto& psi : psis)
        if (!is_solution(src, psi)) throw std::invalid_argument(psi.str() + " does not solve the seed equation");
    if (is_linearly_independent(psis, &src) != Dependence::independent)
        throw std::invalid_argument("seed functions are linearly dependent");
    Expr W = wronskian(psis);
    return P - 2 * (W.dx() / W).dx();
}

EquivalenceTransformation g0_transformation(const Expr& delta) {
    Expr t = Expr::t(), x = Expr::x();
    return {t, x - 2 * delta * t, Expr::exp_of(delta * x - delta * delta * t), Expr()};
}

// ---------------------------------------------------------------- fixtures

std::string fixture_dir() {
    if (const char* env = std::getenv("PARAPOT_FIXTURES")) return env;
    return PARAPOT_FIXTURE_DIR;
}

std::vector<std::string> fixture_names() { return {"heat-p1", "heat-p2", "fp-x"}; }

Fixture load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open fixture " + path);
    Fixture fx;
    bool have_eq = false, have_alpha = false;
    std::vector<std::pair<std::string, std::string>> ops;
    int lineno = 0;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'key: value'");
        std::string key = trim(line.substr(0, colon)), val = trim(line.substr(colon + 1));
        if (key == "name") fx.name = val;
        else if (key == "source") fx.source = val;
        else if (key == "eq") { fx.equation = parse_equation(val); have_eq = true; }
        else if (key == "alpha") { fx.alpha = Expr::parse(val); have_alpha = true; }
        else if (key == "op") {
            auto arrow = val.find("=>");
            if (arrow == std::string::npos)
                throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'op: Q => eta'");
            ops.emplace_back(trim(val.substr(0, arrow)), trim(val.substr(arrow + 2)));
        } else {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": unknown key " + key);
        }
    }
    if (fx.name.empty() || !have_eq || !have_alpha) throw std::invalid_argument(path + ": name, eq and alpha are required");
    if (!verify_characteristic(fx.equation, fx.alpha))
        throw InternalError("fixture " + fx.name + ": alpha is not a characteristic");
    fx.potential_equation = simplest_potential_equation(fx.equation, fx.alpha);
    for (const auto& [qs, es] : ops) {
        FixtureOperator fo;
        fo.op = PointOperator::parse(qs);
        fo.eta = Expr::parse(es);
        try {
            fo.prolonged = prolong_simplest(fo.op, fx.equation, fx.alpha);
        } catch (const std::invalid_argument& e) {
            throw InternalError("fixture " + fx.name + ": " + qs + ": " + e.what());
        }
        if (!(fo.prolonged.eta - fo.eta).is_zero())
            throw InternalError("fixture " + fx.name + ": " + qs + " prolongs to " + fo.prolonged.eta.str() +
                                ", stored " + fo.eta.str());
        fx.operators.push_back(fo);
    }
    return fx;
}

Fixture fixture(const std::string& name) {
    auto names = fixture_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw std::invalid_argument("unknown fixture '" + name + "'");
    return load_fixture(fixture_dir() + "/" + name + ".fix");
}

// ---------------------------------------------------------------- samples

namespace {

ParabolicEquation eqn(const char* A, const char* B, const char* C) {
    return {Expr::parse(A), Expr::parse(B), Expr::parse(C)};
}

ParabolicEquation fokker_planck() { return eqn("1", "x", "1"); }

// level-1 equation of heat with the characteristic x^2 - 2t; V depends on t
ParabolicEquation time_dependent_level() {
    return ParabolicEquation::reduced(Expr::parse("(4*x^2 + 8*t)/(x^2 - 2*t)^2"));
}

}  // namespace

std::vector<EquationCharacteristic> catalog_characteristic_pairs() {
    auto heat = heat_equation();
    auto mu2 = mu_equation(Expr(2));
    auto fp = fokker_planck();
    auto td = time_dependent_level();
    return {
        {"heat, 1", heat, Expr(1)},
        {"heat, x", heat, Expr::x()},
        {"heat, x^2/2 - t", heat, backward_heat_polynomial(2)},
        {"heat, exp(x - t)", heat, Expr::parse("exp(x - t)")},
        {"V = 2/x^2, x^2", mu2, Expr::parse("x^2")},
        {"V = 2/x^2, 1/x", mu2, Expr::parse("1/x")},
        {"Fokker-Planck, 1", fp, Expr(1)},
        {"Fokker-Planck, exp(t) x", fp, Expr::parse("exp(t)*x")},
        {"time-dependent V, x/(x^2 - 2t)", td, Expr::parse("x/(x^2 - 2*t)")},
        {"time-dependent V, (x^2 + 2t)/(x^2 - 2t)", td, Expr::parse("(x^2 + 2*t)/(x^2 - 2*t)")},
    };
}

std::vector<EquationSolution> catalog_solution_pairs() {
    std::vector<EquationSolution> out;
    auto heat = heat_equation();
    for (unsigned k = 0; k <= 5; ++k) out.push_back({"heat, P" + std::to_string(k), heat, heat_polynomial(k)});
    out.push_back({"heat, exp(x + t)", heat, Expr::parse("exp(x + t)")});
    auto mu2 = mu_equation(Expr(2));
    out.push_back({"V = 2/x^2, x^2", mu2, Expr::parse("x^2")});
    out.push_back({"V = 2/x^2, 1/x", mu2, Expr::parse("1/x")});
    out.push_back({"V = 6/x^2, x^3", mu_equation(Expr(6)), Expr::parse("x^3")});
    out.push_back({"Fokker-Planck, exp(t)", fokker_planck(), Expr::parse("exp(t)")});
    out.push_back({"Fokker-Planck, exp(-x^2/2)", fokker_planck(), Expr::parse("exp(-x^2/2)")});
    out.push_back({"(x^2, 0, 0), x", eqn("x^2", "0", "0"), Expr::x()});
    out.push_back({"(x^2, 0, 0), exp(2t) x^2", eqn("x^2", "0", "0"), Expr::parse("exp(2*t)*x^2")});
    out.push_back({"time-dependent V, 1/(x^2 - 2t)", time_dependent_level(), Expr::parse("1/(x^2 - 2*t)")});
    return out;
}

std::vector<ParabolicEquation> catalog_equations() {
    return {heat_equation(),
            fokker_planck(),
            mu_equation(Expr(2)),
            mu_equation(Expr(6)),
            eqn("x^2", "0", "0"),
            eqn("x^2", "-4*x", "6"),
            eqn("1", "x", "0"),
            eqn("1", "0", "-x"),
            eqn("1 + x^2", "x", "t"),
            eqn("exp(t)", "2*x", "x^2"),
            time_dependent_level()};
}

std::vector<FrameCase> catalog_frames() {
    auto heat = heat_equation();
    auto P = [](const char* s) { return Expr::parse(s); };
    return {
        {"heat (1)", heat, {P("1")}},
        {"heat (x)", heat, {P("x")}},
        {"heat (exp(x - t))", heat, {P("exp(x - t)")}},
        {"heat (x^2 - 2t)", heat, {P("x^2 - 2*t")}},
        {"heat (1, x)", heat, {P("1"), P("x")}},
        {"heat (1, x^2 - 2t)", heat, {P("1"), P("x^2 - 2*t")}},
        {"heat (1, x, x^2 - 2t)", heat, {P("1"), P("x"), P("x^2 - 2*t")}},
        {"heat (1, x, x^2 - 2t, x^3 - 6tx)", heat, {P("1"), P("x"), P("x^2 - 2*t"), P("x^3 - 6*t*x")}},
        {"Fokker-Planck (1)", fokker_planck(), {P("1")}},
        {"Fokker-Planck (exp(t) x)", fokker_planck(), {P("exp(t)*x")}},
        {"Fokker-Planck (1, exp(t) x)", fokker_planck(), {P("1"), P("exp(t)*x")}},
        {"(x^2, 0, 0) (1/x, 1/x^2)", eqn("x^2", "0", "0"), {P("1/x"), P("1/x^2")}},
        {"V = 2/x^2 (x^2, 1/x)", mu_equation(Expr(2)), {P("x^2"), P("1/x")}},
    };
}

std::vector<SeedCase> catalog_seeds() {
    auto heat = heat_equation();
    FunctionTuple p4;
    for (unsigned k = 0; k < 4; ++k) p4.push_back(heat_polynomial(k));
    return {
        {"heat (P1)", heat, {heat_polynomial(1)}},
        {"heat (P0, P1)", heat, {heat_polynomial(0), heat_polynomial(1)}},
        {"heat (P1, P3)", heat, {heat_polynomial(1), heat_polynomial(3)}},
        {"heat (P0, P1, P2)", heat, {heat_polynomial(0), heat_polynomial(1), heat_polynomial(2)}},
        {"heat (P0..P3)", heat, p4},
        {"heat (exp(x + t), P1)", heat, {Expr::parse("exp(x + t)"), heat_polynomial(1)}},
        {"V = 2/x^2 (x^2, 1/x)", mu_equation(Expr(2)), {Expr::parse("x^2"), Expr::parse("1/x")}},
    };
}

std::vector<NamedOperator> essential_heat_operators() {
    return {{"Dt", op_Dt()}, {"Dx", op_Dx()}, {"G", op_G()}, {"D", op_D()}, {"Pi", op_Pi()}};
}

}  // namespace parapot
