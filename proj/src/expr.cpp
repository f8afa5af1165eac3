#include "parapot/expr.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <random>
#include <sstream>

namespace parapot {

namespace mp = boost::multiprecision;
using Real = mp::number<mp::mpfr_float_backend<80>, mp::et_off>;

namespace {

std::atomic<uint64_t> g_seed{0};

Real to_real(const mpq_class& q) {
    Real r;
    mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

long floor_q(const mpq_class& q) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    if (!f.fits_slong_p()) throw ClassError("exponent out of range");
    return f.get_si();
}

Poly x_mono(long k) { return Poly::var(var_x(), static_cast<int>(k)); }

// split the integer part of the constant of a linear form
std::pair<Poly, long> split_L(const Poly& L) {
    mpq_class c = L.constant_term();
    long k = floor_q(c);
    if (k == 0) return {L, 0};
    return {L - Poly(mpq_class(k)), k};
}

Kernel kernel_one() { return Kernel{}; }

// a*b = x^shift * result
std::pair<Kernel, long> kmul(const Kernel& a, const Kernel& b) {
    if (a.is_one()) return {b, 0};
    if (b.is_one()) return {a, 0};
    auto [L, k] = split_L(a.L + b.L);
    RatFunc R = a.R.is_zero() ? b.R : (b.R.is_zero() ? a.R : a.R + b.R);
    return {Kernel{L, R}, k};
}

std::pair<Kernel, long> kinv(const Kernel& a) {
    auto [L, k] = split_L(-a.L);
    return {Kernel{L, -a.R}, k};
}

void gadd_into(GPoly& g, const Kernel& k, const Poly& p) {
    if (p.is_zero()) return;
    auto [it, ins] = g.emplace(k, p);
    if (!ins) {
        it->second += p;
        if (it->second.is_zero()) g.erase(it);
    }
}

GPoly gone() {
    GPoly g;
    g.emplace(kernel_one(), Poly(1));
    return g;
}

bool gis_one(const GPoly& g) {
    return g.size() == 1 && g.begin()->first.is_one() && g.begin()->second.is_one();
}

GPoly gadd(const GPoly& a, const GPoly& b) {
    GPoly r = a;
    for (auto& [k, p] : b) gadd_into(r, k, p);
    return r;
}

GPoly gmul(const GPoly& a, const GPoly& b) {
    GPoly r;
    for (auto& [k1, p1] : a)
        for (auto& [k2, p2] : b) {
            auto [k, s] = kmul(k1, k2);
            Poly prod = p1 * p2;
            if (s != 0) prod = prod.mul_monomial(Monomial::var(var_x(), static_cast<int>(s)));
            gadd_into(r, k, prod);
        }
    return r;
}

GPoly gmul_poly(const GPoly& a, const Poly& p) {
    GPoly r;
    for (auto& [k, q] : a) gadd_into(r, k, q * p);
    return r;
}

GPoly gmul_kernel(const GPoly& a, const Kernel& K, long shift) {
    GPoly r;
    for (auto& [k, q] : a) {
        auto [kk, s] = kmul(k, K);
        Poly pq = q;
        long tot = s + shift;
        if (tot != 0) pq = pq.mul_monomial(Monomial::var(var_x(), static_cast<int>(tot)));
        gadd_into(r, kk, pq);
    }
    return r;
}

void collect_vars(const Poly& p, std::vector<Var>& out) {
    for (Var v : p.vars())
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
}

void collect_gvars(const GPoly& g, std::vector<Var>& out) {
    for (auto& [k, p] : g) {
        collect_vars(p, out);
        collect_vars(k.L, out);
        collect_vars(k.R.num, out);
        collect_vars(k.R.den, out);
        if (!k.L.is_zero() && std::find(out.begin(), out.end(), var_x()) == out.end())
            out.push_back(var_x());
    }
}

std::string gpoly_str(const GPoly& g, size_t* nterms) {
    std::string s;
    size_t n = 0;
    for (auto& [k, p] : g) {
        std::string kstr;
        if (!k.L.is_zero()) kstr += "x^(" + k.L.str() + ")";
        if (!k.R.is_zero()) {
            if (!kstr.empty()) kstr += "*";
            kstr += "exp(" + k.R.str() + ")";
        }
        for (auto& [m, c] : p.terms()) {
            std::string ms = Poly::term(1, m).str();
            if (ms == "1") ms.clear();
            std::string fac = ms;
            if (!kstr.empty()) fac += (fac.empty() ? "" : "*") + kstr;
            mpq_class a = abs(c);
            std::string body;
            if (fac.empty())
                body = rational_str(a);
            else if (a == 1)
                body = fac;
            else
                body = rational_str(a) + "*" + fac;
            if (n == 0)
                s += (c < 0 ? "-" : "") + body;
            else
                s += (c < 0 ? " - " : " + ") + body;
            ++n;
        }
    }
    if (n == 0) s = "0";
    if (nterms) *nterms = n;
    return s;
}

}  // namespace

// ---------------------------------------------------------------- RatFunc

RatFunc RatFunc::make(const Poly& n, const Poly& d) {
    if (d.is_zero()) throw std::domain_error("division by zero");
    if (n.is_zero()) return RatFunc{Poly(), Poly(1)};
    Monomial m = monomial_min(n.min_monomial(), d.min_monomial());
    Poly N = n, D = d;
    if (!m.is_one()) {
        Monomial mi = m.inverse();
        N = N.mul_monomial(mi);
        D = D.mul_monomial(mi);
    }
    Poly g = gcd(N, D);
    if (!g.is_constant()) {
        N = exact_div(N, g);
        D = exact_div(D, g);
    }
    mpq_class lc = D.lc();
    if (lc != 1) {
        N = N * mpq_class(1 / lc);
        D = D * mpq_class(1 / lc);
    }
    return RatFunc{N, D};
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (den == o.den) return make(num + o.num, den);
    return make(num * o.den + o.num * den, den * o.den);
}

RatFunc RatFunc::operator*(const mpq_class& c) const {
    if (c == 0) return RatFunc{};
    return RatFunc{num * c, den};
}

RatFunc RatFunc::operator*(const Poly& p) const { return make(num * p, den); }

RatFunc RatFunc::diff(Var v) const {
    return make(num.diff(v) * den - num * den.diff(v), den * den);
}

int RatFunc::compare(const RatFunc& o) const {
    int c = num.compare(o.num);
    if (c != 0) return c;
    return den.compare(o.den);
}

std::string RatFunc::str() const {
    if (den.is_one()) return num.str();
    return "(" + num.str() + ")/(" + den.str() + ")";
}

bool KernelLess::operator()(const Kernel& a, const Kernel& b) const {
    // kernel one sorts first
    bool ao = a.is_one(), bo = b.is_one();
    if (ao != bo) return ao;
    int c = a.L.compare(b.L);
    if (c != 0) return c < 0;
    return a.R.compare(b.R) < 0;
}

// ---------------------------------------------------------------- Expr basics

void set_oracle_seed(uint64_t seed) { g_seed = seed; }
uint64_t oracle_seed() { return g_seed; }

Expr::Expr() : den_(gone()) {}

Expr::Expr(const mpq_class& c) : den_(gone()) {
    if (c != 0) num_.emplace(kernel_one(), Poly(c));
}

Expr::Expr(const Poly& p) : den_(gone()) {
    if (!p.is_zero()) num_.emplace(kernel_one(), p);
    normalize();
}

Expr::Expr(const RatFunc& r) : den_(gone()) {
    if (!r.num.is_zero()) {
        num_.emplace(kernel_one(), r.num);
        den_.begin()->second = r.den;
    }
    normalize();
}

Expr Expr::var(Var v) { return Expr(Poly::var(v)); }

Expr Expr::from_parts(const GPoly& num, const GPoly& den) {
    Expr e;
    e.num_ = num;
    e.den_ = den;
    e.normalize();
    return e;
}

Expr Expr::x_power(const Poly& L) {
    auto [Lf, k] = split_L(L);
    Expr e;
    GPoly n;
    n.emplace(Kernel{Lf, RatFunc{}}, x_mono(k));
    e.num_ = n;
    e.normalize();
    return e;
}

Expr Expr::exp_of(const Expr& r) {
    auto rf = r.as_ratfunc();
    if (!rf) throw ClassError("exp of an argument outside the rational functions: " + r.str());
    if (rf->is_zero()) return Expr(1);
    Expr e;
    e.num_.emplace(Kernel{Poly(), *rf}, Poly(1));
    return e;
}

void Expr::normalize() {
    for (auto it = num_.begin(); it != num_.end();) {
        if (it->second.is_zero())
            it = num_.erase(it);
        else
            ++it;
    }
    for (auto it = den_.begin(); it != den_.end();) {
        if (it->second.is_zero())
            it = den_.erase(it);
        else
            ++it;
    }
    if (den_.empty()) throw std::domain_error("division by the zero expression");
    if (num_.empty()) {
        den_ = gone();
        return;
    }
    // make the leading denominator kernel trivial
    const Kernel K0 = den_.begin()->first;
    if (!K0.is_one()) {
        auto [ki, s] = kinv(K0);
        num_ = gmul_kernel(num_, ki, s);
        den_ = gmul_kernel(den_, ki, s);
    }
    // clear negative exponents and common monomial factors
    bool first = true;
    Monomial m;
    for (auto* g : {&den_, &num_})
        for (auto& [k, p] : *g) {
            Monomial pm = p.min_monomial();
            m = first ? pm : monomial_min(m, pm);
            first = false;
        }
    if (!m.is_one()) {
        Monomial mi = m.inverse();
        for (auto* g : {&den_, &num_})
            for (auto& kv : *g) kv.second = kv.second.mul_monomial(mi);
    }
    // common polynomial factor
    Poly g;
    bool trivial = false;
    for (auto* gp : {&den_, &num_}) {
        for (auto& [k, p] : *gp) {
            g = gcd(g, p);
            if (g.is_constant()) {
                trivial = true;
                break;
            }
        }
        if (trivial) break;
    }
    if (!trivial && !g.is_constant()) {
        for (auto* gp : {&den_, &num_})
            for (auto& kv : *gp) kv.second = exact_div(kv.second, g);
    }
    mpq_class lc = den_.begin()->second.lc();
    if (lc != 1) {
        mpq_class inv = 1 / lc;
        for (auto* gp : {&den_, &num_})
            for (auto& kv : *gp) kv.second = kv.second * inv;
    }
}

bool Expr::is_one() const { return gis_one(num_) && gis_one(den_); }

Expr Expr::operator-() const {
    Expr r = *this;
    for (auto& kv : r.num_) kv.second = -kv.second;
    return r;
}

namespace {

bool pure_den(const GPoly& d) { return d.size() == 1 && d.begin()->first.is_one(); }

}  // namespace

Expr Expr::operator+(const Expr& o) const {
    if (num_.empty()) return o;
    if (o.num_.empty()) return *this;
    Expr r;
    if (den_ == o.den_) {
        r.num_ = gadd(num_, o.num_);
        r.den_ = den_;
    } else if (pure_den(den_) && pure_den(o.den_)) {
        const Poly& d1 = den_.begin()->second;
        const Poly& d2 = o.den_.begin()->second;
        Poly g = gcd(d1, d2);
        Poly c1 = g.is_constant() ? d2 : exact_div(d2, g);  // multiplier for this
        Poly c2 = g.is_constant() ? d1 : exact_div(d1, g);
        r.num_ = gadd(gmul_poly(num_, c1), gmul_poly(o.num_, c2));
        r.den_.clear();
        r.den_.emplace(kernel_one(), d1 * c1);
    } else {
        r.num_ = gadd(gmul(num_, o.den_), gmul(o.num_, den_));
        r.den_ = gmul(den_, o.den_);
    }
    r.normalize();
    return r;
}

Expr Expr::operator-(const Expr& o) const { return *this + (-o); }

Expr Expr::operator*(const Expr& o) const {
    if (num_.empty() || o.num_.empty()) return Expr();
    Expr r;
    r.num_ = gmul(num_, o.num_);
    r.den_ = gmul(den_, o.den_);
    r.normalize();
    return r;
}

Expr Expr::operator/(const Expr& o) const {
    if (o.num_.empty()) throw std::domain_error("division by the zero expression");
    if (num_.empty()) return Expr();
    Expr r;
    r.num_ = gmul(num_, o.den_);
    r.den_ = gmul(den_, o.num_);
    r.normalize();
    return r;
}

Expr Expr::pow(long n) const {
    if (n < 0) return Expr(1) / pow(-n);
    Expr r(1);
    Expr b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

namespace {

bool exact_root(const mpz_class& a, unsigned long q, mpz_class& out) {
    if (a < 0) return false;
    return mpz_root(out.get_mpz_t(), a.get_mpz_t(), q) != 0;
}

}  // namespace

Expr Expr::pow(const Poly& L) const {
    if (L.is_constant()) {
        mpq_class c = L.constant_term();
        if (c.get_den() == 1) {
            if (!c.get_num().fits_slong_p()) throw ClassError("exponent too large");
            return pow(c.get_num().get_si());
        }
    }
    for (auto& [m, c] : L.terms())
        if (m.total_degree() > 1) throw ClassError("exponent must be linear in parameters");
    if (L.has_var(var_x()) || L.has_var(var_t())) throw ClassError("exponent depends on t or x");
    if (num_.empty()) throw ClassError("non-integer power of zero");
    if (num_.size() != 1 || num_.begin()->second.size() != 1 || den_.size() != 1 ||
        den_.begin()->second.size() != 1)
        throw ClassError("non-integer power of a non-monomial base: " + str());
    const Kernel& K = num_.begin()->first;
    mpq_class c = num_.begin()->second.lc() / den_.begin()->second.lc();
    Monomial m = num_.begin()->second.lm() * den_.begin()->second.lm().inverse();
    for (auto& [v, e] : m.powers())
        if (v != var_x()) throw ClassError("non-integer power of " + v->name + " leaves the class");
    if (c <= 0) throw ClassError("non-integer power of a non-positive coefficient");
    Expr coef(1);
    if (c != 1) {
        if (!L.is_constant()) throw ClassError("symbolic power of a constant other than 1");
        mpq_class q = L.constant_term();
        unsigned long den = q.get_den().get_ui();
        mpz_class rn, rd;
        if (!exact_root(c.get_num(), den, rn) || !exact_root(c.get_den(), den, rd))
            throw ClassError("irrational power of a rational constant");
        coef = Expr(mpq_class(rn, rd)).pow(q.get_num().get_si());
    }
    int k = m.degree(var_x());
    Poly Ltot = L * mpq_class(k);
    if (!K.L.is_zero()) {
        Poly prod = K.L * L;
        for (auto& [mm, cc] : prod.terms())
            if (mm.total_degree() > 1) throw ClassError("product of symbolic exponents");
        Ltot += prod;
    }
    Expr r = coef * x_power(Ltot);
    if (!K.R.is_zero()) r = r * exp_of(Expr(K.R * L));
    return r;
}

// ---------------------------------------------------------------- queries

bool Expr::depends_on(Var v) const {
    std::vector<Var> vs;
    collect_gvars(num_, vs);
    collect_gvars(den_, vs);
    return std::find(vs.begin(), vs.end(), v) != vs.end();
}

std::vector<Var> Expr::symbols() const {
    std::vector<Var> vs;
    collect_gvars(num_, vs);
    collect_gvars(den_, vs);
    std::sort(vs.begin(), vs.end(), var_less);
    return vs;
}

bool Expr::has_kernels() const {
    for (auto* g : {&num_, &den_})
        for (auto& [k, p] : *g)
            if (!k.is_one()) return true;
    return false;
}

std::optional<mpq_class> Expr::as_rational() const {
    if (num_.empty()) return mpq_class(0);
    if (!gis_one(den_) || num_.size() != 1 || !num_.begin()->first.is_one()) return std::nullopt;
    const Poly& p = num_.begin()->second;
    if (!p.is_constant()) return std::nullopt;
    return p.constant_term();
}

std::optional<Poly> Expr::as_poly() const {
    if (num_.empty()) return Poly();
    if (!gis_one(den_) || num_.size() != 1 || !num_.begin()->first.is_one()) return std::nullopt;
    return num_.begin()->second;
}

std::optional<RatFunc> Expr::as_ratfunc() const {
    if (num_.empty()) return RatFunc{};
    if (num_.size() != 1 || !num_.begin()->first.is_one() || !pure_den(den_)) return std::nullopt;
    return RatFunc{num_.begin()->second, den_.begin()->second};
}

std::optional<Poly> Expr::as_linear_form() const {
    auto p = as_poly();
    if (!p) return std::nullopt;
    if (p->has_var(var_x()) || p->has_var(var_t())) return std::nullopt;
    for (auto& [m, c] : p->terms())
        if (m.total_degree() > 1 || m.total_degree() < 0) return std::nullopt;
    return p;
}

// ---------------------------------------------------------------- differentiation

namespace {

Expr diff_gpoly(const GPoly& g, Var v) {
    GPoly plain;
    Expr extra;
    for (auto& [k, p] : g) {
        if (k.L.has_var(v))
            throw ClassError("derivative with respect to '" + v->name + "', which appears in an exponent");
        Poly base = p.diff(v);
        if (v == var_x() && !k.L.is_zero()) base += (p * k.L).mul_monomial(Monomial::var(var_x(), -1));
        gadd_into(plain, k, base);
        if (!k.R.is_zero() && (k.R.num.has_var(v) || k.R.den.has_var(v))) {
            GPoly one;
            one.emplace(k, p);
            extra += Expr::from_parts(one, gone()) * Expr(k.R.diff(v));
        }
    }
    return Expr::from_parts(plain, gone()) + extra;
}

}  // namespace

Expr Expr::diff(Var v, unsigned n) const {
    Expr cur = *this;
    for (unsigned i = 0; i < n; ++i) {
        if (cur.num_.empty() || !cur.depends_on(v)) return Expr();
        Expr dn = diff_gpoly(cur.num_, v);
        if (gis_one(cur.den_)) {
            cur = dn;
            continue;
        }
        Expr N = from_parts(cur.num_, gone());
        Expr D = from_parts(cur.den_, gone());
        Expr dd = diff_gpoly(cur.den_, v);
        cur = (dn * D - N * dd) / (D * D);
    }
    return cur;
}

// ---------------------------------------------------------------- substitution

namespace {

bool touches(const Poly& p, const Bindings& b) {
    for (auto& [v, e] : b)
        if (p.has_var(v)) return true;
    return false;
}

Expr subs_poly(const Poly& p, const Bindings& b) {
    if (!touches(p, b)) return Expr(p);
    // pure polynomial images keep everything in Poly arithmetic
    std::map<Var, Poly, VarLess> pb;
    bool all_poly = true;
    for (auto& [v, e] : b) {
        if (!p.has_var(v)) continue;
        auto q = e.as_poly();
        if (!q) {
            all_poly = false;
            break;
        }
        pb.emplace(v, *q);
    }
    if (all_poly) {
        std::map<Var, std::vector<Poly>, VarLess> cache;
        Poly out;
        bool neg = false;
        for (auto& [m, c] : p.terms()) {
            Poly term(c);
            Monomial rest;
            for (auto& [v, e] : m.powers()) {
                auto it = pb.find(v);
                if (it == pb.end()) {
                    rest = rest * Monomial::var(v, e);
                    continue;
                }
                if (e < 0) {
                    neg = true;
                    break;
                }
                auto& pw = cache[v];
                if (pw.empty()) pw.push_back(Poly(1));
                while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * it->second);
                term = term * pw[e];
            }
            if (neg) break;
            out += term.mul_monomial(rest);
        }
        if (!neg) return Expr(out);
    }
    std::map<Var, std::vector<Expr>, VarLess> cache;
    Expr out;
    for (auto& [m, c] : p.terms()) {
        Expr term(c);
        for (auto& [v, e] : m.powers()) {
            auto it = b.find(v);
            if (it == b.end()) {
                term = term * Expr(Poly::var(v, e));
                continue;
            }
            if (e < 0) {
                term = term * it->second.pow(static_cast<long>(e));
                continue;
            }
            auto& pw = cache[v];
            if (pw.empty()) pw.push_back(Expr(1));
            while (static_cast<int>(pw.size()) <= e) pw.push_back(pw.back() * it->second);
            term = term * pw[e];
        }
        out += term;
    }
    return out;
}

Expr subs_kernel(const Kernel& k, const Bindings& b) {
    if (k.is_one()) return Expr(1);
    Expr r(1);
    if (!k.L.is_zero()) {
        Poly L = k.L;
        if (touches(L, b)) {
            auto lf = subs_poly(L, b).as_linear_form();
            if (!lf) throw ClassError("substituted exponent is not a constant linear form");
            L = *lf;
        }
        auto it = b.find(var_x());
        if (it != b.end())
            r = it->second.pow(L);
        else
            r = Expr::x_power(L);
    }
    if (!k.R.is_zero()) {
        Expr R(k.R);
        if (touches(k.R.num, b) || touches(k.R.den, b)) R = subs_poly(k.R.num, b) / subs_poly(k.R.den, b);
        r = r * Expr::exp_of(R);
    }
    return r;
}

Expr subs_gpoly(const GPoly& g, const Bindings& b) {
    Expr out;
    for (auto& [k, p] : g) out += subs_poly(p, b) * subs_kernel(k, b);
    return out;
}

}  // namespace

Expr Expr::subs(const Bindings& b) const {
    if (num_.empty()) return *this;
    bool any = false;
    for (auto& [v, e] : b)
        if (depends_on(v)) {
            any = true;
            break;
        }
    if (!any) return *this;
    Expr n = subs_gpoly(num_, b);
    if (gis_one(den_)) return n;
    return n / subs_gpoly(den_, b);
}

Expr Expr::subs(Var v, const Expr& e) const {
    Bindings b;
    b.emplace(v, e);
    return subs(b);
}

// ---------------------------------------------------------------- numerics

namespace {

struct RealEval {
    Real value;
    Real magnitude;
};

// evaluates sum of poly * kernel at an exact rational point
RealEval eval_gpoly(const GPoly& g, const Point& pt) {
    RealEval out{Real(0), Real(0)};
    for (auto& [k, p] : g) {
        mpq_class pv = 0;
        mpq_class mag = 0;
        for (auto& [m, c] : p.terms()) {
            mpq_class f = c;
            for (auto& [v, e] : m.powers()) {
                mpq_class b = pt.at(v);
                if (e < 0) b = 1 / b;
                for (int i = 0; i < std::abs(e); ++i) f *= b;
            }
            pv += f;
            mag += abs(f);
        }
        Real kv = 1;
        if (!k.L.is_zero()) {
            mpq_class L = k.L.eval_all(pt);
            kv *= mp::pow(to_real(pt.at(var_x())), to_real(L));
        }
        if (!k.R.is_zero()) {
            mpq_class R = k.R.num.eval_all(pt) / k.R.den.eval_all(pt);
            kv *= mp::exp(to_real(R));
        }
        out.value += to_real(pv) * kv;
        out.magnitude += to_real(mag) * mp::abs(kv);
    }
    return out;
}

bool kernels_exact(const GPoly& g, const Point& pt) {
    for (auto& [k, p] : g) {
        if (!k.L.is_zero() && k.L.eval_all(pt).get_den() != 1) return false;
        if (!k.R.is_zero() && k.R.num.eval_all(pt) != 0) return false;
    }
    return true;
}

mpq_class eval_exact(const GPoly& g, const Point& pt) {
    mpq_class s = 0;
    for (auto& [k, p] : g) {
        mpq_class v = p.eval_all(pt);
        if (!k.L.is_zero()) {
            mpq_class L = k.L.eval_all(pt);
            long n = L.get_num().get_si();
            mpq_class x = pt.at(var_x());
            if (n < 0 && x == 0) throw std::domain_error("pole at evaluation point");
            mpq_class b = n >= 0 ? x : mpq_class(1 / x);
            for (long i = 0; i < std::labs(n); ++i) v *= b;
        }
        s += v;
    }
    return s;
}

bool has_pole(const GPoly& g, const Point& pt) {
    for (auto& [k, p] : g) {
        for (auto& [m, c] : p.terms())
            for (auto& [v, e] : m.powers())
                if (e < 0 && pt.at(v) == 0) return true;
        if (!k.R.is_zero() && k.R.den.eval_all(pt) == 0) return true;
    }
    return false;
}

std::string real_str(const Real& r) {
    std::ostringstream os;
    os.precision(30);
    os << r;
    return os.str();
}

}  // namespace

Evaluation Expr::evaluate(const Point& pt) const {
    for (Var v : symbols())
        if (pt.find(v) == pt.end()) throw std::invalid_argument("unbound symbol '" + v->name + "'");
    if (has_kernels()) {
        auto xi = pt.find(var_x());
        for (auto* g : {&num_, &den_})
            for (auto& [k, p] : *g)
                if (!k.L.is_zero() && xi->second <= 0)
                    throw std::domain_error("symbolic power of x evaluated at x <= 0");
    }
    if (has_pole(num_, pt) || has_pole(den_, pt)) throw std::domain_error("pole at evaluation point");
    Evaluation ev;
    if (kernels_exact(num_, pt) && kernels_exact(den_, pt)) {
        mpq_class d = eval_exact(den_, pt);
        if (d == 0) throw std::domain_error("pole at evaluation point");
        ev.exact = true;
        ev.value = eval_exact(num_, pt) / d;
        ev.approx = ev.value.get_d();
        ev.decimal = real_str(to_real(ev.value));
        ev.error_bound = 0;
        return ev;
    }
    RealEval n = eval_gpoly(num_, pt);
    RealEval d = eval_gpoly(den_, pt);
    if (d.value == 0 || mp::abs(d.value) <= d.magnitude * Real(1e-200))
        throw std::domain_error("pole at evaluation point");
    Real v = n.value / d.value;
    // each term carries a relative error below 2^-250 at this precision
    Real rel = Real(1e-70);
    Real bound = rel * (n.magnitude + mp::abs(v) * d.magnitude) / mp::abs(d.value);
    ev.exact = false;
    ev.approx = static_cast<double>(v);
    ev.decimal = real_str(v);
    ev.error_bound = static_cast<double>(bound) + 1e-300;
    return ev;
}

bool Expr::is_zero() const {
    if (num_.empty()) return true;
    // cross-check: a structurally nonzero numerator must be nonzero somewhere
    std::vector<Var> vs;
    collect_gvars(num_, vs);
    collect_gvars(den_, vs);
    std::mt19937_64 rng(g_seed.load());
    int tried = 0;
    for (int attempt = 0; attempt < 200 && tried < 20; ++attempt) {
        Point pt;
        for (Var v : vs) {
            long d = std::uniform_int_distribution<long>(1, 10000)(rng);
            long n;
            if (v == var_x())
                n = std::uniform_int_distribution<long>(1, 10 * d)(rng);
            else
                n = std::uniform_int_distribution<long>(-10 * d, 10 * d)(rng);
            pt[v] = mpq_class(n, d);
            pt[v].canonicalize();
        }
        if (has_pole(num_, pt) || has_pole(den_, pt)) continue;
        RealEval d = eval_gpoly(den_, pt);
        if (mp::abs(d.value) <= d.magnitude * Real(1e-60)) continue;
        ++tried;
        RealEval n = eval_gpoly(num_, pt);
        if (mp::abs(n.value) > n.magnitude * Real(1e-60)) return false;
    }
    throw InternalError("canonical form is nonzero but numerically vanishes: " + str());
}

bool equal(const Expr& a, const Expr& b) { return a == b || (a - b).is_zero(); }

Expr rat(long p, long q) {
    mpq_class r(p, q);
    r.canonicalize();
    return Expr(r);
}

// ---------------------------------------------------------------- printing

std::string Expr::str() const {
    size_t nn = 0, nd = 0;
    std::string ns = gpoly_str(num_, &nn);
    if (gis_one(den_)) return ns;
    std::string ds = gpoly_str(den_, &nd);
    bool den_simple = nd == 1 && ds.find_first_of("*/ ") == std::string::npos && ds[0] != '-';
    if (nn > 1) ns = "(" + ns + ")";
    if (!den_simple) ds = "(" + ds + ")";
    return ns + "/" + ds;
}

// ---------------------------------------------------------------- parsing

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    Expr run() {
        Expr e = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError("unexpected character '" + std::string(1, s_[pos_]) + "'", pos_);
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool eat(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    Expr expr() {
        Expr e = term();
        while (true) {
            if (eat('+'))
                e = e + term();
            else if (eat('-'))
                e = e - term();
            else
                return e;
        }
    }

    Expr term() {
        Expr e = unary();
        while (true) {
            if (eat('*')) {
                e = e * unary();
            } else if (peek('/')) {
                size_t at = pos_;
                ++pos_;
                Expr d = unary();
                if (d.is_structural_zero()) throw ParseError("division by zero", at);
                e = e / d;
            } else {
                return e;
            }
        }
    }

    Expr unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Expr power() {
        Expr b = base();
        if (eat('^')) {
            size_t at = pos_;
            Poly L = exponent();
            try {
                b = b.pow(L);
            } catch (const ClassError& ex) {
                throw ParseError(ex.what(), at);
            }
            skip();
            if (peek('^')) throw ParseError("chained exponent needs parentheses", pos_);
        }
        return b;
    }

    mpz_class integer() {
        skip();
        size_t st = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (st == pos_) throw ParseError("expected integer", pos_);
        return mpz_class(s_.substr(st, pos_ - st));
    }

    std::string ident() {
        skip();
        size_t st = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        return s_.substr(st, pos_ - st);
    }

    bool at_ident() {
        skip();
        return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
    }

    Poly exponent() {
        skip();
        bool neg = eat('-');
        if (peek('(')) {
            size_t at = pos_;
            ++pos_;
            Expr e = expr();
            expect(')');
            auto lf = e.as_linear_form();
            if (!lf) throw ParseError("exponent must be a rational or a linear form in parameters", at);
            return neg ? -*lf : *lf;
        }
        if (at_ident()) {
            std::string id = ident();
            if (id == "t" || id == "x" || id == "exp") throw ParseError("invalid exponent '" + id + "'", pos_);
            Poly p = Poly::var(sym(id));
            return neg ? -p : p;
        }
        mpz_class n = integer();
        if (neg) n = -n;
        return Poly(mpq_class(n));
    }

    Expr base() {
        skip();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr(mpq_class(integer()));
        if (at_ident()) {
            size_t at = pos_;
            std::string id = ident();
            if (peek('(')) {
                if (id != "exp") throw ParseError("unsupported function '" + id + "'", at);
                ++pos_;
                Expr arg = expr();
                expect(')');
                try {
                    return Expr::exp_of(arg);
                } catch (const ClassError& ex) {
                    throw ParseError(ex.what(), at);
                }
            }
            if (id == "exp") throw ParseError("exp requires an argument", at);
            return Expr::var(sym(id));
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_);
    }
};

}  // namespace

Expr Expr::parse(const std::string& text) { return Parser(text).run(); }

Expr parse(const std::string& text) { return Expr::parse(text); }

}  // namespace parapot
