#include "parapot/poly.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace parapot {

namespace {

struct SymbolTable {
    std::mutex mu;
    std::unordered_map<std::string, std::unique_ptr<Symbol>> map;
    Var x = nullptr;
    Var t = nullptr;

    SymbolTable() {
        x = intern("x");
        t = intern("t");
    }

    Var intern(const std::string& n) {
        auto it = map.find(n);
        if (it != map.end()) return it->second.get();
        int rank = n == "x" ? 0 : (n == "t" ? 1 : 2);
        auto s = std::make_unique<Symbol>(Symbol{n, rank});
        Var v = s.get();
        map.emplace(n, std::move(s));
        return v;
    }
};

SymbolTable& table() {
    static SymbolTable tab;
    return tab;
}

}  // namespace

Var sym(const std::string& name) {
    auto& tab = table();
    std::lock_guard<std::mutex> lock(tab.mu);
    return tab.intern(name);
}

Var var_x() { return table().x; }
Var var_t() { return table().t; }

bool var_less(Var a, Var b) {
    if (a == b) return false;
    if (a->rank != b->rank) return a->rank < b->rank;
    return a->name < b->name;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(Var v, int e) {
    Monomial m;
    if (e != 0) m.p_.push_back({v, e});
    return m;
}

int Monomial::degree(Var v) const {
    for (auto& [w, e] : p_)
        if (w == v) return e;
    return 0;
}

int Monomial::total_degree() const {
    int d = 0;
    for (auto& pe : p_) d += pe.second;
    return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.p_.reserve(p_.size() + o.p_.size());
    size_t i = 0, j = 0;
    while (i < p_.size() || j < o.p_.size()) {
        if (j == o.p_.size() || (i < p_.size() && var_less(p_[i].first, o.p_[j].first))) {
            r.p_.push_back(p_[i++]);
        } else if (i == p_.size() || var_less(o.p_[j].first, p_[i].first)) {
            r.p_.push_back(o.p_[j++]);
        } else {
            int e = p_[i].second + o.p_[j].second;
            if (e != 0) r.p_.push_back({p_[i].first, e});
            ++i;
            ++j;
        }
    }
    return r;
}

Monomial Monomial::inverse() const {
    Monomial r = *this;
    for (auto& pe : r.p_) pe.second = -pe.second;
    return r;
}

bool Monomial::divides_into(const Monomial& o, Monomial& q) const {
    // does o divide *this (as polynomials with nonnegative exponents)?
    q = *this * o.inverse();
    for (auto& pe : q.p_)
        if (pe.second < 0) return false;
    return true;
}

Monomial Monomial::without(Var v) const {
    Monomial r;
    for (auto& pe : p_)
        if (pe.first != v) r.p_.push_back(pe);
    return r;
}

Monomial monomial_min(const Monomial& a, const Monomial& b) {
    Monomial r;
    size_t i = 0, j = 0;
    while (i < a.p_.size() || j < b.p_.size()) {
        if (j == b.p_.size() || (i < a.p_.size() && var_less(a.p_[i].first, b.p_[j].first))) {
            if (a.p_[i].second < 0) r.p_.push_back(a.p_[i]);
            ++i;
        } else if (i == a.p_.size() || var_less(b.p_[j].first, a.p_[i].first)) {
            if (b.p_[j].second < 0) r.p_.push_back(b.p_[j]);
            ++j;
        } else {
            int e = std::min(a.p_[i].second, b.p_[j].second);
            if (e != 0) r.p_.push_back({a.p_[i].first, e});
            ++i;
            ++j;
        }
    }
    return r;
}

Monomial monomial_gcd(const Monomial& a, const Monomial& b) {
    Monomial m = monomial_min(a, b);
    Monomial r;
    for (auto& pe : m.p_)
        if (pe.second > 0) r.p_.push_back(pe);
    return r;
}

int lex_compare(const Monomial& a, const Monomial& b) {
    auto& pa = a.powers();
    auto& pb = b.powers();
    size_t i = 0, j = 0;
    while (i < pa.size() || j < pb.size()) {
        if (j == pb.size() || (i < pa.size() && var_less(pa[i].first, pb[j].first)))
            return pa[i].second > 0 ? 1 : -1;
        if (i == pa.size() || var_less(pb[j].first, pa[i].first))
            return pb[j].second > 0 ? -1 : 1;
        if (pa[i].second != pb[j].second) return pa[i].second > pb[j].second ? 1 : -1;
        ++i;
        ++j;
    }
    return 0;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const mpq_class& c) {
    if (c != 0) t_.emplace(Monomial(), c);
}

Poly Poly::var(Var v, int e) {
    Poly p;
    p.t_.emplace(Monomial::var(v, e), mpq_class(1));
    return p;
}

Poly Poly::term(const mpq_class& c, const Monomial& m) {
    Poly p;
    if (c != 0) p.t_.emplace(m, c);
    return p;
}

void Poly::add_term(const Monomial& m, const mpq_class& c) {
    if (c == 0) return;
    auto [it, ins] = t_.emplace(m, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

bool Poly::is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }

bool Poly::is_one() const { return t_.size() == 1 && t_.begin()->first.is_one() && t_.begin()->second == 1; }

mpq_class Poly::constant_term() const {
    auto it = t_.find(Monomial());
    return it == t_.end() ? mpq_class(0) : it->second;
}

int Poly::degree(Var v) const {
    int d = 0;
    bool first = true;
    for (auto& [m, c] : t_) {
        int e = m.degree(v);
        if (first || e > d) d = e;
        first = false;
    }
    return d;
}

int Poly::min_degree(Var v) const {
    int d = 0;
    bool first = true;
    for (auto& [m, c] : t_) {
        int e = m.degree(v);
        if (first || e < d) d = e;
        first = false;
    }
    return d;
}

bool Poly::has_var(Var v) const {
    for (auto& [m, c] : t_)
        if (m.degree(v) != 0) return true;
    return false;
}

std::vector<Var> Poly::vars() const {
    std::vector<Var> out;
    for (auto& [m, c] : t_)
        for (auto& pe : m.powers())
            if (std::find(out.begin(), out.end(), pe.first) == out.end()) out.push_back(pe.first);
    std::sort(out.begin(), out.end(), var_less);
    return out;
}

Monomial Poly::min_monomial() const {
    if (t_.empty()) return Monomial();
    Monomial m = t_.begin()->first;
    bool first = true;
    Monomial acc;
    for (auto& [mm, c] : t_) {
        if (first) {
            acc = mm;
            first = false;
        } else {
            acc = monomial_min(acc, mm);
        }
    }
    (void)m;
    return acc;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& kv : r.t_) kv.second = -kv.second;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r;
    if (t_.empty() || o.t_.empty()) return r;
    for (auto& [m1, c1] : t_)
        for (auto& [m2, c2] : o.t_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

Poly Poly::operator*(const mpq_class& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& kv : r.t_) kv.second *= c;
    return r;
}

Poly Poly::mul_monomial(const Monomial& m) const {
    if (m.is_one()) return *this;
    Poly r;
    for (auto& [mm, c] : t_) r.t_.emplace_hint(r.t_.end(), mm * m, c);
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly r(1);
    Poly b = *this;
    while (n) {
        if (n & 1) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

Poly Poly::diff(Var v) const {
    Poly r;
    for (auto& [m, c] : t_) {
        int e = m.degree(v);
        if (e == 0) continue;
        r.add_term(m * Monomial::var(v, -1), c * e);
    }
    return r;
}

std::map<int, Poly> Poly::coeffs(Var v) const {
    std::map<int, Poly> out;
    for (auto& [m, c] : t_) out[m.degree(v)].add_term(m.without(v), c);
    return out;
}

Poly Poly::coeff(Var v, int e) const {
    Poly r;
    for (auto& [m, c] : t_)
        if (m.degree(v) == e) r.add_term(m.without(v), c);
    return r;
}

Poly Poly::eval(Var v, const mpq_class& value) const {
    Poly r;
    for (auto& [m, c] : t_) {
        int e = m.degree(v);
        if (e == 0) {
            r.add_term(m, c);
            continue;
        }
        mpq_class f = 1;
        mpq_class b = e > 0 ? value : mpq_class(1 / value);
        for (int k = 0; k < std::abs(e); ++k) f *= b;
        r.add_term(m.without(v), c * f);
    }
    return r;
}

mpq_class Poly::eval_all(const std::map<Var, mpq_class, VarLess>& pt) const {
    mpq_class s = 0;
    for (auto& [m, c] : t_) {
        mpq_class f = c;
        for (auto& [v, e] : m.powers()) {
            auto it = pt.find(v);
            if (it == pt.end()) throw std::invalid_argument("unbound symbol '" + v->name + "'");
            if (e < 0 && it->second == 0) throw std::domain_error("pole at evaluation point");
            mpq_class b = e > 0 ? it->second : mpq_class(1 / it->second);
            for (int k = 0; k < std::abs(e); ++k) f *= b;
        }
        s += f;
    }
    return s;
}

int Poly::compare(const Poly& o) const {
    auto i = t_.begin();
    auto j = o.t_.begin();
    for (; i != t_.end() && j != o.t_.end(); ++i, ++j) {
        int c = lex_compare(i->first, j->first);
        if (c != 0) return c;
        int k = cmp(i->second, j->second);
        if (k != 0) return k < 0 ? -1 : 1;
    }
    if (i == t_.end() && j == o.t_.end()) return 0;
    return i == t_.end() ? -1 : 1;
}

std::string rational_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

std::string monomial_str(const Monomial& m) {
    std::string s;
    for (auto& [v, e] : m.powers()) {
        if (!s.empty()) s += "*";
        s += v->name;
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

}  // namespace

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : t_) {
        mpq_class a = abs(c);
        std::string body;
        std::string ms = monomial_str(m);
        if (ms.empty())
            body = rational_str(a);
        else if (a == 1)
            body = ms;
        else
            body = rational_str(a) + "*" + ms;
        if (first)
            s += (c < 0 ? "-" : "") + body;
        else
            s += (c < 0 ? " - " : " + ") + body;
        first = false;
    }
    return s;
}

// ---------------------------------------------------------------- division, gcd

bool try_div(const Poly& a, const Poly& b, Poly& q) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    q = Poly();
    if (a.is_zero()) return true;
    if (b.is_constant()) {
        q = a * mpq_class(1 / b.lc());
        return true;
    }
    if (b.is_monomial()) {
        Monomial inv = b.lm().inverse();
        mpq_class ci = 1 / b.lc();
        for (auto& [m, c] : a.terms()) {
            Monomial qm;
            if (!m.divides_into(b.lm(), qm)) return false;
        }
        q = a.mul_monomial(inv) * ci;
        return true;
    }
    Poly r = a;
    const Monomial& lb = b.lm();
    mpq_class lcb = b.lc();
    while (!r.is_zero()) {
        Monomial qm;
        if (!r.lm().divides_into(lb, qm)) return false;
        mpq_class qc = r.lc() / lcb;
        Poly t = Poly::term(qc, qm);
        q += t;
        r -= b.mul_monomial(qm) * qc;
    }
    return true;
}

Poly exact_div(const Poly& a, const Poly& b) {
    Poly q;
    if (!try_div(a, b, q)) throw std::domain_error("inexact polynomial division");
    return q;
}

Poly monic(const Poly& a) {
    if (a.is_zero()) return a;
    return a * mpq_class(1 / a.lc());
}

Monomial negative_part(const Poly& a) {
    Monomial m = a.min_monomial();
    Monomial r;
    for (auto& [v, e] : m.powers())
        if (e < 0) r = r * Monomial::var(v, e);
    return r;
}

Poly pseudo_rem(const Poly& a, const Poly& b, Var v) {
    int db = b.degree(v);
    Poly lcb = b.coeff(v, db);
    Poly r = a;
    while (!r.is_zero() && r.degree(v) >= db) {
        int dr = r.degree(v);
        Poly lcr = r.coeff(v, dr);
        r = r * lcb - (b * lcr).mul_monomial(Monomial::var(v, dr - db));
    }
    return r;
}

namespace {

Poly gcd_rec(const Poly& a, const Poly& b);

Poly content_rec(const Poly& a, Var v) {
    auto cs = a.coeffs(v);
    Poly g;
    for (auto& [e, c] : cs) {
        g = gcd_rec(g, c);
        if (g.is_constant()) return Poly(1);
    }
    return g;
}

Poly primitive(const Poly& a, Var v) {
    Poly c = content_rec(a, v);
    if (c.is_constant()) return a;
    return exact_div(a, c);
}

// gcd of a polynomial with a monomial
Poly gcd_with_monomial(const Poly& a, const Monomial& m) {
    Monomial g = m;
    for (auto& [mm, c] : a.terms()) {
        g = monomial_gcd(g, mm);
        if (g.is_one()) break;
    }
    return Poly::term(1, g);
}

Poly gcd_rec(const Poly& a, const Poly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    if (a.is_constant() || b.is_constant()) return Poly(1);
    if (a.is_monomial()) return gcd_with_monomial(b, a.lm());
    if (b.is_monomial()) return gcd_with_monomial(a, b.lm());

    // pull out common monomial factors
    Monomial ma = a.min_monomial();
    Monomial mb = b.min_monomial();
    Monomial mg = monomial_gcd(ma, mb);
    Poly A = ma.is_one() ? a : a.mul_monomial(ma.inverse());
    Poly B = mb.is_one() ? b : b.mul_monomial(mb.inverse());
    if (A.is_constant() || B.is_constant()) return Poly::term(1, mg);

    auto va = A.vars();
    auto vb = B.vars();
    for (Var v : va)
        if (!B.has_var(v)) return gcd_rec(content_rec(A, v), B).mul_monomial(mg);
    for (Var v : vb)
        if (!A.has_var(v)) return gcd_rec(A, content_rec(B, v)).mul_monomial(mg);

    // both share all variables: choose the one with the smallest degree
    Var v = va.front();
    int best = A.degree(v) + B.degree(v);
    for (Var w : va) {
        int d = A.degree(w) + B.degree(w);
        if (d < best) {
            best = d;
            v = w;
        }
    }
    Poly ca = content_rec(A, v);
    Poly cb = content_rec(B, v);
    Poly pa = ca.is_constant() ? A : exact_div(A, ca);
    Poly pb = cb.is_constant() ? B : exact_div(B, cb);
    Poly c = gcd_rec(ca, cb);
    if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
    Poly g;
    while (true) {
        Poly r = pseudo_rem(pa, pb, v);
        if (r.is_zero()) {
            g = pb;
            break;
        }
        if (r.degree(v) == 0) {
            g = Poly(1);
            break;
        }
        pa = pb;
        pb = primitive(r, v);
        pb = monic(pb);
    }
    g = primitive(g, v);
    return monic(c * g).mul_monomial(mg);
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    Poly r = gcd_rec(a, b);
    return monic(r);
}

Poly content(const Poly& a, Var v) { return monic(content_rec(a, v)); }

}  // namespace parapot
