#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace parapot {

// Interned symbol. Pointers are stable for the lifetime of the process.
struct Symbol {
    std::string name;
    int rank;  // 0 for x, 1 for t, 2 otherwise
};
using Var = const Symbol*;

Var sym(const std::string& name);
Var var_x();
Var var_t();
bool var_less(Var a, Var b);  // a is more significant than b

struct VarLess {
    bool operator()(Var a, Var b) const { return var_less(a, b); }
};

// Sparse exponent vector sorted by var_less. Exponents may be negative
// (Laurent monomials) in intermediate results.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(Var v, int e = 1);

    const std::vector<std::pair<Var, int>>& powers() const { return p_; }
    int degree(Var v) const;
    bool is_one() const { return p_.empty(); }
    int total_degree() const;

    Monomial operator*(const Monomial& o) const;
    Monomial inverse() const;
    // returns false if o does not divide *this
    bool divides_into(const Monomial& o, Monomial& quotient) const;
    Monomial without(Var v) const;

    bool operator==(const Monomial& o) const { return p_ == o.p_; }
    bool operator!=(const Monomial& o) const { return p_ != o.p_; }

private:
    std::vector<std::pair<Var, int>> p_;
    friend Monomial monomial_gcd(const Monomial&, const Monomial&);
    friend Monomial monomial_min(const Monomial&, const Monomial&);
};

// lexicographic comparison; returns -1, 0, 1
int lex_compare(const Monomial& a, const Monomial& b);
Monomial monomial_gcd(const Monomial& a, const Monomial& b);  // nonnegative parts
Monomial monomial_min(const Monomial& a, const Monomial& b);  // componentwise min, 0 for absent

struct LexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return lex_compare(a, b) > 0; }
};

// Multivariate (Laurent) polynomial over Q. Terms are kept in decreasing
// lex order so begin() is the leading term.
class Poly {
public:
    using Terms = std::map<Monomial, mpq_class, LexGreater>;

    Poly() = default;
    Poly(const mpq_class& c);
    Poly(long c) : Poly(mpq_class(c)) {}
    static Poly var(Var v, int e = 1);
    static Poly term(const mpq_class& c, const Monomial& m);

    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    bool is_monomial() const { return t_.size() == 1; }
    mpq_class constant_term() const;
    const mpq_class& lc() const { return t_.begin()->second; }
    const Monomial& lm() const { return t_.begin()->first; }
    size_t size() const { return t_.size(); }

    int degree(Var v) const;
    int min_degree(Var v) const;
    bool has_var(Var v) const;
    std::vector<Var> vars() const;
    Monomial min_monomial() const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const mpq_class& c) const;
    Poly mul_monomial(const Monomial& m) const;
    Poly pow(unsigned n) const;

    Poly diff(Var v) const;
    // coefficients with respect to v (keys are exponents of v)
    std::map<int, Poly> coeffs(Var v) const;
    Poly coeff(Var v, int e) const;

    Poly eval(Var v, const mpq_class& value) const;
    mpq_class eval_all(const std::map<Var, mpq_class, VarLess>& pt) const;

    bool operator==(const Poly& o) const { return t_ == o.t_; }
    bool operator!=(const Poly& o) const { return !(t_ == o.t_); }
    int compare(const Poly& o) const;

    std::string str() const;

private:
    Terms t_;
    void add_term(const Monomial& m, const mpq_class& c);
};

// exact division; throws std::domain_error if b does not divide a
Poly exact_div(const Poly& a, const Poly& b);
bool try_div(const Poly& a, const Poly& b, Poly& q);
Poly monic(const Poly& a);
Poly gcd(const Poly& a, const Poly& b);
Poly content(const Poly& a, Var v);
Poly pseudo_rem(const Poly& a, const Poly& b, Var v);
// all x^{-k} style negative exponents cleared: returns the monomial needed
Monomial negative_part(const Poly& a);

std::string rational_str(const mpq_class& q);

}  // namespace parapot
