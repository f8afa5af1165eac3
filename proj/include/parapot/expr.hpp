#pragma once

#include "parapot/poly.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace parapot {

struct ParseError : std::runtime_error {
    size_t offset;
    ParseError(const std::string& msg, size_t off)
        : std::runtime_error(msg + " at byte " + std::to_string(off)), offset(off) {}
};

// Raised when an operation would leave the supported expression class.
struct ClassError : std::domain_error {
    using std::domain_error::domain_error;
};

// Raised when the structural zero test and the numeric oracle disagree.
struct InternalError : std::logic_error {
    using std::logic_error::logic_error;
};

// Canonical rational function: gcd(num, den) = 1, den monic.
struct RatFunc {
    Poly num;
    Poly den{1};

    static RatFunc make(const Poly& n, const Poly& d);
    bool is_zero() const { return num.is_zero(); }
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-() const { return RatFunc{-num, den}; }
    RatFunc operator*(const mpq_class& c) const;
    RatFunc operator*(const Poly& p) const;
    RatFunc diff(Var v) const;
    int compare(const RatFunc& o) const;
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }
    std::string str() const;
};

// Transcendental factor x^L * exp(R). L is a linear form in parameters whose
// constant part lies in [0, 1); integer parts of powers of x live in monomials.
struct Kernel {
    Poly L;
    RatFunc R;
    bool is_one() const { return L.is_zero() && R.is_zero(); }
    bool operator==(const Kernel& o) const { return L == o.L && R == o.R; }
};

struct KernelLess {
    bool operator()(const Kernel& a, const Kernel& b) const;
};

using GPoly = std::map<Kernel, Poly, KernelLess>;

struct Evaluation {
    bool exact = false;
    mpq_class value;        // exact value when exact is set
    std::string decimal;    // decimal approximation (always filled)
    double approx = 0.0;
    double error_bound = 0.0;  // absolute error bound of the approximation
};

using Bindings = std::map<Var, class Expr, VarLess>;
using Point = std::map<Var, mpq_class, VarLess>;

// Exact function of t, x and named symbols: a quotient of sums of
// poly * x^L * exp(R) terms kept in canonical form.
class Expr {
public:
    Expr();
    Expr(const mpq_class& c);
    Expr(long c) : Expr(mpq_class(c)) {}
    Expr(int c) : Expr(mpq_class(c)) {}
    explicit Expr(const Poly& p);
    Expr(const RatFunc& r);
    static Expr var(Var v);
    static Expr symbol(const std::string& name) { return var(sym(name)); }
    static Expr t() { return var(var_t()); }
    static Expr x() { return var(var_x()); }
    static Expr parse(const std::string& text);
    static Expr x_power(const Poly& L);
    static Expr exp_of(const Expr& r);
    static Expr from_parts(const GPoly& num, const GPoly& den);

    const GPoly& num() const { return num_; }
    const GPoly& den() const { return den_; }

    Expr operator-() const;
    Expr operator+(const Expr& o) const;
    Expr operator-(const Expr& o) const;
    Expr operator*(const Expr& o) const;
    Expr operator/(const Expr& o) const;
    Expr& operator+=(const Expr& o) { return *this = *this + o; }
    Expr& operator-=(const Expr& o) { return *this = *this - o; }
    Expr& operator*=(const Expr& o) { return *this = *this * o; }
    Expr& operator/=(const Expr& o) { return *this = *this / o; }
    Expr pow(long n) const;
    // power with rational or parameter-linear exponent; restricted to
    // monomial-like bases with positive coefficient
    Expr pow(const Poly& exponent) const;

    // structural equality of canonical forms
    bool operator==(const Expr& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Expr& o) const { return !(*this == o); }

    // zero test on the canonical form, cross-checked numerically
    bool is_zero() const;
    bool is_structural_zero() const { return num_.empty(); }
    bool is_one() const;

    Expr diff(Var v, unsigned n = 1) const;
    Expr dt(unsigned n = 1) const { return diff(var_t(), n); }
    Expr dx(unsigned n = 1) const { return diff(var_x(), n); }
    Expr subs(const Bindings& b) const;
    Expr subs(Var v, const Expr& e) const;

    bool depends_on(Var v) const;
    std::vector<Var> symbols() const;  // all symbols incl. those inside kernels
    bool has_kernels() const;
    bool is_rational_function() const { return !has_kernels(); }
    std::optional<mpq_class> as_rational() const;
    std::optional<Poly> as_poly() const;
    std::optional<RatFunc> as_ratfunc() const;
    // constant linear form in parameters (used as a symbolic exponent)
    std::optional<Poly> as_linear_form() const;

    Evaluation evaluate(const Point& pt) const;

    std::string str() const;

private:
    GPoly num_;
    GPoly den_;
    void normalize();
};

inline Expr operator+(long a, const Expr& b) { return Expr(a) + b; }
inline Expr operator-(long a, const Expr& b) { return Expr(a) - b; }
inline Expr operator*(long a, const Expr& b) { return Expr(a) * b; }
inline Expr operator/(long a, const Expr& b) { return Expr(a) / b; }

Expr parse(const std::string& text);
bool equal(const Expr& a, const Expr& b);  // is_zero(a - b)
Expr rat(long p, long q = 1);

// seed for the numeric zero-test oracle (default 0)
void set_oracle_seed(uint64_t seed);
uint64_t oracle_seed();

}  // namespace parapot
