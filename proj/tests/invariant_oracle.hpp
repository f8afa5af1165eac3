#pragma once

// Exact rational linear algebra for checking invariant-subspace computations
// independently of the library.

#include "parapot/funalg.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracle {

using parapot::Expr;
using parapot::ExprMatrix;

using QMat = std::vector<std::vector<mpq_class>>;

inline QMat qmul(const QMat& a, const QMat& b) {
    QMat c(a.size(), std::vector<mpq_class>(b.empty() ? 0 : b[0].size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < c[i].size(); ++j)
            for (size_t k = 0; k < b.size(); ++k) c[i][j] += a[i][k] * b[k][j];
    return c;
}

inline QMat identity(size_t n) {
    QMat m(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// kernel basis of a matrix with n columns
inline std::vector<std::vector<mpq_class>> qkernel(QMat a, size_t n) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < n && r < a.size(); ++c) {
        size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        mpq_class inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            mpq_class f = a[i][c];
            for (size_t j = 0; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::vector<mpq_class>> out;
    for (size_t fc = 0; fc < n; ++fc) {
        if (std::find(pivots.begin(), pivots.end(), fc) != pivots.end()) continue;
        std::vector<mpq_class> v(n);
        v[fc] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][fc];
        out.push_back(v);
    }
    return out;
}

inline size_t qrank(const std::vector<std::vector<mpq_class>>& cols, size_t n) {
    if (cols.empty()) return 0;
    QMat rows(cols.size(), std::vector<mpq_class>(n));
    for (size_t i = 0; i < cols.size(); ++i) rows[i] = cols[i];
    // rank of the column set = n - dim of the common annihilator
    return n - qkernel(rows, n).size();
}

inline QMat stack(std::initializer_list<QMat> parts) {
    QMat out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// characteristic polynomial coefficients c[0..n] of det(zI - M), Faddeev-LeVerrier
inline std::vector<mpq_class> charpoly(const QMat& M) {
    const size_t n = M.size();
    std::vector<mpq_class> c(n + 1);
    c[n] = 1;
    QMat Mk(n, std::vector<mpq_class>(n));
    for (size_t k = 1; k <= n; ++k) {
        QMat A = qmul(M, Mk);
        for (size_t i = 0; i < n; ++i) A[i][i] += c[n - k + 1];
        Mk = A;
        QMat MA = qmul(M, Mk);
        mpq_class tr;
        for (size_t i = 0; i < n; ++i) tr += MA[i][i];
        c[n - k] = -tr / static_cast<long>(k);
    }
    return c;
}

inline mpq_class peval(const std::vector<mpq_class>& c, const mpq_class& z) {
    mpq_class r;
    for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
    return r;
}

inline std::vector<mpz_class> divisors(mpz_class n) {
    if (n < 0) n = -n;
    std::vector<mpz_class> d;
    for (mpz_class k = 1; k * k <= n; ++k)
        if (n % k == 0) {
            d.push_back(k);
            if (k * k != n) d.push_back(n / k);
        }
    return d;
}

inline std::vector<mpq_class> rational_roots(std::vector<mpq_class> c) {
    std::vector<mpq_class> roots;
    while (c.size() > 1 && c[0] == 0) {
        roots.push_back(0);
        c.erase(c.begin());
    }
    if (c.size() <= 1) return roots;
    mpz_class l = 1;
    for (const auto& q : c) l = lcm(l, mpz_class(q.get_den()));
    std::vector<mpz_class> zc;
    for (const auto& q : c) zc.push_back(mpz_class(q * l));
    for (const auto& p : divisors(zc.front()))
        for (const auto& q : divisors(zc.back()))
            for (int sgn : {1, -1}) {
                mpq_class z(p * sgn, q);
                z.canonicalize();
                if (peval(c, z) == 0 && std::find(roots.begin(), roots.end(), z) == roots.end()) roots.push_back(z);
            }
    return roots;
}

// divide by (z - r)
inline std::vector<mpq_class> deflate(const std::vector<mpq_class>& c, const mpq_class& r) {
    const size_t n = c.size() - 1;
    std::vector<mpq_class> q(n);
    mpq_class carry = 0;
    for (size_t i = n; i-- > 0;) {
        carry = c[i + 1] + carry * r;
        q[i] = carry;
    }
    return q;
}

inline QMat poly_at(const std::vector<mpq_class>& c, const QMat& M) {
    const size_t n = M.size();
    QMat acc(n, std::vector<mpq_class>(n));
    for (size_t i = c.size(); i-- > 0;) {
        acc = qmul(acc, M);
        for (size_t j = 0; j < n; ++j) acc[j][j] += c[i];
    }
    return acc;
}

// largest M-invariant subspace inside ker E: kernel of [E; EM; ...; EM^{n-1}]
inline std::vector<std::vector<mpq_class>> unobservable_subspace(const QMat& M, const QMat& E) {
    const size_t n = M.size();
    QMat obs, Mk = identity(n);
    for (size_t k = 0; k < n; ++k) {
        QMat EMk = qmul(E, Mk);
        obs.insert(obs.end(), EMk.begin(), EMk.end());
        Mk = qmul(Mk, M);
    }
    if (obs.empty()) return qkernel(QMat(), n);
    return qkernel(obs, n);
}

// Exhaustive search by irreducible rational factors f of the characteristic polynomial: a real invariant
// line or plane inside ker E belonging to a root of f exists iff some v in ker f(M) has E M^j v = 0 for
// j < deg f (its Galois conjugates then fill a rational invariant subspace inside ker E).
inline bool small_invariant_subspace_exists(const QMat& M, const QMat& E) {
    const size_t n = M.size();
    std::vector<std::vector<mpq_class>> factors, rest{charpoly(M)};
    auto cp = rest[0];
    for (const auto& r : rational_roots(cp)) {
        factors.push_back({-r, 1});
        while (peval(cp, r) == 0) cp = deflate(cp, r);
    }
    if (cp.size() > 1) factors.push_back(cp);  // degree <= 3 without rational roots is irreducible
    for (const auto& f : factors) {
        QMat cond = poly_at(f, M), Mj = identity(n);
        for (size_t j = 0; j + 1 < f.size(); ++j) {
            QMat EMj = qmul(E, Mj);
            cond.insert(cond.end(), EMj.begin(), EMj.end());
            Mj = qmul(Mj, M);
        }
        if (!qkernel(cond, n).empty()) return true;
    }
    return false;
}

inline ExprMatrix to_expr(const QMat& m, size_t cols) {
    ExprMatrix out(m.size(), cols);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < cols; ++j) out(i, j) = Expr(m[i][j]);
    return out;
}

inline std::vector<mpq_class> column(const ExprMatrix& S, size_t j) {
    std::vector<mpq_class> c(S.rows());
    for (size_t i = 0; i < S.rows(); ++i) {
        auto q = S(i, j).as_rational();
        if (!q) throw std::runtime_error("non-rational basis entry");
        c[i] = *q;
    }
    return c;
}

// A random basis T and a matrix block upper-triangular in it, so the first k
// columns of T span an invariant subspace; E annihilates those columns.
struct PlantedCase {
    size_t n = 0, k = 0;
    QMat M, E, T;
};

inline PlantedCase planted_case(std::mt19937_64& rng, int trial) {
    std::uniform_int_distribution<int> small(-3, 3), dim(1, 3);
    PlantedCase c;
    const size_t n = c.n = static_cast<size_t>(dim(rng));
    do {
        c.T.assign(n, std::vector<mpq_class>(n));
        for (auto& row : c.T)
            for (auto& x : row) x = small(rng);
    } while (!qkernel(c.T, n).empty());
    const size_t k = c.k = static_cast<size_t>(trial % static_cast<int>(n + 1));
    QMat B(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!(i >= k && j < k)) B[i][j] = small(rng);
    if (trial % 5 == 4 && n >= 2 && k != 1) {
        // rotation block: an invariant plane without rational eigenvectors
        B[0][0] = 0;
        B[0][1] = -1;
        B[1][0] = 1;
        B[1][1] = 0;
    }
    QMat Tinv(n, std::vector<mpq_class>(n));
    for (size_t j = 0; j < n; ++j) {
        QMat aug = c.T;
        for (size_t i = 0; i < n; ++i) aug[i].push_back(i == j ? -1 : 0);
        auto ker = qkernel(aug, n + 1);
        for (size_t i = 0; i < n; ++i) Tinv[i][j] = ker.at(0)[i] / ker.at(0)[n];
    }
    c.M = qmul(qmul(c.T, B), Tinv);
    const size_t m = static_cast<size_t>(trial % 3);
    c.E.assign(m, std::vector<mpq_class>(n));
    for (size_t r = 0; r < m; ++r)
        for (size_t i = k; i < n; ++i) {
            mpq_class f = small(rng);
            for (size_t j = 0; j < n; ++j) c.E[r][j] += f * Tinv[i][j];
        }
    return c;
}

struct Verdict {
    bool same_space = false;      // library basis spans the unobservable subspace
    bool contains_planted = false;
    bool emptiness_agrees = false;  // against the factor search
    bool nonempty = false;
    bool ok() const { return same_space && contains_planted && emptiness_agrees; }
};

inline Verdict compare(const PlantedCase& c, const ExprMatrix& S) {
    const size_t n = c.n;
    Verdict v;
    auto U = unobservable_subspace(c.M, c.E);
    std::vector<std::vector<mpq_class>> cols;
    for (size_t j = 0; j < S.cols(); ++j) cols.push_back(column(S, j));
    auto both = cols;
    both.insert(both.end(), U.begin(), U.end());
    v.same_space = qrank(cols, n) == U.size() && qrank(both, n) == U.size();
    v.contains_planted = true;
    for (size_t j = 0; j < c.k; ++j) {
        auto with = cols;
        std::vector<mpq_class> tj(n);
        for (size_t i = 0; i < n; ++i) tj[i] = c.T[i][j];
        with.push_back(tj);
        v.contains_planted = v.contains_planted && qrank(with, n) == qrank(cols, n);
    }
    v.nonempty = S.cols() > 0;
    v.emptiness_agrees = v.nonempty == small_invariant_subspace_exists(c.M, c.E);
    return v;
}

}  // namespace oracle
