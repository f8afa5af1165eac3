#include "parapot/funalg.hpp"

#include "parapot/pde.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace parapot {

ExprMatrix::ExprMatrix(std::initializer_list<std::initializer_list<Expr>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
        if (r.size() != cols_) throw std::invalid_argument("matrix rows must have equal length");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ExprMatrix ExprMatrix::without(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const {
    auto skip = [](const std::vector<size_t>& v, size_t i) {
        for (size_t k : v)
            if (k == i) return true;
        return false;
    };
    std::vector<size_t> keep_r, keep_c;
    for (size_t i = 0; i < rows_; ++i)
        if (!skip(rows, i)) keep_r.push_back(i);
    for (size_t j = 0; j < cols_; ++j)
        if (!skip(cols, j)) keep_c.push_back(j);
    ExprMatrix out(keep_r.size(), keep_c.size());
    for (size_t i = 0; i < keep_r.size(); ++i)
        for (size_t j = 0; j < keep_c.size(); ++j) out(i, j) = (*this)(keep_r[i], keep_c[j]);
    return out;
}

Expr determinant_bareiss(const ExprMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return Expr(1);
    std::vector<std::vector<Poly>> a(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            auto p = m(i, j).as_poly();
            if (!p) throw ClassError("fraction-free elimination needs polynomial entries");
            a[i][j] = *p;
        }
    int sign = 1;
    Poly prev(1);
    for (size_t k = 0; k + 1 < n; ++k) {
        size_t piv = k;
        while (piv < n && a[piv][k].is_zero()) ++piv;
        if (piv == n) return Expr(0);
        if (piv != k) {
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j)
                a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
            a[i][k] = Poly();
        }
        prev = a[k][k];
    }
    Poly d = a[n - 1][n - 1];
    if (sign < 0) d = -d;
    return Expr(d);
}

namespace {

Expr cofactor_rec(const ExprMatrix& m, size_t row, unsigned used,
                  std::unordered_map<unsigned, Expr>& memo) {
    const size_t n = m.rows();
    if (row == n) return Expr(1);
    auto it = memo.find(used);
    if (it != memo.end()) return it->second;
    Expr acc;
    int sign = 1;
    for (size_t j = 0; j < n; ++j) {
        if (used & (1u << j)) continue;
        if (!m(row, j).is_structural_zero()) {
            Expr term = m(row, j) * cofactor_rec(m, row + 1, used | (1u << j), memo);
            acc = sign > 0 ? acc + term : acc - term;
        }
        sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
}

}  // namespace

Expr determinant_cofactor(const ExprMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    if (m.rows() > 24) throw std::invalid_argument("matrix too large for cofactor expansion");
    std::unordered_map<unsigned, Expr> memo;
    return cofactor_rec(m, 0, 0, memo);
}

Expr determinant(const ExprMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("determinant of a non-square matrix");
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).as_poly()) return determinant_cofactor(m);
    return determinant_bareiss(m);
}

ExprMatrix wronski_matrix(const FunctionTuple& fs) {
    const size_t n = fs.size();
    ExprMatrix w(n, n);
    for (size_t j = 0; j < n; ++j) {
        Expr d = fs[j];
        for (size_t i = 0; i < n; ++i) {
            w(i, j) = d;
            if (i + 1 < n) d = d.dx();
        }
    }
    return w;
}

Expr wronskian(const FunctionTuple& fs) { return determinant(wronski_matrix(fs)); }

const char* to_string(Dependence d) {
    switch (d) {
        case Dependence::independent: return "independent";
        case Dependence::dependent: return "dependent";
        case Dependence::dependent_or_undecided: return "dependent-or-undecided";
    }
    return "?";
}

Dependence is_linearly_independent(const FunctionTuple& fs, const ParabolicEquation* evolution) {
    if (evolution) {
        for (size_t i = 0; i < fs.size(); ++i)
            if (!is_solution(*evolution, fs[i]))
                throw std::invalid_argument("entry " + std::to_string(i + 1) +
                                            " does not solve the evolution equation");
    }
    if (!wronskian(fs).is_zero()) return Dependence::independent;
    return evolution ? Dependence::dependent : Dependence::dependent_or_undecided;
}

namespace {

bool is_tx(Var v) { return v == var_x() || v == var_t(); }

// Rows are indexed by (kernel, monomial in t and x); entries are the
// remaining parameter-only coefficients.
ExprMatrix coefficient_matrix_poly_den(const FunctionTuple& fs);

// Transcendental denominators are cleared by a common nonzero factor, which
// leaves constant-coefficient relations unchanged.
ExprMatrix coefficient_matrix(const FunctionTuple& fs) {
    auto simple = [](const Expr& f) { return f.den().size() == 1 && f.den().begin()->first.is_one(); };
    std::vector<GPoly> dens;
    for (const Expr& f : fs)
        if (!simple(f) && std::find(dens.begin(), dens.end(), f.den()) == dens.end()) dens.push_back(f.den());
    if (dens.empty()) return coefficient_matrix_poly_den(fs);
    const GPoly one{{Kernel{}, Poly(1)}};
    FunctionTuple scaled;
    for (const Expr& f : fs) {
        Expr g = simple(f) ? f : Expr::from_parts(f.num(), one);
        for (const auto& d : dens)
            if (simple(f) || !(d == f.den())) g *= Expr::from_parts(d, one);
        scaled.push_back(g);
    }
    return coefficient_matrix_poly_den(scaled);
}

ExprMatrix coefficient_matrix_poly_den(const FunctionTuple& fs) {
    Poly L(1);
    std::vector<Poly> dens;
    for (const Expr& f : fs) {
        if (f.den().size() != 1 || !f.den().begin()->first.is_one())
            throw ClassError("coefficient comparison needs a polynomial denominator");
        const Poly& d = f.den().begin()->second;
        dens.push_back(d);
        L = exact_div(L * d, gcd(L, d));
    }
    using Row = std::map<Monomial, std::vector<Poly>, LexGreater>;
    std::map<Kernel, Row, KernelLess> table;
    for (size_t i = 0; i < fs.size(); ++i) {
        Poly scale = exact_div(L, dens[i]);
        for (const auto& [k, p] : fs[i].num()) {
            Poly q = p * scale;
            Row& row = table[k];
            for (const auto& [m, c] : q.terms()) {
                Monomial tx, rest;
                for (const auto& [v, e] : m.powers()) {
                    if (is_tx(v))
                        tx = tx * Monomial::var(v, e);
                    else
                        rest = rest * Monomial::var(v, e);
                }
                auto& cell = row[tx];
                if (cell.empty()) cell.resize(fs.size());
                cell[i] += Poly::term(c, rest);
            }
        }
    }
    size_t nrows = 0;
    for (const auto& [k, row] : table) nrows += row.size();
    ExprMatrix m(nrows, fs.size());
    size_t r = 0;
    for (const auto& [k, row] : table)
        for (const auto& [mon, cells] : row) {
            for (size_t j = 0; j < fs.size(); ++j) m(r, j) = Expr(cells[j]);
            ++r;
        }
    return m;
}

// reduced row echelon form; returns pivot columns
std::vector<size_t> rref(std::vector<std::vector<Expr>>& a, size_t ncols) {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < ncols && r < a.size(); ++c) {
        size_t p = r;
        while (p < a.size() && a[p][c].is_zero()) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Expr inv = Expr(1) / a[r][c];
        for (auto& e : a[r]) e = e * inv;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_structural_zero()) continue;
            Expr f = a[i][c];
            for (size_t j = c; j < a[i].size(); ++j) a[i][j] = a[i][j] - f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::vector<std::vector<Expr>> nullspace(const ExprMatrix& m) {
    std::vector<std::vector<Expr>> a(m.rows(), std::vector<Expr>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
    auto piv = rref(a, m.cols());
    std::vector<bool> is_piv(m.cols(), false);
    for (size_t c : piv) is_piv[c] = true;
    std::vector<std::vector<Expr>> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f]) continue;
        std::vector<Expr> v(m.cols());
        v[f] = Expr(1);
        for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Expr>> solve_linear(const ExprMatrix& m, const std::vector<Expr>& rhs) {
    if (rhs.size() != m.rows()) throw std::invalid_argument("right-hand side has the wrong length");
    std::vector<std::vector<Expr>> a(m.rows(), std::vector<Expr>(m.cols() + 1));
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
        a[i][m.cols()] = rhs[i];
    }
    auto piv = rref(a, m.cols() + 1);
    if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
    std::vector<Expr> y(m.cols());
    for (size_t r = 0; r < piv.size(); ++r) y[piv[r]] = a[r][m.cols()];
    return y;
}

std::vector<std::vector<Expr>> constant_relations(const FunctionTuple& fs) {
    return nullspace(coefficient_matrix(fs));
}

std::optional<std::vector<Expr>> express_in_span(const Expr& f, const FunctionTuple& basis,
                                                 const ParabolicEquation& evolution) {
    if (is_linearly_independent(basis, &evolution) != Dependence::independent)
        throw std::invalid_argument("basis is linearly dependent");
    if (!is_solution(evolution, f)) throw std::invalid_argument("function does not solve the evolution equation");
    FunctionTuple all = basis;
    all.push_back(f);
    if (!wronskian(all).is_zero()) return std::nullopt;

    ExprMatrix cm = coefficient_matrix(all);
    ExprMatrix mb(cm.rows(), basis.size());
    std::vector<Expr> rhs(cm.rows());
    for (size_t i = 0; i < cm.rows(); ++i) {
        for (size_t j = 0; j < basis.size(); ++j) mb(i, j) = cm(i, j);
        rhs[i] = cm(i, basis.size());
    }
    auto c = solve_linear(mb, rhs);
    if (!c) throw InternalError("vanishing Wronskian without a constant-coefficient relation");
    Expr diff = f;
    for (size_t j = 0; j < basis.size(); ++j) diff -= (*c)[j] * basis[j];
    if (!diff.is_zero()) throw InternalError("span coefficients failed verification");
    return c;
}

Expr minor_identity_residual(const ExprMatrix& m, size_t i, size_t j, size_t k, size_t l) {
    if (!m.is_square()) throw std::invalid_argument("matrix must be square");
    const size_t n = m.rows();
    if (i >= n || j >= n || k >= n || l >= n) throw std::out_of_range("minor index out of range");
    if (i == j || k == l) throw std::invalid_argument("minor indices must be distinct");
    auto minor = [&](std::vector<size_t> r, std::vector<size_t> c) { return determinant(m.without(r, c)); };
    int sign = ((j > i) ? 1 : -1) * ((l > k) ? 1 : -1);
    Expr lhs = minor({i}, {k}) * minor({j}, {l}) - minor({i}, {l}) * minor({j}, {k});
    Expr rhs = minor({i, j}, {k, l}) * determinant(m);
    return sign > 0 ? lhs - rhs : lhs + rhs;
}

}  // namespace parapot
