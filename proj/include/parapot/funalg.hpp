#pragma once

#include "parapot/expr.hpp"

#include <optional>
#include <vector>

namespace parapot {

struct ParabolicEquation;

using FunctionTuple = std::vector<Expr>;

inline constexpr size_t kDefaultPMax = 6;

class ExprMatrix {
public:
    ExprMatrix() = default;
    ExprMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    ExprMatrix(std::initializer_list<std::initializer_list<Expr>> rows);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    Expr& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Expr& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    // copy with the listed rows and columns removed
    ExprMatrix without(const std::vector<size_t>& rows, const std::vector<size_t>& cols) const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Expr> data_;
};

Expr determinant(const ExprMatrix& m);
// the two strategies, exposed so they can be compared
Expr determinant_bareiss(const ExprMatrix& m);  // polynomial entries only
Expr determinant_cofactor(const ExprMatrix& m);

// row i holds the i-th x-derivatives
ExprMatrix wronski_matrix(const FunctionTuple& fs);
Expr wronskian(const FunctionTuple& fs);

enum class Dependence { independent, dependent, dependent_or_undecided };
const char* to_string(Dependence d);

// With an evolution equation the Wronskian criterion is an iff; without one
// a vanishing Wronskian is inconclusive.
Dependence is_linearly_independent(const FunctionTuple& fs,
                                   const ParabolicEquation* evolution = nullptr);

// constants c with f = sum c_i basis_i, or nothing when W(basis, f) != 0
std::optional<std::vector<Expr>> express_in_span(const Expr& f, const FunctionTuple& basis,
                                                 const ParabolicEquation& evolution);

// Constants c (free of t and x) with sum c_i fs_i = 0, found by comparing
// coefficients. Returns a basis of the relation space.
std::vector<std::vector<Expr>> constant_relations(const FunctionTuple& fs);

// M^i_k M^j_l - M^i_l M^j_k - sign(j-i) sign(l-k) M^{ij}_{kl} det M (0-based indices)
Expr minor_identity_residual(const ExprMatrix& m, size_t i, size_t j, size_t k, size_t l);

// Gaussian elimination over the field of Exprs. Returns a nullspace basis.
std::vector<std::vector<Expr>> nullspace(const ExprMatrix& m);
// one solution of m y = rhs with free variables set to zero
std::optional<std::vector<Expr>> solve_linear(const ExprMatrix& m, const std::vector<Expr>& rhs);

}  // namespace parapot
