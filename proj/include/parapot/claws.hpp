#pragma once

#include "parapot/pde.hpp"

namespace parapot {

// density F and flux G, functions of (t, x, u jets)
struct ConservedVector {
    Expr F;
    Expr G;
};

Expr characteristic_residual(const ParabolicEquation& eq, const Expr& alpha);
bool verify_characteristic(const ParabolicEquation& eq, const Expr& alpha);

ConservedVector canonical_conserved_vector(const ParabolicEquation& eq, const Expr& alpha);
Expr divergence_residual(const ConservedVector& cv, const ParabolicEquation& eq);

// variational derivative of the density; equal for equivalent conserved vectors
Expr cv_characteristic(const ConservedVector& cv);
bool equivalent_conserved_vectors(const ConservedVector& a, const ConservedVector& b,
                                  const ParabolicEquation& eq);

// alpha / (X_x U1) in the new variables, verified on the image equation
Expr transform_characteristic(const ParabolicEquation& eq, const Expr& alpha,
                              const EquivalenceTransformation& tr);
// characteristic of the source equation from one of the image equation
Expr pullback_characteristic(const Expr& alpha_new, const EquivalenceTransformation& tr);

ConservedVector transform_conserved_vector(const ConservedVector& cv, const EquivalenceTransformation& tr);

ConservedVector symmetry_action_on_cv(const ConservedVector& cv, const PointOperator& Q,
                                      const ParabolicEquation& eq);

}  // namespace parapot
