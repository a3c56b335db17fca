#pragma once

#include <Eigen/Dense>

#include "fgb/blockop.hpp"
#include "fgb/errors.hpp"

namespace fgb {

/**
 * Positive-semidefinite square root via Hermitian eigendecomposition.
 * Eigenvalues in [-tol_scaled, 0) are clamped to 0; anything below
 * -tol_scaled (tol_scaled = tol * max(1, λ_max)) throws NotPSDError.
 */
Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& M, double tol = 1e-10);

/** Hilbert–Schmidt (Frobenius) norm. */
double hs_norm(const Eigen::MatrixXcd& M);

/** Spectral norm (largest singular value). */
double spectral_norm(const Eigen::MatrixXcd& M);

/**
 * Trace pairing of two PSD matrices: tr(√S T √S). Equal to ||√S·√T||²_HS
 * and — on finite blocks — to tr(ST); the square-root form is kept because it
 * is the defining formula for the genuinely infinite-dimensional pairing.
 */
double trace_pair(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& T);

/** Trace pairing of the depth-N blocks of two block operators. */
double trace_pair(const BlockOperator& S, const BlockOperator& T, int depth);

/** Tuple pairing (F, F̃) = Σ_{a≠b} TR(F_a, F̃_b) at one depth. */
double tuple_pair(const EffTuple& F, const EffTuple& G, int depth);

struct DominanceResult {
    bool ok;         // min eigenvalue of C·T − S at least -tol
    double min_eig;  // that minimum eigenvalue
};

/** Checks the operator inequality S ≤ C·T, i.e. C·T − S is PSD up to tol. */
DominanceResult dominance(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& T, double C,
                          double tol = 1e-9);

}  // namespace fgb
