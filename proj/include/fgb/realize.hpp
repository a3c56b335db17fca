#pragma once

#include <functional>
#include <vector>

#include "fgb/realization.hpp"
#include "fgb/transfer.hpp"

namespace fgb {

/**
 * Rebuilds the boundary map from its letter components: for a weight G that
 * is constant on depth-m cylinders,
 *
 *     μ(G) = Σ_{|xa| = |x|+1 = m} G(xa) · π(x) F_a π(x)⁻¹,
 *
 * returned blockwise over depths 0..max_depth(F) − (m−1). The formula only
 * defines one map when F is a transfer fixed point (the depth-m and depth-1
 * readings of μ agree exactly then), so 𝒯F = F is validated first.
 *
 * Throws NotFixedPointError when the fixed-point defect exceeds fixed_tol,
 * and DepthTooShallowError when F has fewer depths than G needs.
 */
BlockOperator mu_from_eff(const EffTuple& F, const PrincipalSeries& rep,
                          const CylinderFn& G, double fixed_tol = 1e-8);

struct PerfectnessReport {
    bool perfect;            // every component idempotent within tol
    double max_defect;       // max_a,d ‖F_a(d)² − F_a(d)‖
    Letter worst_letter;     // where the maximum is attained
    int worst_depth;
    double realization_defect;  // max_d ‖Σ_a F_a(d) − Id‖ (must pass to get here)
};

/**
 * Decides whether a realization tuple consists of projections. Requires the
 * components to sum to the identity at every depth within tol first and
 * throws NotRealizationError otherwise; the idempotency defect is measured
 * in spectral norm at every stored depth.
 */
PerfectnessReport perfectness_test(const EffTuple& F, double tol = 1e-8);

/** Evaluates a positive boundary map: G and a depth ↦ the compressed block. */
using MuEvaluator = std::function<Eigen::MatrixXcd(const CylinderFn&, int)>;

/** The evaluator of a concrete realization (valid up to its built depth). */
MuEvaluator mu_of(const Realization& real);

/**
 * Truncated GNS-style quotient for a positive boundary map μ.
 *
 * The generating family is every pair (𝟏_w, v) with |w| = weight_depth and v
 * from the supplied vector list; the inner product of two generators is
 * ⟨μ(conj(𝟏_w')·𝟏_w)v, v'⟩, which makes the Gram block-diagonal across the
 * weight words. The quotient keeps the eigenspaces of the Gram above
 * null_tol (relative to the top eigenvalue); vectors of the quotient are
 * represented in the orthonormal coordinates z = Λ^{1/2}U* c, where c is a
 * coefficient vector over the generating family.
 *
 * Throws NotPSDGramError when the Gram has an eigenvalue below −1e−8
 * (relative): the supplied map is not positive.
 */
class GnsSpace {
public:
    GnsSpace(MuEvaluator mu, const Alphabet& A, int weight_depth,
             std::vector<CylinderFn> vectors, double null_tol = 1e-10);

    const Alphabet& alphabet() const { return A_; }
    int weight_depth() const { return wdepth_; }
    int generator_count() const { return static_cast<int>(gram_.rows()); }
    int dim() const { return static_cast<int>(lkept_.size()); }
    const Eigen::MatrixXcd& gram() const { return gram_; }
    double gram_min_eig() const { return min_eig_; }

    /** Orthonormal quotient coordinates of Σ_j c_j (generator j). */
    Eigen::VectorXcd embed_coords(const Eigen::VectorXcd& coeffs) const;

    /**
     * The class of 𝟏 ⊗ v. Requires v to lie in the span of the generating
     * vectors (it is expanded in that span; an unexplained residual throws).
     * Isometric exactly when μ(𝟏) = Id on the relevant block.
     */
    Eigen::VectorXcd iota(const CylinderFn& v) const;

    /**
     * Quotient matrix of multiplication by a weight of depth ≤ weight_depth
     * (such weights act diagonally on the generating family, so the span is
     * invariant). Its spectral norm never exceeds max|G|.
     */
    Eigen::MatrixXcd weight_action(const CylinderFn& G) const;

    /**
     * Gram matrix of the x-translated generating family (λ(x)𝟏_w, π(x)v).
     * Equal to gram() precisely when the group action descends unitarily to
     * the quotient; the μ evaluator must cover depth weight_depth + |x|.
     */
    Eigen::MatrixXcd translated_gram(const Word& x, const PrincipalSeries& rep) const;

private:
    MuEvaluator mu_;
    Alphabet A_;
    int wdepth_;
    std::vector<CylinderFn> vecs_;
    Eigen::MatrixXcd gram_;
    double min_eig_ = 0.0;
    Eigen::MatrixXcd ukept_;  // generator_count × dim
    Eigen::VectorXd lkept_;   // kept eigenvalues, descending
};

struct OddSymmDepth {
    double pair11;       // (F₁,F₁): self-pairing of the embedded corner tuple
    double hs21;         // Σ_a ‖lower off-diagonal block of π'(𝟏_a)‖²_HS
    double hs12;         // Σ_a ‖upper off-diagonal block‖²_HS
    double pair22;       // (F₂,F₂): self-pairing of the complementary corner
    double id_offblock;  // ‖off-diagonal block of π'(𝟏)‖ (always 0)
    double max_dev() const;
};

/**
 * The four-way block identity on the doubled space H_d ⊕ H_d carrying the
 * multiplication action diag(M_a, M_a), split by the embedding
 * v ↦ (v, E·v)/√2 for a unitary block E: the corner tuples' self-pairings
 * both equal the summed Hilbert–Schmidt mass of the off-diagonal blocks.
 * Requires E unitary within 1e−8 (throws otherwise).
 */
OddSymmDepth odd_symm_depth(const Realization& plus, const Eigen::MatrixXcd& embed2,
                            int depth);

struct OddSymmReport {
    std::vector<OddSymmDepth> per_depth;  // depths 1..N in order
    double max_dev = 0.0;                 // worst four-way deviation
};

/**
 * Runs the block identity at every depth 1..N with the second embedding
 * given by the intertwiner of the minus realization, so the compression of
 * the doubled action through the embedding is the combined realization.
 */
OddSymmReport odd_symm_check(const Realization& plus, const Realization& minus, int N);

struct BoundarySplit {
    /** Orthonormal columns on which every probed μ(𝟏_z) acts idempotently. */
    Eigen::MatrixXcd projective_basis;
    /** Orthonormal complement. */
    Eigen::MatrixXcd generic_basis;
    /** Dimension of the projective part per probe depth 1..m (decreasing). */
    std::vector<int> dim_per_depth;
};

/**
 * Splits H_N by the probe operators D_z = μ(𝟏_z) − μ(𝟏_z)² over all reduced
 * words 1 ≤ |z| ≤ probe_depth: the projective part is their joint nullspace
 * (singular values below tol), a finite-probe surrogate for the full
 * invariant subspace, which is why the per-depth dimensions are reported.
 */
BoundarySplit boundary_split(const Realization& real, int N, int probe_depth,
                             double tol = 1e-8);

struct TraceFeasibility {
    bool feasible;
    double residual;      // least-squares residual of the trace constraints
    Eigen::VectorXd best;  // minimizing per-letter trace vector
};

/**
 * Trace obstruction to finite-dimensional fixed realizations: a transfer
 * fixed tuple with Σ_a F_a = Id on a dim-dimensional space forces per-letter
 * traces t_a with t_a = Σ_{b ≠ a⁻¹} t_b and Σ_a t_a = dim, which is solvable
 * only for dim = 0. The checker solves the linear system and reports
 * feasibility (residual below 1e−9 and t nonnegative).
 */
TraceFeasibility eff_finite_dim_obstruction(int dim, int k);

}  // namespace fgb
