#pragma once

#include <vector>

#include "fgb/abel.hpp"
#include "fgb/realization.hpp"
#include "fgb/scan.hpp"

namespace fgb {

/**
 * One application of the transfer operator,
 *   (𝒯F)_a = Σ_{b ≠ a⁻¹} π(a) F_b π(a)⁻¹,
 * evaluated on depth blocks.  The result covers depths [base, max_depth-1]:
 * the block of π(a)F_bπ(a)⁻¹ at depth d is U* F_b^{(d+1)} U with
 * U = Mat(π(a⁻¹): H_d → H_{d+1}), so one depth of headroom is consumed.
 * Exact for tuples that are block-diagonal across the filtration (as all
 * tuples built from mu maps or from rank-one sums of shallow vectors are).
 */
EffTuple apply_T(const EffTuple& F, const PrincipalSeries& rep);

/**
 * The n-th transfer iterate of the rank-one tuple F⁰ supported at letter b,
 * F⁰_c = δ_{cb} v ⊗ v̄, compressed to the observation depth:
 *   (𝒯ⁿF⁰)_a = Σ π(x) (v ⊗ v̄) π(x)⁻¹  over |x| = n, first(x) = a, last(x) ≠ b⁻¹,
 * returned as one rank-one sum of u_x = E_obs π(x)v per first letter a.
 * Exact for any v with depth(v) ≤ obs_depth (one sphere scan).  Requires n ≥ 1.
 * With keep_vectors = false the sums hold only matrices and counts.
 */
std::vector<RankOneSum> iterate_T_rank_one(const PrincipalSeries& rep, const CylinderFn& v,
                                           Letter b, int n, int obs_depth, int workers = 1,
                                           bool keep_vectors = true);

/** The finite-trace pairing (F, G) evaluated on a schedule of depths. */
struct FtcResult {
    std::vector<double> values;  // tuple_pair(F, G, d) per scheduled depth
    bool converged;              // last relative increment below 1e-6
    double limit;                // geometric extrapolation of the depth values
};
FtcResult ftc_value(const EffTuple& F, const EffTuple& G, const std::vector<int>& depths);

/** Outcome of the duplicity limit identity check at the observation depth. */
struct DupReport {
    std::vector<Eigen::MatrixXcd> lhs;  // Abel limit of the iterate series, per letter
    std::vector<Eigen::MatrixXcd> rhs;  // pairing formula prediction, per letter
    std::vector<double> rel_error;      // max |L-R| / max |R| per letter
    double max_rel_error = 0.0;
    double pairing = 0.0;               // (F₊, F₋) estimate used in the denominator
    double coeff_plus = 0.0;            // ⟨μ₊(1 - 1_b)v, v⟩
    double coeff_minus = 0.0;           // ⟨μ₋(1 - 1_b)v, v⟩
    bool diverged = false;              // any per-letter Abel series flagged
    double abel_error = 0.0;            // max extrapolation error estimate
    double tail_bound = 0.0;            // max reported Abel tail bound
};

/**
 * Checks the duplicity limit identity: for the rank-one start at letter b
 * with vector v, the Abel-extrapolated limit of the compressed transfer
 * iterates (per first letter a) is compared against
 *   [ ⟨μ₋(1-1_b)v, v⟩ F₊ₐ + ⟨μ₊(1-1_b)v, v⟩ F₋ₐ ] / (F₊, F₋)
 * at the observation depth.  plus and minus must be the two boundary
 * realizations of one representation; v must have depth ≤ obs_depth.
 */
DupReport dup_limit_check(const Realization& plus, const Realization& minus,
                          const CylinderFn& v, Letter b, int obs_depth, int n_max,
                          const std::vector<double>& schedule, int workers = 1);

}  // namespace fgb
