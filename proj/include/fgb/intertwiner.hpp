#pragma once

#include <vector>

#include "fgb/blockop.hpp"
#include "fgb/principal.hpp"

namespace fgb {

/** True when q^{2it} = 1 (t·ln q within tol of a multiple of π): degenerate parameters. */
bool is_endpoint(const PrincipalSeries& rep, double tol = 1e-8);

/**
 * The unitary operator I carrying π_z into π_{1−z}, as blocks on H_0..H_N,
 * normalized by I𝟏 = 𝟏.
 *
 * Block d is obtained by least squares from the intertwining equations
 * I·π_z(a)|_{H_{d−1}} = π_{1−z}(a)·I|_{H_{d−1}} over all letters a, seeded by
 * I_0 = [1]. Full rank of each stacked system makes the step unique, so the
 * global solution space is exactly one complex dimension, fixed by the seed.
 * The solution is then projected onto nesting consistency (I restricted to
 * H_{d−1} is the previous block) and polished to exact unitarity; the
 * intertwining equations are re-verified to 1e−9 afterwards.
 */
BlockOperator intertwiner(const PrincipalSeries& rep, int N);

/** Max over letters a and depths d < max of ‖I_{d+1}·π_z(a)|_{H_d} − π_{1−z}(a)|_{H_d}·I_d‖_max. */
double intertwining_residual(const PrincipalSeries& rep, const BlockOperator& I);

/**
 * Max deviation of ⟨I e_w, e_{w'}⟩ from its class mean, over classes of pairs
 * |w| = |w'| = depth grouped by common prefix length: the operator must see
 * only how far two words agree, not which words they are.
 */
double structure_defect(const BlockOperator& I, int depth);

/**
 * Scalars c_j with I|_{H_N} = Σ_j c_j P_j, where P_j projects onto the shell
 * H_j ⊖ H_{j−1}; *defect (optional) reports max_j ‖I·P_j − c_j·P_j‖_max.
 */
std::vector<Complex> shell_scalars(const BlockOperator& I, int N, double* defect = nullptr);

}  // namespace fgb
