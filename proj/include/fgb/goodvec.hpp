#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fgb/realization.hpp"
#include "fgb/transfer.hpp"

namespace fgb {

/**
 * A certificate that a vector v is dominated by the realization in the
 * two-sided sense that iterated transfer images of v ⊗ v̄ stay below C times
 * the realization components.
 *
 * SpecialExact certificates come from the square-root construction below:
 * both dominances v⊗v̄ ≤ C·μ(𝟏_z) and v⊗v̄ ≤ C·μ(𝟏−𝟏_z) hold exactly as
 * operator inequalities (verified on the carrier block, which suffices since
 * all operators are block-diagonal and v⊗v̄ vanishes on the complement).
 * NumericAtDepth certificates assert the transfer-power domination
 * 𝒯ⁿ(v⊗v̄) ≤ C·F at one observation depth only.
 */
struct GoodVectorCertificate {
    CylinderFn v;
    Word witness;       // the word z the construction or search used
    double C;           // domination constant
    int checked_depth;  // block depth at which dominances were established
    int power;          // transfer power n (0 for special-exact certificates)
    enum class Mode { SpecialExact, NumericAtDepth } mode;
};

const char* mode_name(GoodVectorCertificate::Mode m);

/**
 * Builds a vector with an exact two-sided certificate:
 * v = (μ(𝟏_z) − μ(𝟏_z)²)^{1/2} u, certified with C = ‖u‖². For perfect
 * realizations (and for z = e) the defect operator vanishes and v = 0.
 * Requires |z| ≤ depth(u) ≤ built depth; throws NotPSDError when the defect
 * operator fails positivity (the map is not a realization).
 */
GoodVectorCertificate make_special_good(const Realization& real, const CylinderFn& u,
                                        const Word& z);

struct SpecialGoodCheck {
    bool ok;
    double min_eig;  // smallest eigenvalue across the two dominance gaps
};

/** Verifies both dominances of the exact certificate on the carrier block. */
SpecialGoodCheck check_special_good(const Realization& real, const CylinderFn& v,
                                    const Word& z, double C, double tol = 1e-9);

struct CertifyOutcome {
    std::optional<GoodVectorCertificate> cert;
    double best_ratio;  // smallest domination constant seen (may exceed C_search)
    int best_power;     // transfer power attaining it
};

/**
 * Searches transfer powers n = 1..n_check for the domination
 * 𝒯ⁿ(v⊗v̄ in every component) ≤ C·F at the observation depth, accepting the
 * first n whose minimal constant is ≤ c_search and spot-checking n+1 with
 * the same constant. The refusal branch still reports the best constant
 * found (a refusal is not a disproof — larger powers may certify).
 */
CertifyOutcome certify_good(const Realization& real, const CylinderFn& v, int n_check,
                            double c_search, int obs_depth, int workers = 1);

struct SphereBound {
    double lambda_max;  // top eigenvalue of the compressed sphere sum
    double scalar_sum;  // Σ_{|x|=n} |⟨w, π(x)v⟩|² for the supplied w (0 if none)
};

/**
 * Compressed sphere sum Σ_{|x|=n} (E_obs π(x)v)(E_obs π(x)v)* and its top
 * eigenvalue; for a certified vector it stays bounded uniformly in n.
 */
SphereBound sphere_bound(const PrincipalSeries& rep, const CylinderFn& v, int n,
                         int obs_depth, const CylinderFn* w = nullptr, int workers = 1);

}  // namespace fgb
