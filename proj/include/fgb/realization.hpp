#pragma once

#include <memory>
#include <optional>

#include "fgb/blockop.hpp"
#include "fgb/intertwiner.hpp"
#include "fgb/principal.hpp"

namespace fgb {

enum class Sign { Plus, Minus, Combined };

const char* sign_name(Sign s);

/**
 * A boundary realization of the principal series: a positive, unital map
 * G ↦ μ(G) from cylinder functions to operators with the covariance
 * π(x)·μ(G)·π(x)⁻¹ = μ(λ(x)G).
 *
 * Plus is multiplication by G; Minus conjugates multiplication through the
 * intertwiner, μ₋(G) = I*·μ₊(G)·I; Combined is the average of the two. All
 * three are block-diagonal across the depth filtration, so every depth block
 * below is the exact compression of the operator. Plus and Minus are perfect
 * (their Eff components are projections); Combined is not.
 */
class Realization {
public:
    Realization(const PrincipalSeries& rep, Sign sign, int max_depth)
        : Realization(rep, sign, max_depth,
                      sign == Sign::Plus ? nullptr
                                         : std::make_shared<const BlockOperator>(
                                               intertwiner(rep, max_depth))) {}

    const PrincipalSeries& rep() const { return *rep_; }
    const Alphabet& alphabet() const { return rep_->alphabet(); }
    Sign sign() const { return sign_; }
    int max_depth() const { return max_depth_; }
    bool perfect() const { return sign_ != Sign::Combined; }

    /** The compression of μ(G) to H_depth. */
    Eigen::MatrixXcd mu_block(const CylinderFn& G, int depth) const;

    /** μ(G) as a block operator over depths 0..max_depth. */
    BlockOperator mu(const CylinderFn& G) const;

    /** μ(G)·f, computed at depth max(depth G, depth f). */
    CylinderFn mu_apply(const CylinderFn& G, const CylinderFn& f) const;

    /** The Eff tuple F_a = μ(𝟏_a), cached after the first call. */
    const EffTuple& eff() const;

    const BlockOperator& intertwiner_op() const {
        if (!iop_) throw Error("Realization: the Plus realization carries no intertwiner");
        return *iop_;
    }
    const Eigen::MatrixXcd& intertwiner_block(int depth) const {
        return intertwiner_op().at_depth(depth);
    }

    friend Realization combined(const Realization& plus, const Realization& minus);

private:
    Realization(const PrincipalSeries& rep, Sign sign, int max_depth,
                std::shared_ptr<const BlockOperator> iop)
        : rep_(&rep), sign_(sign), max_depth_(max_depth), iop_(std::move(iop)) {}

    Eigen::MatrixXcd eff_block(Letter a, int depth) const;

    const PrincipalSeries* rep_;
    Sign sign_;
    int max_depth_;
    std::shared_ptr<const BlockOperator> iop_;
    // Lazily built; suites run checks sequentially, so no synchronization here.
    mutable std::optional<EffTuple> eff_;
};

/** The average realization μ = (μ₊ + μ₋)/2, sharing the minus intertwiner. */
Realization combined(const Realization& plus, const Realization& minus);

}  // namespace fgb
