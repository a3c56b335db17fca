#include "fgb/realization.hpp"

#include <string>

#include "fgb/sphere.hpp"

namespace fgb {

const char* sign_name(Sign s) {
    switch (s) {
        case Sign::Plus: return "plus";
        case Sign::Minus: return "minus";
        case Sign::Combined: return "combined";
    }
    return "?";
}

Eigen::MatrixXcd Realization::mu_block(const CylinderFn& G, int depth) const {
    // In orthonormal coordinates, multiplication by G compressed to H_depth is
    // the diagonal of the conditional expectation of G at that depth; this is
    // exact whether G is coarser or finer than the block.
    const CylinderFn g = G.depth() <= depth ? promote(G, depth) : coarsen(G, depth);
    const Eigen::VectorXcd& dv = g.values();
    switch (sign_) {
        case Sign::Plus:
            return Eigen::MatrixXcd(dv.asDiagonal());
        case Sign::Minus: {
            const Eigen::MatrixXcd& I = iop_->at_depth(depth);
            return I.adjoint() * dv.asDiagonal() * I;
        }
        case Sign::Combined: {
            const Eigen::MatrixXcd& I = iop_->at_depth(depth);
            Eigen::MatrixXcd M = I.adjoint() * dv.asDiagonal() * I;
            M += Eigen::MatrixXcd(dv.asDiagonal());
            return 0.5 * M;
        }
    }
    throw Error("Realization::mu_block: bad sign");
}

BlockOperator Realization::mu(const CylinderFn& G) const {
    std::vector<Eigen::MatrixXcd> blocks;
    for (int d = 0; d <= max_depth_; ++d) blocks.push_back(mu_block(G, d));
    return BlockOperator(alphabet(), 0, std::move(blocks));
}

CylinderFn Realization::mu_apply(const CylinderFn& G, const CylinderFn& f) const {
    const int d = std::max(G.depth(), f.depth());
    if (d > max_depth_)
        throw DepthTooShallowError("Realization::mu_apply: needs depth " + std::to_string(d) +
                                   " but the realization was built to depth " +
                                   std::to_string(max_depth_));
    return from_coords(alphabet(), d, mu_block(G, d) * to_coords(f, d));
}

Eigen::MatrixXcd Realization::eff_block(Letter a, int depth) const {
    const Alphabet& A = alphabet();
    if (depth == 0) return mu_block(CylinderFn::indicator(A, Word::single(a)), 0);
    const long long n = num_words(A, depth);
    const long long blk = n / A.size();  // words with first letter a are contiguous
    switch (sign_) {
        case Sign::Plus: {
            Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
            M.diagonal().segment(a * blk, blk).setOnes();
            return M;
        }
        case Sign::Minus: {
            const auto Ia = iop_->at_depth(depth).middleRows(a * blk, blk);
            return Ia.adjoint() * Ia;
        }
        case Sign::Combined: {
            const auto Ia = iop_->at_depth(depth).middleRows(a * blk, blk);
            Eigen::MatrixXcd M = Ia.adjoint() * Ia;
            M.diagonal().segment(a * blk, blk).array() += 1.0;
            return 0.5 * M;
        }
    }
    throw Error("Realization::eff_block: bad sign");
}

const EffTuple& Realization::eff() const {
    if (eff_) return *eff_;
    const Alphabet& A = alphabet();
    std::vector<BlockOperator> comp;
    for (Letter a = 0; a < A.size(); ++a) {
        std::vector<Eigen::MatrixXcd> blocks;
        for (int d = 0; d <= max_depth_; ++d) blocks.push_back(eff_block(a, d));
        comp.emplace_back(A, 0, std::move(blocks));
    }
    eff_.emplace(A, std::move(comp));
    return *eff_;
}

Realization combined(const Realization& plus, const Realization& minus) {
    if (plus.sign() != Sign::Plus || minus.sign() != Sign::Minus)
        throw Error("combined: expects the plus and minus realizations, in that order");
    if (plus.rep_ != minus.rep_ || plus.max_depth() != minus.max_depth())
        throw Error("combined: the two realizations must share representation and depth");
    return Realization(*plus.rep_, Sign::Combined, plus.max_depth(), minus.iop_);
}

}  // namespace fgb
