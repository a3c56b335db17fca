#include "fgb/blockop.hpp"

#include <cmath>

namespace fgb {

BlockOperator BlockOperator::rank_one(const CylinderFn& v, int max_depth, int base) {
    if (base < 0) base = v.depth();
    std::vector<Eigen::MatrixXcd> blocks;
    for (int d = base; d <= max_depth; ++d) {
        // Below the depth of v the block is the compression E_d (v⊗v̄) E_d,
        // i.e. the rank-one of the projected vector E_d v.
        Eigen::VectorXcd c =
            d < v.depth() ? to_coords(coarsen(v, d), d) : to_coords(v, d);
        blocks.push_back(c * c.adjoint());
    }
    return BlockOperator(v.alphabet(), base, std::move(blocks));
}

BlockOperator operator+(const BlockOperator& S, const BlockOperator& T) {
    int base = std::max(S.base(), T.base());
    int top = std::min(S.max_depth(), T.max_depth());
    if (top < base) throw Error("BlockOperator+: no common depth range");
    std::vector<Eigen::MatrixXcd> blocks;
    for (int d = base; d <= top; ++d) blocks.push_back(S.at_depth(d) + T.at_depth(d));
    return BlockOperator(S.alphabet(), base, std::move(blocks));
}

BlockOperator operator-(const BlockOperator& S, const BlockOperator& T) {
    return S + (Complex(-1.0) * T);
}

BlockOperator operator*(Complex c, const BlockOperator& S) {
    std::vector<Eigen::MatrixXcd> blocks;
    for (int d = S.base(); d <= S.max_depth(); ++d) blocks.push_back(c * S.at_depth(d));
    return BlockOperator(S.alphabet(), S.base(), std::move(blocks));
}

Eigen::MatrixXcd promote_isometry(const Alphabet& A, int from_depth) {
    Eigen::Index rows = num_words(A, from_depth + 1), cols = num_words(A, from_depth);
    int branch = (from_depth == 0) ? A.size() : A.q();
    double w = 1.0 / std::sqrt(static_cast<double>(branch));
    Eigen::MatrixXcd V = Eigen::MatrixXcd::Zero(rows, cols);
    for (Eigen::Index p = 0; p < cols; ++p)
        for (int c = 0; c < branch; ++c) V(p * branch + c, p) = w;
    return V;
}

double filtration_defect(const BlockOperator& S) {
    double defect = 0.0;
    for (int d = S.base(); d < S.max_depth(); ++d) {
        Eigen::MatrixXcd V = promote_isometry(S.alphabet(), d);
        Eigen::MatrixXcd P = V * V.adjoint();
        defect = std::max(defect,
                          (S.at_depth(d + 1) * V - V * S.at_depth(d)).cwiseAbs().maxCoeff());
        defect = std::max(defect,
                          (S.at_depth(d + 1) * P - P * S.at_depth(d + 1)).cwiseAbs().maxCoeff());
    }
    return defect;
}

EffTuple operator+(const EffTuple& F, const EffTuple& G) {
    std::vector<BlockOperator> comp;
    for (Letter a = 0; a < F.alphabet().size(); ++a) comp.push_back(F.at(a) + G.at(a));
    return EffTuple(F.alphabet(), std::move(comp));
}

EffTuple operator*(Complex c, const EffTuple& F) {
    std::vector<BlockOperator> comp;
    for (Letter a = 0; a < F.alphabet().size(); ++a) comp.push_back(c * F.at(a));
    return EffTuple(F.alphabet(), std::move(comp));
}

}  // namespace fgb
