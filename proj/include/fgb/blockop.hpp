#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fgb/cylinder.hpp"

namespace fgb {

/**
 * An operator presented by its compressions to the depth filtration
 * H_base ⊆ H_{base+1} ⊆ ... ⊆ H_max, one matrix per depth in orthonormal
 * indicator coordinates. Operators of interest are block-diagonal across the
 * filtration from their base depth on, so the blocks are mutually consistent:
 * B_{d+1} V = V B_d with V the inclusion isometry (see filtration_defect).
 */
class BlockOperator {
public:
    BlockOperator(const Alphabet& A, int base, std::vector<Eigen::MatrixXcd> blocks)
        : A_(A), base_(base), blocks_(std::move(blocks)) {
        for (std::size_t i = 0; i < blocks_.size(); ++i) {
            Eigen::Index d = num_words(A_, base_ + static_cast<int>(i));
            if (blocks_[i].rows() != d || blocks_[i].cols() != d)
                throw Error("BlockOperator: block dimension mismatch");
        }
    }

    static BlockOperator zero(const Alphabet& A, int base, int max_depth) {
        std::vector<Eigen::MatrixXcd> blocks;
        for (int d = base; d <= max_depth; ++d) {
            Eigen::Index n = num_words(A, d);
            blocks.push_back(Eigen::MatrixXcd::Zero(n, n));
        }
        return BlockOperator(A, base, std::move(blocks));
    }

    static BlockOperator identity(const Alphabet& A, int base, int max_depth) {
        std::vector<Eigen::MatrixXcd> blocks;
        for (int d = base; d <= max_depth; ++d) {
            Eigen::Index n = num_words(A, d);
            blocks.push_back(Eigen::MatrixXcd::Identity(n, n));
        }
        return BlockOperator(A, base, std::move(blocks));
    }

    /**
     * v ⊗ v̄ as a block operator; base defaults to the depth of v, and blocks
     * below that depth are the compressions (E_d v) ⊗ conj(E_d v).
     */
    static BlockOperator rank_one(const CylinderFn& v, int max_depth, int base = -1);

    const Alphabet& alphabet() const { return A_; }
    int base() const { return base_; }
    int max_depth() const { return base_ + static_cast<int>(blocks_.size()) - 1; }

    const Eigen::MatrixXcd& at_depth(int d) const {
        if (d < base_ || d > max_depth()) throw Error("BlockOperator::at_depth: depth out of range");
        return blocks_[static_cast<std::size_t>(d - base_)];
    }
    Eigen::MatrixXcd& at_depth(int d) {
        if (d < base_ || d > max_depth()) throw Error("BlockOperator::at_depth: depth out of range");
        return blocks_[static_cast<std::size_t>(d - base_)];
    }

    BlockOperator restricted(int new_base, int new_max) const {
        std::vector<Eigen::MatrixXcd> blocks;
        for (int d = new_base; d <= new_max; ++d) blocks.push_back(at_depth(d));
        return BlockOperator(A_, new_base, std::move(blocks));
    }

private:
    Alphabet A_;
    int base_;
    std::vector<Eigen::MatrixXcd> blocks_;
};

BlockOperator operator+(const BlockOperator& S, const BlockOperator& T);
BlockOperator operator-(const BlockOperator& S, const BlockOperator& T);
BlockOperator operator*(Complex c, const BlockOperator& S);

/** The inclusion isometry H_from → H_{from+1} in orthonormal coordinates. */
Eigen::MatrixXcd promote_isometry(const Alphabet& A, int from_depth);

/**
 * Maximum over depths of the filtration-consistency defects
 * ||B_{d+1}V − VB_d||_max and ||B_{d+1}(VV*) − (VV*)B_{d+1}||_max.
 * Zero (numerically) exactly for operators block-diagonal across the filtration.
 */
double filtration_defect(const BlockOperator& S);

/** A tuple of block operators indexed by the letters of A (an Eff-vector candidate). */
class EffTuple {
public:
    EffTuple(const Alphabet& A, std::vector<BlockOperator> comp) : A_(A), comp_(std::move(comp)) {
        if (static_cast<int>(comp_.size()) != A_.size())
            throw Error("EffTuple: need one component per letter");
    }

    static EffTuple zero(const Alphabet& A, int base, int max_depth) {
        std::vector<BlockOperator> comp(static_cast<std::size_t>(A.size()),
                                        BlockOperator::zero(A, base, max_depth));
        return EffTuple(A, std::move(comp));
    }

    const Alphabet& alphabet() const { return A_; }
    const BlockOperator& at(Letter a) const { return comp_[static_cast<std::size_t>(a)]; }
    BlockOperator& at(Letter a) { return comp_[static_cast<std::size_t>(a)]; }
    int base() const { return comp_.front().base(); }
    int max_depth() const { return comp_.front().max_depth(); }

    /** Componentwise sum Σ_a F_a at one depth. */
    Eigen::MatrixXcd component_sum(int depth) const {
        Eigen::MatrixXcd s = comp_.front().at_depth(depth);
        for (std::size_t i = 1; i < comp_.size(); ++i) s += comp_[i].at_depth(depth);
        return s;
    }

private:
    Alphabet A_;
    std::vector<BlockOperator> comp_;
};

EffTuple operator+(const EffTuple& F, const EffTuple& G);
EffTuple operator*(Complex c, const EffTuple& F);

/**
 * A streaming sum of rank-one operators Σ vᵢ ⊗ v̄ᵢ at a fixed depth,
 * accumulated in insertion order (deterministic).
 */
class RankOneSum {
public:
    /**
     * With keep_vectors = false only the accumulated matrix and the count are
     * retained (vectors() stays empty), which bounds memory when summing over
     * large spheres.
     */
    RankOneSum(const Alphabet& A, int depth, bool keep_vectors = true)
        : A_(A), depth_(depth), keep_(keep_vectors),
          acc_(Eigen::MatrixXcd::Zero(num_words(A, depth), num_words(A, depth))) {}

    void add(const Eigen::VectorXcd& coords) {
        if (keep_) vecs_.push_back(coords);
        ++count_;
        acc_.noalias() += coords * coords.adjoint();
    }

    /** Folds a later partial sum into this one, keeping the vector order. */
    void merge(const RankOneSum& later) {
        if (keep_) vecs_.insert(vecs_.end(), later.vecs_.begin(), later.vecs_.end());
        count_ += later.count_;
        acc_ += later.acc_;
    }

    int depth() const { return depth_; }
    std::size_t count() const { return count_; }
    const std::vector<Eigen::VectorXcd>& vectors() const { return vecs_; }
    const Eigen::MatrixXcd& matrix() const { return acc_; }

private:
    Alphabet A_;
    int depth_;
    bool keep_;
    std::size_t count_ = 0;
    std::vector<Eigen::VectorXcd> vecs_;
    Eigen::MatrixXcd acc_;
};

}  // namespace fgb
