#pragma once

#include <Eigen/Dense>
#include <complex>

#include "fgb/measure.hpp"
#include "fgb/sphere.hpp"

namespace fgb {

using Complex = std::complex<double>;

/**
 * A cylinder function: a function on the tree boundary depending only on the
 * first `depth` letters. Stored as one value per depth-`depth` word, in
 * lexicographic word order. Together with the boundary measure this models
 * the finite-depth subspace H_depth of L^2 of the boundary.
 */
class CylinderFn {
public:
    CylinderFn(const Alphabet& A, int depth)
        : A_(A), depth_(depth), vals_(Eigen::VectorXcd::Zero(num_words(A, depth))) {}

    CylinderFn(const Alphabet& A, int depth, Eigen::VectorXcd vals)
        : A_(A), depth_(depth), vals_(std::move(vals)) {
        if (vals_.size() != num_words(A, depth))
            throw Error("CylinderFn: value vector has wrong dimension");
    }

    static CylinderFn constant(const Alphabet& A, Complex c) {
        CylinderFn f(A, 0);
        f.vals_(0) = c;
        return f;
    }

    static CylinderFn one(const Alphabet& A) { return constant(A, 1.0); }

    /** Indicator of the cylinder over w (depth |w|); w = e gives the constant 1. */
    static CylinderFn indicator(const Alphabet& A, const Word& w) {
        CylinderFn f(A, w.length());
        f.vals_(word_index(A, w)) = 1.0;
        return f;
    }

    const Alphabet& alphabet() const { return A_; }
    int depth() const { return depth_; }
    Eigen::Index dim() const { return vals_.size(); }
    const Eigen::VectorXcd& values() const { return vals_; }
    Eigen::VectorXcd& values() { return vals_; }
    Complex value(Eigen::Index i) const { return vals_(i); }
    Complex value_at(const Word& w) const {
        if (w.length() != depth_) throw Error("CylinderFn::value_at: word length != depth");
        return vals_(word_index(A_, w));
    }

private:
    Alphabet A_;
    int depth_;
    Eigen::VectorXcd vals_;
};

/** Re-expresses f at a finer depth (values copy to descendants; exact). */
CylinderFn promote(const CylinderFn& f, int to_depth);

/** Conditional expectation onto a coarser depth (values average over descendants; exact). */
CylinderFn coarsen(const CylinderFn& f, int to_depth);

/** L^2 inner product ∫ f·conj(g) dν, conjugate-linear in g. */
Complex inner(const CylinderFn& f, const CylinderFn& g);

double l2_norm(const CylinderFn& f);

/** Pointwise product (exact at the finer of the two depths). */
CylinderFn pointwise_mul(const CylinderFn& f, const CylinderFn& g);

/** Left translation (λ(x)f)(ω) = f(x⁻¹ω); output depth is |x| + depth(f). */
CylinderFn translate(const Word& x, const CylinderFn& f);

CylinderFn conj(const CylinderFn& f);

CylinderFn operator+(const CylinderFn& f, const CylinderFn& g);
CylinderFn operator-(const CylinderFn& f, const CylinderFn& g);
CylinderFn operator*(Complex c, const CylinderFn& f);

/**
 * Coordinates of f in the orthonormal indicator basis e_w = 𝟏_w / sqrt(ν(w))
 * of H_depth (after exact promotion to `depth`). All operator matrices in
 * this library are written in these coordinates.
 */
Eigen::VectorXcd to_coords(const CylinderFn& f, int depth);

CylinderFn from_coords(const Alphabet& A, int depth, const Eigen::VectorXcd& coords);

}  // namespace fgb
