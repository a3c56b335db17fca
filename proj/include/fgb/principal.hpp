#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fgb/cylinder.hpp"
#include "fgb/errors.hpp"

namespace fgb {

/**
 * The unitary boundary representation with spectral parameter z = 1/2 + i·t:
 *
 *     (π_z(x) f)(ω) = P(x, ω)^z · f(x⁻¹ω),
 *
 * where P is the Poisson kernel (Radon–Nikodym cocycle) of the isotropic
 * boundary measure. The "dual" flavour replaces z by 1 − z = conj(z); both
 * flavours map H_d into H_{d+|x|} exactly, so every operation below is an
 * exact finite computation on cylinder functions.
 */
class PrincipalSeries {
public:
    PrincipalSeries(const Alphabet& A, double t);

    const Alphabet& alphabet() const { return A_; }
    double t() const { return t_; }
    double q() const { return static_cast<double>(A_.q()); }

    /** q^{j·z} (conjugated when dual, i.e. q^{j(1−z)}). */
    Complex q_pow(int j, bool dual = false) const;

    /**
     * Poisson kernel P(x, ·) = q^{2·common_prefix_len(x,ω) − |x|}, evaluated on
     * the depth-|w| cylinder of w. Requires |w| ≥ |x| so the value is constant
     * on that cylinder.
     */
    double poisson(const Word& x, const Word& w) const;

    /** π_z(x) f (π_{1−z}(x) f when dual); output depth = |x| + depth(f). */
    CylinderFn act(const Word& x, const CylinderFn& f, bool dual = false) const;

    /** Matrix coefficient ⟨w, π_z(x) v⟩ (inner product linear in the first slot). */
    Complex matrix_coeff(const CylinderFn& w, const Word& x, const CylinderFn& v) const;

    /** Matrix of π_z(x): H_from → H_{from+|x|} in orthonormal coordinates. */
    Eigen::MatrixXcd op_matrix(const Word& x, int from_depth, bool dual = false) const;

    /**
     * Sparse one-letter factor π(l): H_{out_depth−1} → H_{out_depth}. Row v of
     * the matrix has its single nonzero in column src[v], with value wgt[v]:
     * the source is the depth-(out_depth−1) prefix of reduced(l⁻¹·v), and the
     * weight is the root of the Poisson kernel jump across l.
     */
    struct Step {
        std::vector<long long> src;
        Eigen::VectorXcd wgt;
    };
    Step letter_step(Letter l, int out_depth, bool dual = false) const;

private:
    Alphabet A_;
    double t_;
    int jmax_;
    std::vector<Complex> qcache_;  // q^{j·z} for j = −jmax_ .. jmax_
};

}  // namespace fgb
