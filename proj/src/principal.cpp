#include "fgb/principal.hpp"

#include <cmath>
#include <string>

#include "fgb/measure.hpp"
#include "fgb/sphere.hpp"

namespace fgb {

PrincipalSeries::PrincipalSeries(const Alphabet& A, double t) : A_(A), t_(t), jmax_(32) {
    const double lq = std::log(q());
    qcache_.resize(static_cast<std::size_t>(2 * jmax_ + 1));
    for (int j = -jmax_; j <= jmax_; ++j)
        qcache_[static_cast<std::size_t>(j + jmax_)] =
            std::polar(std::exp(0.5 * j * lq), t_ * j * lq);
}

Complex PrincipalSeries::q_pow(int j, bool dual) const {
    Complex v;
    if (j >= -jmax_ && j <= jmax_) {
        v = qcache_[static_cast<std::size_t>(j + jmax_)];
    } else {
        const double lq = std::log(q());
        v = std::polar(std::exp(0.5 * j * lq), t_ * j * lq);
    }
    return dual ? std::conj(v) : v;
}

double PrincipalSeries::poisson(const Word& x, const Word& w) const {
    if (w.length() < x.length())
        throw DepthTooShallowError("poisson: depth-" + std::to_string(w.length()) +
                                   " cylinder does not determine P(x, ·) for |x| = " +
                                   std::to_string(x.length()));
    return std::pow(q(), 2 * common_prefix_len(x, w) - x.length());
}

CylinderFn PrincipalSeries::act(const Word& x, const CylinderFn& f, bool dual) const {
    if (x.empty()) return f;
    const int out_depth = x.length() + f.depth();
    const Word xinv = inverse(x);
    const long long n = num_words(A_, out_depth);
    Eigen::VectorXcd vals(n);
    for (long long i = 0; i < n; ++i) {
        const Word u = word_at(A_, out_depth, i);
        const Word r = reduced_mul(xinv, u);
        // |r| ≥ out_depth − |x| = depth(f): cancellation eats at most |x| letters,
        // so the prefix below always exists and determines f on the cylinder of u.
        const long long j = f.depth() == 0 ? 0 : word_index(A_, r.prefix(f.depth()));
        vals(i) = q_pow(2 * common_prefix_len(x, u) - x.length(), dual) * f.value(j);
    }
    return CylinderFn(A_, out_depth, std::move(vals));
}

Complex PrincipalSeries::matrix_coeff(const CylinderFn& w, const Word& x,
                                      const CylinderFn& v) const {
    return inner(w, act(x, v));
}

PrincipalSeries::Step PrincipalSeries::letter_step(Letter l, int out_depth, bool dual) const {
    if (out_depth < 1) throw Error("letter_step: out_depth must be ≥ 1");
    BoundaryMeasure nu(A_);
    const double ratio =
        std::sqrt(nu.cylinder_mass_d(out_depth) / nu.cylinder_mass_d(out_depth - 1));
    const long long n = num_words(A_, out_depth);
    const Word linv = Word::single(Alphabet::inv(l));
    Step s;
    s.src.resize(static_cast<std::size_t>(n));
    s.wgt.resize(n);
    for (long long v = 0; v < n; ++v) {
        const Word u = word_at(A_, out_depth, v);
        const Word r = reduced_mul(linv, u);
        s.src[static_cast<std::size_t>(v)] =
            out_depth == 1 ? 0 : word_index(A_, r.prefix(out_depth - 1));
        s.wgt(v) = q_pow(u.first() == l ? 1 : -1, dual) * ratio;
    }
    return s;
}

Eigen::MatrixXcd PrincipalSeries::op_matrix(const Word& x, int from_depth, bool dual) const {
    const long long nf = num_words(A_, from_depth);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(nf, nf);
    // π(x) = π(l_1)∘…∘π(l_m): apply the letter factors right to left, each an
    // exact map H_d → H_{d+1}, so the product is the exact matrix of π(x).
    for (int j = x.length() - 1; j >= 0; --j) {
        const int out_depth = from_depth + (x.length() - j);
        const Step s = letter_step(x.letter(j), out_depth, dual);
        Eigen::MatrixXcd next(num_words(A_, out_depth), nf);
        for (long long v = 0; v < next.rows(); ++v)
            next.row(v) = s.wgt(v) * M.row(s.src[static_cast<std::size_t>(v)]);
        M = std::move(next);
    }
    return M;
}

}  // namespace fgb
