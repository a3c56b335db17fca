#include "fgb/schur.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include "fgb/errors.hpp"
#include "fgb/scan.hpp"
#include "fgb/sphere.hpp"
#include "fgb/transfer.hpp"

namespace fgb {

namespace {

/** One least-squares fit of the series against power modes λⁿ over the
 *  window n = 1..M; on success (the fit actually interpolates, up to the
 *  residual gate) returns the series with every non-level mode removed. */
bool try_strip(const std::vector<Complex>& s, const std::vector<Complex>& modes,
               std::vector<Complex>& out) {
    const int M = static_cast<int>(s.size()) - 1;
    const int lo = 1;  // the radius-0 term is excluded from the series
    const int points = M - lo + 1;
    if (points < static_cast<int>(modes.size()) + 1) return false;

    Eigen::MatrixXcd B(points, static_cast<Eigen::Index>(modes.size()));
    Eigen::VectorXcd y(points);
    for (int n = lo; n <= M; ++n) {
        for (std::size_t m = 0; m < modes.size(); ++m)
            B(n - lo, static_cast<Eigen::Index>(m)) =
                std::pow(modes[m], static_cast<double>(n));
        y(n - lo) = s[static_cast<std::size_t>(n)];
    }
    const Eigen::VectorXcd amp = B.colPivHouseholderQr().solve(y);
    const double resid = (B * amp - y).cwiseAbs().maxCoeff();
    const double scale = std::max(y.cwiseAbs().maxCoeff(), 1e-300);
    if (resid > 1e-7 * scale) return false;

    out = s;
    for (int n = lo; n <= M; ++n)
        for (std::size_t m = 1; m < modes.size(); ++m)  // keep the level mode
            out[static_cast<std::size_t>(n)] -=
                amp(static_cast<Eigen::Index>(m)) *
                std::pow(modes[m], static_cast<double>(n));
    // The radius-0 placeholder is not data; replacing one term never moves
    // an Abel limit, and pinning it to the fitted level keeps the cleaned
    // series exactly constant for the extrapolator.
    out[0] = amp(0);
    return true;
}

/** Scalar series cleaner: the weighted sphere sums of matrix coefficients
 *  expand over powers of the unimodular multiplier and of ±1/q times it.
 *  Depth-1 boundary weights only excite the level, the unimodular pair, and
 *  the -1/q-scaled family (measured exactly); deeper weights may need the
 *  full nine-mode family and a wider window.  Candidates are tried richest
 *  applicable first and each must actually interpolate (residual gate);
 *  when none does the series is returned untouched and extrapolation
 *  reports its honest error. */
std::vector<Complex> strip_scalar_modes(const std::vector<Complex>& s, double q,
                                        Complex mu) {
    if (std::abs(mu.imag()) < 1e-6) return s;
    const Complex one(1.0, 0.0);
    const Complex rho(1.0 / q, 0.0);
    const Complex mub = std::conj(mu);
    const std::vector<std::vector<Complex>> families = {
        {one, mu, mub, -rho, -rho * mu, -rho * mub},
        {one, mu, mub, rho, -rho, rho * mu, -rho * mu, rho * mub, -rho * mub},
        {one, mu, mub},
    };
    std::vector<Complex> out;
    for (const auto& modes : families)
        if (try_strip(s, modes, out)) return out;
    return s;
}

/** Accumulates Σ_x G(x)·G̃*(x)·⟨v1, π(x)v3⟩·conj(⟨v2, π(x)v4⟩) over one
 *  sphere; columns of the scan matrix are v3, v4. */
class WeightedPairSink : public ScanSink {
public:
    WeightedPairSink(const CompactifiedFn& G, const CompactifiedFn& Gt,
                     Eigen::VectorXcd v1, Eigen::VectorXcd v2)
        : G_(&G), Gt_(&Gt), v1_(std::move(v1)), v2_(std::move(v2)) {}

    void leaf(const Word& x, const Eigen::MatrixXcd& U) override {
        const Complex w = eval_weight(*G_, x) * eval_weight_adjoint(*Gt_, x);
        if (w == Complex(0.0, 0.0)) return;
        const Complex c13 = (U.col(0).adjoint() * v1_)(0, 0);
        const Complex c24 = (v2_.adjoint() * U.col(1))(0, 0);
        sum_ += w * c13 * c24;
    }

    std::unique_ptr<ScanSink> fresh() const override {
        return std::make_unique<WeightedPairSink>(*G_, *Gt_, v1_, v2_);
    }

    void absorb(const ScanSink& later) override {
        sum_ += static_cast<const WeightedPairSink&>(later).sum_;
    }

    Complex sum() const { return sum_; }

private:
    const CompactifiedFn* G_;
    const CompactifiedFn* Gt_;
    Eigen::VectorXcd v1_, v2_;
    Complex sum_ = 0.0;
};

}  // namespace

Complex eval_weight(const CompactifiedFn& G, const Word& x) {
    for (const auto& p : G.interior())
        if (p.first == x) return p.second;
    const int m = G.boundary().depth();
    if (x.length() < m) return 0.0;
    return G.boundary().values()(word_index(G.boundary().alphabet(), x.prefix(m)));
}

Complex eval_weight_adjoint(const CompactifiedFn& G, const Word& x) {
    return std::conj(eval_weight(G, inverse(x)));
}

CompactifiedFn translate_weight(const Word& z, const CompactifiedFn& G) {
    const Alphabet& A = G.boundary().alphabet();
    const Word zi = inverse(z);
    CompactifiedFn out(translate(z, G.boundary()));
    for (const auto& p : G.interior())
        out.set_interior(reduced_mul(z, p.first), p.second);
    // Words shorter than the deepened boundary rule evaluate through z⁻¹x.
    for (int j = 0; j < out.boundary().depth(); ++j)
        for (const Word& x : sphere(A, j)) {
            const Complex val = eval_weight(G, reduced_mul(zi, x));
            if (val != Complex(0.0, 0.0)) out.set_interior(x, val);
        }
    return out;
}

SchurSide schur_lhs(const PrincipalSeries& rep, const CompactifiedFn& G,
                    const CompactifiedFn& Gt, const CylinderFn& v1, const CylinderFn& v2,
                    const CylinderFn& v3, const CylinderFn& v4, int n_max,
                    const std::vector<double>& schedule, int workers) {
    if (n_max < 1) throw Error("need at least radius 1");
    const int obs = std::max({v1.depth(), v2.depth(), v3.depth(), v4.depth(), 1});

    Eigen::MatrixXcd cols(num_words(rep.alphabet(), obs), 2);
    cols.col(0) = to_coords(v3, obs);
    cols.col(1) = to_coords(v4, obs);
    const Eigen::VectorXcd c1 = to_coords(v1, obs);
    const Eigen::VectorXcd c2 = to_coords(v2, obs);

    std::vector<Complex> scalars(static_cast<std::size_t>(n_max) + 1, 0.0);
    for (int n = 1; n <= n_max; ++n) {
        WeightedPairSink sink(G, Gt, c1, c2);
        sphere_scan(rep, obs, n, cols, sink, workers);
        scalars[static_cast<std::size_t>(n)] = sink.sum();
    }

    const Complex mu = std::polar(1.0, 2.0 * rep.t() * std::log(rep.q()));
    const std::vector<Complex> cleaned = strip_scalar_modes(scalars, rep.q(), mu);

    AbelSeries series = AbelSeries::scalars(cleaned);
    const AbelLimit lim = abel_extrapolate(series, schedule);

    SchurSide side;
    side.value = lim.limit(0, 0);
    side.error_estimate = lim.error_estimate;
    side.diverged = lim.diverged;
    side.tail_bound = lim.tail_bound;
    side.per_radius = scalars;
    return side;
}

Complex schur_rhs(const Realization& plus, const Realization& minus,
                  const CompactifiedFn& G, const CompactifiedFn& Gt, const CylinderFn& v1,
                  const CylinderFn& v2, const CylinderFn& v3, const CylinderFn& v4,
                  double a_pi) {
    const int d = std::max({v1.depth(), v2.depth(), v3.depth(), v4.depth(),
                            G.boundary().depth(), Gt.boundary().depth(), 1});
    if (d > plus.max_depth() || d > minus.max_depth())
        throw DepthTooShallowError("realizations built too shallow for these vectors");

    const Eigen::VectorXcd c1 = to_coords(v1, d);
    const Eigen::VectorXcd c2 = to_coords(v2, d);
    const Eigen::VectorXcd c3 = to_coords(v3, d);
    const Eigen::VectorXcd c4 = to_coords(v4, d);

    const Eigen::MatrixXcd Pg = plus.mu_block(G.boundary(), d);
    const Eigen::MatrixXcd Mg = minus.mu_block(G.boundary(), d);
    const Eigen::MatrixXcd Pt = plus.mu_block(Gt.boundary(), d);
    const Eigen::MatrixXcd Mt = minus.mu_block(Gt.boundary(), d);

    const Complex t1 = (c2.adjoint() * (Pg * c1))(0, 0);
    const Complex t2 = (c4.adjoint() * (Mt * c3))(0, 0);
    const Complex t3 = (c2.adjoint() * (Mg * c1))(0, 0);
    const Complex t4 = (c4.adjoint() * (Pt * c3))(0, 0);
    return a_pi * (t1 * std::conj(t2) + t3 * std::conj(t4));
}

SchurComparison schur_compare(const Realization& plus, const Realization& minus,
                              const CompactifiedFn& G, const CompactifiedFn& Gt,
                              const CylinderFn& v1, const CylinderFn& v2,
                              const CylinderFn& v3, const CylinderFn& v4, int n_max,
                              const std::vector<double>& schedule, int workers) {
    std::vector<int> depths;
    for (int d = 1; d <= std::min(plus.max_depth(), minus.max_depth()); ++d)
        depths.push_back(d);
    const FtcResult ftc = ftc_value(plus.eff(), minus.eff(), depths);
    if (!ftc.converged) throw Error("pairing table has not converged");

    SchurComparison cmp;
    cmp.a_pi = 1.0 / ftc.limit;
    cmp.lhs = schur_lhs(plus.rep(), G, Gt, v1, v2, v3, v4, n_max, schedule, workers);
    cmp.rhs = schur_rhs(plus, minus, G, Gt, v1, v2, v3, v4, cmp.a_pi);
    const double denom = std::abs(cmp.rhs);
    cmp.rel_error = std::abs(cmp.lhs.value - cmp.rhs) / (denom > 1e-12 ? denom : 1.0);
    return cmp;
}

}  // namespace fgb
