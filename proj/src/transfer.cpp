#include "fgb/transfer.hpp"

#include <array>
#include <cmath>

#include "fgb/psd.hpp"
#include "fgb/sphere.hpp"

namespace fgb {

EffTuple apply_T(const EffTuple& F, const PrincipalSeries& rep) {
    const Alphabet& A = F.alphabet();
    const int base = F.base();
    const int maxd = F.max_depth();
    if (maxd <= base)
        throw DepthTooShallowError("apply_T: needs one depth of headroom above the base");

    std::vector<BlockOperator> comp;
    for (Letter a = 0; a < A.size(); ++a) {
        const Letter ainv = Alphabet::inv(a);
        std::vector<Eigen::MatrixXcd> blocks;
        for (int d = base; d < maxd; ++d) {
            Eigen::MatrixXcd inner_sum =
                Eigen::MatrixXcd::Zero(num_words(A, d + 1), num_words(A, d + 1));
            for (Letter b = 0; b < A.size(); ++b)
                if (b != ainv) inner_sum += F.at(b).at_depth(d + 1);
            const Eigen::MatrixXcd U = rep.op_matrix(Word::single(ainv), d);
            blocks.push_back(U.adjoint() * inner_sum * U);
        }
        comp.emplace_back(A, base, std::move(blocks));
    }
    return EffTuple(A, std::move(comp));
}

std::vector<RankOneSum> iterate_T_rank_one(const PrincipalSeries& rep, const CylinderFn& v,
                                           Letter b, int n, int obs_depth, int workers,
                                           bool keep_vectors) {
    const Alphabet& A = rep.alphabet();
    if (v.depth() > obs_depth)
        throw DepthTooShallowError(
            "iterate_T_rank_one: observation depth below the depth of v");
    if (n < 1) throw Error("iterate_T_rank_one: n must be >= 1");
    RankOneCollector sink(A, obs_depth, Alphabet::inv(b), keep_vectors);
    sphere_scan(rep, obs_depth, n, to_coords(promote(v, obs_depth), obs_depth), sink,
                workers);
    return sink.components();
}

namespace {

/**
 * Removes the level-preserving oscillation from an iterate series.
 *
 * The sphere sums of the iteration carry a non-decaying oscillating pair at
 * the analytically known frequency μ = q^{2it} (the phase ratio of the two
 * spherical-function branches), which Abel summation kills in exact
 * arithmetic but which dominates the error of any fit on a short series.
 * Fits s_n ≈ L + C μⁿ + D μ̄ⁿ by least squares over a late window and
 * subtracts the two oscillating components (never the level L), leaving a
 * decaying residue around the same limit.  Returns the input unchanged when
 * the series is too short or the basis degenerates (μ ≈ ±1).
 */
AbelSeries strip_known_oscillation(const AbelSeries& s, Complex mu) {
    const int M = static_cast<int>(s.terms.size()) - 1;
    const int lo = std::max(2, M - 5);
    const int points = M - lo + 1;
    if (points < 5 || std::abs(mu.imag()) < 1e-6) return s;

    Eigen::Matrix3cd G = Eigen::Matrix3cd::Zero();
    std::vector<Eigen::MatrixXcd> R(
        3, Eigen::MatrixXcd::Zero(s.terms[0].rows(), s.terms[0].cols()));
    Complex mu_n = std::pow(mu, lo);
    for (int n = lo; n <= M; ++n, mu_n *= mu) {
        // Later terms carry less of the decaying contamination; weight them up.
        const double w = std::pow(3.0, n - lo);
        const Complex phi[3] = {Complex(1.0, 0.0), mu_n, std::conj(mu_n)};
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) G(j, k) += w * std::conj(phi[j]) * phi[k];
            R[static_cast<std::size_t>(j)] += w * std::conj(phi[j]) * s.terms[static_cast<std::size_t>(n)];
        }
    }
    Eigen::FullPivLU<Eigen::Matrix3cd> lu(G);
    if (!lu.isInvertible()) return s;
    const Eigen::Matrix3cd Gi = lu.inverse();

    // Only the oscillating coefficient rows (1 and 2) are needed.
    Eigen::MatrixXcd C = Gi(1, 0) * R[0] + Gi(1, 1) * R[1] + Gi(1, 2) * R[2];
    Eigen::MatrixXcd D = Gi(2, 0) * R[0] + Gi(2, 1) * R[1] + Gi(2, 2) * R[2];

    AbelSeries out;
    out.sup_estimate = s.sup_estimate;
    mu_n = Complex(1.0, 0.0);
    for (int n = 0; n <= M; ++n, mu_n *= mu)
        out.terms.push_back(s.terms[static_cast<std::size_t>(n)] - mu_n * C -
                            std::conj(mu_n) * D);
    return out;
}

/**
 * Removes every analytically known non-level mode from a duplicity iterate
 * series of depth-`obs_depth` compressions.
 *
 * With μ = q^{2it} and ρ = 1/q the compressed sphere sums follow the finite
 * mode expansion
 *
 *     s_n(i,j) = Σ_m A_m(i,j) λ_mⁿ,   λ_m ∈ {1, μ, μ̄} ∪ ρ·{±1, ±μ, ±μ̄},
 *
 * with machine-exact residuals for every n ≥ max(1, obs_depth − 1): a
 * constant level, two unimodular branch-phase oscillations, and a
 * geometrically decaying family whose ± splitting carries the inversion
 * parity of the letter-count transfer matrix (spectrum {q, +1, −1}).  Nine
 * amplitudes against at most nine window points would leave the level
 * unidentifiable, but two entrywise identities link the ± members of the
 * ρμ pairs (the mode-structure tests pin both to machine precision):
 *
 *   - A_{ρμ}(i,·) vanishes unless the basis word of row i ends with b or
 *     b⁻¹, and on those rows A_{−ρμ}(i,·) = σ(i)·(q−1)/(q+1)·A_{ρμ}(i,·)
 *     where σ(i) is −(−1)^{obs} for b endings and +(−1)^{obs} for b⁻¹
 *     endings;
 *   - the conjugate pair satisfies the same relation along columns.
 *
 * Each linked pair hence contributes a single unknown per entry, and the
 * seven unknowns are solved per entry over the window n = n₀..M — exactly
 * determined at seven points, least squares with a residual gate beyond.
 * The six non-level components are subtracted from every term, leaving a
 * series constant up to the pre-window transient, which the downstream
 * Abel evaluation suppresses.  Falls back to the plain oscillation strip
 * when the window is shorter than seven points, the basis degenerates
 * (μ ≈ ±1), or the residual gate rejects the expansion.
 */
AbelSeries strip_decaying_modes(const AbelSeries& s, const Alphabet& A, int obs_depth,
                                Letter b, double q, Complex mu) {
    const int M = static_cast<int>(s.terms.size()) - 1;
    const int lo = std::max(1, obs_depth - 1);
    const int points = M - lo + 1;
    // The pair-link identities hold for observation depths 1..3; deeper
    // compressions mix the ρμ amplitudes across all rows and only the plain
    // oscillation strip remains safe.
    if (points < 7 || obs_depth < 1 || obs_depth > 3 || std::abs(mu.imag()) < 1e-6)
        return strip_known_oscillation(s, mu);

    const double rho = 1.0 / q;
    const double link = (q - 1.0) / (q + 1.0);
    const int par = (obs_depth % 2 == 0) ? 1 : -1;

    const long long d = num_words(A, obs_depth);
    std::vector<int> sig(static_cast<std::size_t>(d), 0);
    for (long long i = 0; i < d; ++i) {
        const Letter last = word_at(A, obs_depth, i).letters().back();
        if (last == b) sig[static_cast<std::size_t>(i)] = -par;
        else if (last == Alphabet::inv(b)) sig[static_cast<std::size_t>(i)] = par;
    }

    // Power tables over the full term range; mode 5/6 columns per link sign.
    const Complex cmu = mu, crm = -rho * mu, crp = rho * mu;
    std::vector<Complex> pw_mu(static_cast<std::size_t>(M + 1)),
        pw_rp(static_cast<std::size_t>(M + 1)), pw_rm(static_cast<std::size_t>(M + 1)),
        pw_rmu(static_cast<std::size_t>(M + 1)), pw_mrmu(static_cast<std::size_t>(M + 1));
    for (int n = 0; n <= M; ++n) {
        pw_mu[static_cast<std::size_t>(n)] = std::pow(cmu, n);
        pw_rp[static_cast<std::size_t>(n)] = std::pow(rho, n);
        pw_rm[static_cast<std::size_t>(n)] = std::pow(-rho, n);
        pw_rmu[static_cast<std::size_t>(n)] = std::pow(crp, n);
        pw_mrmu[static_cast<std::size_t>(n)] = std::pow(crm, n);
    }
    const auto col5 = [&](int si, int n) {
        const std::size_t m = static_cast<std::size_t>(n);
        return si == 0 ? pw_mrmu[m] : pw_rmu[m] + (si * link) * pw_mrmu[m];
    };
    const auto col6 = [&](int sj, int n) { return std::conj(col5(sj, n)); };

    // One window system per (row sign, column sign) pair.
    std::array<Eigen::ColPivHouseholderQR<Eigen::MatrixXcd>, 9> solvers;
    std::array<Eigen::MatrixXcd, 9> bases;
    for (int si = -1; si <= 1; ++si)
        for (int sj = -1; sj <= 1; ++sj) {
            Eigen::MatrixXcd B(points, 7);
            for (int n = lo, r = 0; n <= M; ++n, ++r) {
                const std::size_t m = static_cast<std::size_t>(n);
                B(r, 0) = 1.0;
                B(r, 1) = pw_mu[m];
                B(r, 2) = std::conj(pw_mu[m]);
                B(r, 3) = pw_rp[m];
                B(r, 4) = pw_rm[m];
                B(r, 5) = col5(si, n);
                B(r, 6) = col6(sj, n);
            }
            const std::size_t key = static_cast<std::size_t>((si + 1) * 3 + (sj + 1));
            bases[key] = B;
            solvers[key].compute(B);
        }

    AbelSeries out;
    out.sup_estimate = s.sup_estimate;
    out.terms = s.terms;

    Eigen::VectorXcd y(points);
    for (long long i = 0; i < d; ++i)
        for (long long j = 0; j < d; ++j) {
            const int si = sig[static_cast<std::size_t>(i)];
            const int sj = sig[static_cast<std::size_t>(j)];
            const std::size_t key = static_cast<std::size_t>((si + 1) * 3 + (sj + 1));
            for (int n = lo, r = 0; n <= M; ++n, ++r)
                y(r) = s.terms[static_cast<std::size_t>(n)](i, j);
            const Eigen::VectorXcd X = solvers[key].solve(y);
            if (points > 7) {
                // Spare equations validate the expansion; reject the whole
                // strip on any violation rather than mix models per entry.
                const double scale = std::max(y.cwiseAbs().maxCoeff(), 1e-300);
                if ((bases[key] * X - y).cwiseAbs().maxCoeff() > 1e-7 * scale)
                    return strip_known_oscillation(s, mu);
            }
            for (int n = 0; n <= M; ++n) {
                const std::size_t m = static_cast<std::size_t>(n);
                const Complex junk = X(1) * pw_mu[m] + X(2) * std::conj(pw_mu[m]) +
                                     X(3) * pw_rp[m] + X(4) * pw_rm[m] +
                                     X(5) * col5(si, n) + X(6) * col6(sj, n);
                out.terms[m](i, j) -= junk;
            }
        }
    return out;
}

}  // namespace

FtcResult ftc_value(const EffTuple& F, const EffTuple& G, const std::vector<int>& depths) {
    if (depths.empty()) throw Error("ftc_value: empty depth schedule");
    FtcResult out;
    for (int d : depths) out.values.push_back(tuple_pair(F, G, d));
    const std::size_t m = out.values.size();
    out.limit = out.values.back();
    out.converged = false;
    if (m >= 2) {
        const double last = out.values[m - 1];
        const double inc = last - out.values[m - 2];
        out.converged = std::abs(inc) <= 1e-6 * std::max(std::abs(last), 1e-300);
        if (m >= 3) {
            const double prev_inc = out.values[m - 2] - out.values[m - 3];
            if (std::abs(prev_inc) > 0.0) {
                const double rho = inc / prev_inc;
                if (rho > 1e-12 && rho < 0.999)
                    out.limit = last + inc * rho / (1.0 - rho);
            }
        }
    }
    return out;
}

DupReport dup_limit_check(const Realization& plus, const Realization& minus,
                          const CylinderFn& v, Letter b, int obs_depth, int n_max,
                          const std::vector<double>& schedule, int workers) {
    const Alphabet& A = plus.alphabet();
    if (plus.sign() != Sign::Plus || minus.sign() != Sign::Minus)
        throw Error("dup_limit_check: expected the Plus and Minus realizations");
    if (v.depth() > obs_depth)
        throw DepthTooShallowError("dup_limit_check: observation depth below the depth of v");
    if (obs_depth > plus.max_depth() || obs_depth > minus.max_depth())
        throw DepthTooShallowError(
            "dup_limit_check: realizations were built below the observation depth");
    if (n_max < 1) throw Error("dup_limit_check: n_max must be >= 1");
    const PrincipalSeries& rep = plus.rep();

    // Per-letter iterate series.  The n = 0 term is the start tuple itself:
    // F⁰_a = δ_{ab} v ⊗ v̄ compressed to the observation depth.
    const Eigen::VectorXcd vc = to_coords(promote(v, obs_depth), obs_depth);
    const long long d = num_words(A, obs_depth);
    std::vector<AbelSeries> series(static_cast<std::size_t>(A.size()));
    for (Letter a = 0; a < A.size(); ++a)
        series[static_cast<std::size_t>(a)].terms.push_back(
            a == b ? Eigen::MatrixXcd(vc * vc.adjoint()) : Eigen::MatrixXcd::Zero(d, d));
    for (int n = 1; n <= n_max; ++n) {
        auto iter = iterate_T_rank_one(rep, v, b, n, obs_depth, workers, false);
        for (Letter a = 0; a < A.size(); ++a)
            series[static_cast<std::size_t>(a)].terms.push_back(
                iter[static_cast<std::size_t>(a)].matrix());
    }

    // Pairing-formula prediction.
    const CylinderFn Gb = CylinderFn::one(A) - CylinderFn::indicator(A, Word::single(b));
    DupReport rep_out;
    rep_out.coeff_plus = inner(plus.mu_apply(Gb, v), v).real();
    rep_out.coeff_minus = inner(minus.mu_apply(Gb, v), v).real();
    std::vector<int> depths;
    for (int dd = 1; dd <= plus.max_depth(); ++dd) depths.push_back(dd);
    rep_out.pairing = ftc_value(plus.eff(), minus.eff(), depths).limit;

    // q^{2it}: the phase ratio of the two spherical-function branches.  The
    // iterate series oscillates at this frequency without decay on top of a
    // known family of geometrically decaying modes, so every non-level mode
    // is removed at its exact frequency before the generic extrapolation
    // evaluates the remaining level.
    const Complex mu = std::polar(1.0, 2.0 * rep.t() * std::log(rep.q()));
    for (Letter a = 0; a < A.size(); ++a) {
        const AbelLimit al = abel_extrapolate(
            strip_decaying_modes(series[static_cast<std::size_t>(a)], A, obs_depth, b,
                                 rep.q(), mu),
            schedule);
        rep_out.lhs.push_back(al.limit);
        rep_out.diverged = rep_out.diverged || al.diverged;
        rep_out.abel_error = std::max(rep_out.abel_error, al.error_estimate);
        rep_out.tail_bound = std::max(rep_out.tail_bound, al.tail_bound);

        Eigen::MatrixXcd r =
            (rep_out.coeff_minus * plus.eff().at(a).at_depth(obs_depth) +
             rep_out.coeff_plus * minus.eff().at(a).at_depth(obs_depth)) /
            rep_out.pairing;
        rep_out.rhs.push_back(r);

        const double rscale = r.cwiseAbs().maxCoeff();
        const double diff = (al.limit - r).cwiseAbs().maxCoeff();
        const double rel = rscale > 1e-14 ? diff / rscale : diff;
        rep_out.rel_error.push_back(rel);
        rep_out.max_rel_error = std::max(rep_out.max_rel_error, rel);
    }
    return rep_out;
}

}  // namespace fgb
