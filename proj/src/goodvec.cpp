#include "fgb/goodvec.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "fgb/errors.hpp"
#include "fgb/psd.hpp"
#include "fgb/scan.hpp"

namespace fgb {

namespace {

/**
 * Smallest C with T ≤ C·F, or +inf when T carries mass outside the range of
 * F (then no constant works).  Both inputs are Hermitian PSD on one block.
 */
double min_domination_constant(const Eigen::MatrixXcd& T, const Eigen::MatrixXcd& F) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(F);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed on a component");
    const Eigen::VectorXd lam = es.eigenvalues();
    const double lmax = lam.size() ? lam.maxCoeff() : 0.0;
    const double cut = 1e-10 * std::max(lmax, 1.0);

    Eigen::Index kept = 0;
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        if (lam(i) > cut) ++kept;

    const double tnorm = spectral_norm(T);
    if (kept == 0) return tnorm <= 1e-12 ? 0.0 : inf;

    Eigen::MatrixXcd U(F.rows(), kept);
    Eigen::VectorXd d(kept);
    Eigen::Index j = 0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) <= cut) continue;
        U.col(j) = es.eigenvectors().col(i);
        d(j) = lam(i);
        ++j;
    }

    // Mass of T off the range of F makes domination impossible.
    const Eigen::MatrixXcd P = U * U.adjoint();
    if (spectral_norm(T - P * T * P) > 1e-8 * std::max(tnorm, 1.0)) return inf;

    const Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
    const Eigen::MatrixXcd W = s.asDiagonal() * (U.adjoint() * T * U) * s.asDiagonal();
    const double c = spectral_norm(W);
    return c < 0.0 ? 0.0 : c;
}

/**
 * Per-component minimal constants for 𝒯ⁿ(v⊗v̄ in every component) ≤ C·F at
 * the observation depth.  With every starting component equal, the
 * first-letter-a component of the n-th transfer power is q times the
 * unrestricted sphere sum over words starting with a.
 */
double transfer_power_ratio(const Realization& real, const Eigen::VectorXcd& vc, int n,
                            int obs_depth, int workers) {
    const Alphabet& A = real.alphabet();
    const double q = real.rep().q();
    FirstLastBuckets sink(A, obs_depth);
    sphere_scan(real.rep(), obs_depth, n, vc, sink, workers);
    double worst = 0.0;
    for (Letter a = 0; a < A.size(); ++a) {
        const Eigen::MatrixXcd Ta = q * sink.sum(a);
        const Eigen::MatrixXcd Fa = real.eff().at(a).at_depth(obs_depth);
        worst = std::max(worst, min_domination_constant(Ta, (Fa + Fa.adjoint()) / 2.0));
    }
    return worst;
}

}  // namespace

const char* mode_name(GoodVectorCertificate::Mode m) {
    return m == GoodVectorCertificate::Mode::SpecialExact ? "special-exact"
                                                          : "numeric-at-depth";
}

GoodVectorCertificate make_special_good(const Realization& real, const CylinderFn& u,
                                        const Word& z) {
    const Alphabet& A = real.alphabet();
    const int d = u.depth();
    if (z.length() > d)
        throw DepthTooShallowError("witness word is longer than the vector's depth");
    if (d > real.max_depth())
        throw DepthTooShallowError("vector depth exceeds the realization's built depth");

    const Eigen::MatrixXcd M = real.mu_block(CylinderFn::indicator(A, z), d);
    Eigen::MatrixXcd D = M - M * M;
    D = (D + D.adjoint()) / 2.0;

    const Eigen::VectorXcd vc = psd_sqrt(D) * to_coords(u, d);
    const double nu = l2_norm(u);
    return GoodVectorCertificate{from_coords(A, d, vc), z, nu * nu, d, 0,
                                 GoodVectorCertificate::Mode::SpecialExact};
}

SpecialGoodCheck check_special_good(const Realization& real, const CylinderFn& v,
                                    const Word& z, double C, double tol) {
    const Alphabet& A = real.alphabet();
    const int N = v.depth();
    if (z.length() > N)
        throw DepthTooShallowError("witness word is longer than the vector's depth");
    if (N > real.max_depth())
        throw DepthTooShallowError("vector depth exceeds the realization's built depth");

    const Eigen::VectorXcd vc = to_coords(v, N);
    const Eigen::MatrixXcd vv = vc * vc.adjoint();
    const Eigen::MatrixXcd M = real.mu_block(CylinderFn::indicator(A, z), N);
    const Eigen::MatrixXcd Id = Eigen::MatrixXcd::Identity(M.rows(), M.cols());

    const DominanceResult in = dominance(vv, M, C, tol);
    const DominanceResult out = dominance(vv, Id - M, C, tol);
    return SpecialGoodCheck{in.ok && out.ok, std::min(in.min_eig, out.min_eig)};
}

CertifyOutcome certify_good(const Realization& real, const CylinderFn& v, int n_check,
                            double c_search, int obs_depth, int workers) {
    if (n_check < 1) throw Error("certification needs at least one transfer power");
    if (c_search <= 0.0) throw Error("search constant must be positive");
    if (v.depth() > obs_depth)
        throw DepthTooShallowError("observation depth below the vector's depth");
    if (obs_depth > real.max_depth())
        throw DepthTooShallowError("observation depth exceeds the realization's depth");

    const Eigen::VectorXcd vc = to_coords(v, obs_depth);

    std::vector<double> ratio(static_cast<std::size_t>(n_check) + 2, 0.0);
    CertifyOutcome out{std::nullopt, std::numeric_limits<double>::infinity(), 0};
    for (int n = 1; n <= n_check + 1; ++n) {
        ratio[static_cast<std::size_t>(n)] =
            transfer_power_ratio(real, vc, n, obs_depth, workers);
        if (n <= n_check && ratio[static_cast<std::size_t>(n)] < out.best_ratio) {
            out.best_ratio = ratio[static_cast<std::size_t>(n)];
            out.best_power = n;
        }
        if (n >= 2 && ratio[static_cast<std::size_t>(n) - 1] <= c_search &&
            ratio[static_cast<std::size_t>(n)] <= c_search) {
            // Accept the first power that certifies and survives the n+1
            // spot check; the stored constant covers both checked powers.
            const double C = std::max(ratio[static_cast<std::size_t>(n) - 1],
                                      ratio[static_cast<std::size_t>(n)]);
            out.cert = GoodVectorCertificate{
                v, Word(), C, obs_depth, n - 1,
                GoodVectorCertificate::Mode::NumericAtDepth};
            return out;
        }
    }
    return out;
}

SphereBound sphere_bound(const PrincipalSeries& rep, const CylinderFn& v, int n,
                         int obs_depth, const CylinderFn* w, int workers) {
    if (n < 0) throw Error("sphere radius must be nonnegative");
    if (v.depth() > obs_depth || (w && w->depth() > obs_depth))
        throw DepthTooShallowError("observation depth below a vector's depth");

    const Alphabet& A = rep.alphabet();
    Eigen::MatrixXcd total;
    if (n == 0) {
        const Eigen::VectorXcd u = to_coords(v, obs_depth);
        total = u * u.adjoint();
    } else {
        FirstLastBuckets sink(A, obs_depth);
        sphere_scan(rep, obs_depth, n, to_coords(v, obs_depth), sink, workers);
        total = sink.sum();
    }
    total = (total + total.adjoint()) / 2.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(total);
    if (es.info() != Eigen::Success) throw Error("eigensolver failed on the sphere sum");
    SphereBound out{es.eigenvalues().maxCoeff(), 0.0};
    if (w) {
        const Eigen::VectorXcd wc = to_coords(*w, obs_depth);
        out.scalar_sum = std::real((wc.adjoint() * total * wc)(0, 0));
    }
    return out;
}

}  // namespace fgb
