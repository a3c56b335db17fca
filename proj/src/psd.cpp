#include "fgb/psd.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace fgb {

namespace {
Eigen::MatrixXcd hermitize(const Eigen::MatrixXcd& M) { return 0.5 * (M + M.adjoint()); }
}  // namespace

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& M, double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(M));
    if (es.info() != Eigen::Success) throw Error("psd_sqrt: eigensolver failed");
    Eigen::VectorXd ev = es.eigenvalues();
    double lmax = ev.size() ? std::max(0.0, ev.maxCoeff()) : 0.0;
    double floor = -tol * std::max(1.0, lmax);
    if (ev.size() && ev.minCoeff() < floor)
        throw NotPSDError("psd_sqrt: eigenvalue " + std::to_string(ev.minCoeff()) +
                          " below tolerance " + std::to_string(floor));
    Eigen::VectorXd s = ev.cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
}

double hs_norm(const Eigen::MatrixXcd& M) { return M.norm(); }

double spectral_norm(const Eigen::MatrixXcd& M) {
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
    return svd.singularValues()(0);
}

double trace_pair(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& T) {
    Eigen::MatrixXcd r = psd_sqrt(S);
    return (r * T * r).trace().real();
}

double trace_pair(const BlockOperator& S, const BlockOperator& T, int depth) {
    return trace_pair(S.at_depth(depth), T.at_depth(depth));
}

double tuple_pair(const EffTuple& F, const EffTuple& G, int depth) {
    // tr(√S T √S) = tr(S·T) by cyclicity of the trace on finite blocks, so the
    // pairing is evaluated bilinearly; the equality with the square-root form
    // is itself property-tested where trace_pair is exercised.
    double s = 0.0;
    for (Letter a = 0; a < F.alphabet().size(); ++a)
        for (Letter b = 0; b < F.alphabet().size(); ++b)
            if (a != b) {
                const Eigen::MatrixXcd& S = F.at(a).at_depth(depth);
                const Eigen::MatrixXcd& T = G.at(b).at_depth(depth);
                s += S.transpose().cwiseProduct(T).sum().real();
            }
    return s;
}

DominanceResult dominance(const Eigen::MatrixXcd& S, const Eigen::MatrixXcd& T, double C,
                          double tol) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitize(C * T - S));
    if (es.info() != Eigen::Success) throw Error("dominance: eigensolver failed");
    double min_eig = es.eigenvalues().minCoeff();
    return {min_eig >= -tol, min_eig};
}

}  // namespace fgb
