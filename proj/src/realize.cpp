#include "fgb/realize.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "fgb/psd.hpp"
#include "fgb/sphere.hpp"

namespace fgb {

BlockOperator mu_from_eff(const EffTuple& F, const PrincipalSeries& rep,
                          const CylinderFn& G, double fixed_tol) {
    const Alphabet& A = F.alphabet();
    if (F.base() != 0) throw Error("mu_from_eff: tuple must start at depth 0");
    if (F.max_depth() < 1)
        throw DepthTooShallowError("mu_from_eff: need at least one depth of headroom");

    EffTuple TF = apply_T(F, rep);
    double defect = 0.0;
    for (Letter a = 0; a < A.size(); ++a)
        for (int d = TF.base(); d <= TF.max_depth(); ++d)
            defect = std::max(defect,
                              spectral_norm(TF.at(a).at_depth(d) - F.at(a).at_depth(d)));
    if (defect > fixed_tol)
        throw NotFixedPointError("mu_from_eff: tuple is not transfer-fixed (defect " +
                                 std::to_string(defect) + ")");

    const int m = std::max(1, G.depth());
    const int out_max = F.max_depth() - (m - 1);
    if (out_max < 0)
        throw DepthTooShallowError("mu_from_eff: tuple too shallow for this weight");
    const CylinderFn Gp = promote(G, m);

    std::vector<Eigen::MatrixXcd> blocks;
    for (int d = 0; d <= out_max; ++d) {
        const Eigen::Index nd = num_words(A, d);
        Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(nd, nd);
        for (Eigen::Index idx = 0; idx < num_words(A, m); ++idx) {
            const Complex g = Gp.value(idx);
            if (g == Complex(0.0)) continue;
            const Word w = word_at(A, m, idx);
            const Letter a = w.last();
            const Word x = w.prefix(m - 1);
            if (x.empty()) {
                M += g * F.at(a).at_depth(d);
            } else {
                // π(x⁻¹) maps H_d into H_{d+m−1} exactly, so the compression
                // of π(x) F_a π(x)⁻¹ to depth d is U* F_a U with U = π(x⁻¹).
                const Eigen::MatrixXcd U = rep.op_matrix(inverse(x), d);
                M += g * (U.adjoint() * F.at(a).at_depth(d + m - 1) * U);
            }
        }
        blocks.push_back(std::move(M));
    }
    return BlockOperator(A, 0, std::move(blocks));
}

PerfectnessReport perfectness_test(const EffTuple& F, double tol) {
    const Alphabet& A = F.alphabet();
    PerfectnessReport rep{true, 0.0, 0, F.base(), 0.0};
    for (int d = F.base(); d <= F.max_depth(); ++d) {
        const Eigen::Index nd = num_words(A, d);
        rep.realization_defect =
            std::max(rep.realization_defect,
                     spectral_norm(F.component_sum(d) -
                                   Eigen::MatrixXcd::Identity(nd, nd)));
    }
    if (rep.realization_defect > tol)
        throw NotRealizationError("perfectness_test: components do not sum to Id (defect " +
                                  std::to_string(rep.realization_defect) + ")");
    // Idempotency is an operator identity; it is visible on the depth blocks
    // only where the components act invariantly, i.e. from depth 1 up (the
    // depth-0 compression of a letter component is the scalar mean and is
    // never idempotent, projection or not).
    rep.worst_depth = std::max(F.base(), 1);
    for (Letter a = 0; a < A.size(); ++a)
        for (int d = std::max(F.base(), 1); d <= F.max_depth(); ++d) {
            const Eigen::MatrixXcd& B = F.at(a).at_depth(d);
            const double dev = spectral_norm(B * B - B);
            if (dev > rep.max_defect) {
                rep.max_defect = dev;
                rep.worst_letter = a;
                rep.worst_depth = d;
            }
        }
    rep.perfect = rep.max_defect < tol;
    return rep;
}

MuEvaluator mu_of(const Realization& real) {
    return [r = &real](const CylinderFn& G, int depth) { return r->mu_block(G, depth); };
}

GnsSpace::GnsSpace(MuEvaluator mu, const Alphabet& A, int weight_depth,
                   std::vector<CylinderFn> vectors, double null_tol)
    : mu_(std::move(mu)), A_(A), wdepth_(weight_depth), vecs_(std::move(vectors)) {
    if (wdepth_ < 1) throw Error("GnsSpace: weight depth must be at least 1");
    if (vecs_.empty()) throw Error("GnsSpace: need at least one generating vector");
    int vd = 0;
    for (const CylinderFn& v : vecs_) vd = std::max(vd, v.depth());
    const int de = std::max(wdepth_, vd);

    const Eigen::Index W = num_words(A_, wdepth_);
    const Eigen::Index V = static_cast<Eigen::Index>(vecs_.size());
    Eigen::MatrixXcd Vc(num_words(A_, de), V);
    for (Eigen::Index i = 0; i < V; ++i)
        Vc.col(i) = to_coords(vecs_[static_cast<std::size_t>(i)], de);

    gram_ = Eigen::MatrixXcd::Zero(W * V, W * V);
    for (Eigen::Index iw = 0; iw < W; ++iw) {
        const CylinderFn ind = CylinderFn::indicator(A_, word_at(A_, wdepth_, iw));
        gram_.block(iw * V, iw * V, V, V) = Vc.adjoint() * mu_(ind, de) * Vc;
    }
    gram_ = 0.5 * (gram_ + gram_.adjoint()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram_);
    const Eigen::VectorXd eigs = es.eigenvalues();  // ascending
    const double lmax = std::max(0.0, eigs(eigs.size() - 1));
    min_eig_ = eigs(0);
    if (min_eig_ < -1e-8 * std::max(1.0, lmax))
        throw NotPSDGramError("GnsSpace: Gram matrix not PSD (min eigenvalue " +
                              std::to_string(min_eig_) + "); map is not positive");

    const double cut = null_tol * lmax;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index i = eigs.size() - 1; i >= 0; --i)
        if (eigs(i) > cut) kept.push_back(i);
    ukept_.resize(gram_.rows(), static_cast<Eigen::Index>(kept.size()));
    lkept_.resize(static_cast<Eigen::Index>(kept.size()));
    for (std::size_t c = 0; c < kept.size(); ++c) {
        ukept_.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(kept[c]);
        lkept_(static_cast<Eigen::Index>(c)) = eigs(kept[c]);
    }
}

Eigen::VectorXcd GnsSpace::embed_coords(const Eigen::VectorXcd& coeffs) const {
    if (coeffs.size() != gram_.rows())
        throw Error("GnsSpace::embed_coords: coefficient vector has wrong size");
    return lkept_.cwiseSqrt().asDiagonal() * (ukept_.adjoint() * coeffs);
}

Eigen::VectorXcd GnsSpace::iota(const CylinderFn& v) const {
    int vd = v.depth();
    for (const CylinderFn& u : vecs_) vd = std::max(vd, u.depth());
    const Eigen::Index V = static_cast<Eigen::Index>(vecs_.size());
    Eigen::MatrixXcd Vm(num_words(A_, vd), V);
    for (Eigen::Index i = 0; i < V; ++i)
        Vm.col(i) = to_coords(vecs_[static_cast<std::size_t>(i)], vd);
    const Eigen::VectorXcd x = to_coords(v, vd);
    const Eigen::VectorXcd alpha = Vm.colPivHouseholderQr().solve(x);
    if ((Vm * alpha - x).norm() > 1e-8 * std::max(1.0, x.norm()))
        throw Error("GnsSpace::iota: vector lies outside the generating span");

    const Eigen::Index W = num_words(A_, wdepth_);
    Eigen::VectorXcd c(W * V);
    for (Eigen::Index iw = 0; iw < W; ++iw) c.segment(iw * V, V) = alpha;
    return embed_coords(c);
}

Eigen::MatrixXcd GnsSpace::weight_action(const CylinderFn& G) const {
    if (G.depth() > wdepth_)
        throw Error("GnsSpace::weight_action: weight finer than the generating family");
    const CylinderFn Gp = promote(G, wdepth_);
    const Eigen::Index W = num_words(A_, wdepth_);
    const Eigen::Index V = static_cast<Eigen::Index>(vecs_.size());

    // Multiplication scales generator (w, v) by G(w); conjugate into the
    // orthonormal quotient coordinates z = Λ^{1/2} U* c.
    Eigen::MatrixXcd DU = ukept_;
    for (Eigen::Index iw = 0; iw < W; ++iw)
        DU.middleRows(iw * V, V) *= Gp.value(iw);
    Eigen::MatrixXcd M = ukept_.adjoint() * DU;
    for (Eigen::Index r = 0; r < M.rows(); ++r)
        for (Eigen::Index s = 0; s < M.cols(); ++s)
            M(r, s) *= std::sqrt(lkept_(r) / lkept_(s));
    return M;
}

Eigen::MatrixXcd GnsSpace::translated_gram(const Word& x, const PrincipalSeries& rep) const {
    int vd = 0;
    for (const CylinderFn& v : vecs_) vd = std::max(vd, v.depth());
    const int de = std::max(wdepth_, vd) + x.length();

    const Eigen::Index W = num_words(A_, wdepth_);
    const Eigen::Index V = static_cast<Eigen::Index>(vecs_.size());
    Eigen::MatrixXcd Vc(num_words(A_, de), V);
    for (Eigen::Index i = 0; i < V; ++i)
        Vc.col(i) = to_coords(rep.act(x, vecs_[static_cast<std::size_t>(i)]), de);

    // Translation preserves the disjointness of the weight supports, so the
    // translated Gram is block-diagonal over the same weight index.
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(W * V, W * V);
    for (Eigen::Index iw = 0; iw < W; ++iw) {
        const CylinderFn tw =
            translate(x, CylinderFn::indicator(A_, word_at(A_, wdepth_, iw)));
        out.block(iw * V, iw * V, V, V) = Vc.adjoint() * mu_(tw, de) * Vc;
    }
    return 0.5 * (out + out.adjoint()).eval();
}

double OddSymmDepth::max_dev() const {
    const double lo = std::min(std::min(pair11, hs21), std::min(hs12, pair22));
    const double hi = std::max(std::max(pair11, hs21), std::max(hs12, pair22));
    return hi - lo;
}

OddSymmDepth odd_symm_depth(const Realization& plus, const Eigen::MatrixXcd& embed2,
                            int depth) {
    const Alphabet& A = plus.alphabet();
    const Eigen::Index n = num_words(A, depth);
    if (embed2.rows() != n || embed2.cols() != n)
        throw Error("odd_symm_depth: embedding block has wrong dimension");
    if (spectral_norm(embed2.adjoint() * embed2 - Eigen::MatrixXcd::Identity(n, n)) > 1e-8)
        throw Error("odd_symm_depth: embedding block is not unitary");

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::MatrixXcd iota2(2 * n, n), kappa(2 * n, n);
    iota2.topRows(n) = inv_sqrt2 * Eigen::MatrixXcd::Identity(n, n);
    iota2.bottomRows(n) = inv_sqrt2 * embed2;
    kappa.topRows(n) = inv_sqrt2 * Eigen::MatrixXcd::Identity(n, n);
    kappa.bottomRows(n) = -inv_sqrt2 * embed2;

    std::vector<Eigen::MatrixXcd> C, D, B21, B12;
    Eigen::MatrixXcd off_sum = Eigen::MatrixXcd::Zero(n, n);
    for (Letter a = 0; a < A.size(); ++a) {
        const Eigen::MatrixXcd Ma =
            plus.mu_block(CylinderFn::indicator(A, Word::single(a)), depth);
        Eigen::MatrixXcd Pi = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
        Pi.topLeftCorner(n, n) = Ma;
        Pi.bottomRightCorner(n, n) = Ma;
        C.push_back(iota2.adjoint() * Pi * iota2);
        D.push_back(kappa.adjoint() * Pi * kappa);
        B21.push_back(kappa.adjoint() * Pi * iota2);
        B12.push_back(iota2.adjoint() * Pi * kappa);
        off_sum += B21.back();
    }

    OddSymmDepth out{0.0, 0.0, 0.0, 0.0, spectral_norm(off_sum)};
    for (Letter a = 0; a < A.size(); ++a) {
        out.hs21 += hs_norm(B21[static_cast<std::size_t>(a)]) *
                    hs_norm(B21[static_cast<std::size_t>(a)]);
        out.hs12 += hs_norm(B12[static_cast<std::size_t>(a)]) *
                    hs_norm(B12[static_cast<std::size_t>(a)]);
        for (Letter b = 0; b < A.size(); ++b) {
            if (a == b) continue;
            out.pair11 += trace_pair(C[static_cast<std::size_t>(a)],
                                     C[static_cast<std::size_t>(b)]);
            out.pair22 += trace_pair(D[static_cast<std::size_t>(a)],
                                     D[static_cast<std::size_t>(b)]);
        }
    }
    return out;
}

OddSymmReport odd_symm_check(const Realization& plus, const Realization& minus, int N) {
    if (plus.sign() != Sign::Plus || minus.sign() != Sign::Minus)
        throw Error("odd_symm_check: expects the plus and minus realizations, in order");
    if (N > plus.max_depth() || N > minus.max_depth())
        throw DepthTooShallowError("odd_symm_check: depth exceeds the built realizations");
    OddSymmReport rep;
    for (int d = 1; d <= N; ++d) {
        rep.per_depth.push_back(odd_symm_depth(plus, minus.intertwiner_block(d), d));
        rep.max_dev = std::max(rep.max_dev, rep.per_depth.back().max_dev());
    }
    return rep;
}

BoundarySplit boundary_split(const Realization& real, int N, int probe_depth, double tol) {
    if (N > real.max_depth())
        throw DepthTooShallowError("boundary_split: depth exceeds the built realization");
    if (probe_depth < 1) throw Error("boundary_split: probe depth must be at least 1");
    const Alphabet& A = real.alphabet();
    const Eigen::Index n = num_words(A, N);

    BoundarySplit out;
    Eigen::Index rows = 0;
    for (int j = 1; j <= probe_depth; ++j) rows += num_words(A, j);
    Eigen::MatrixXcd stack(rows * n, n);
    Eigen::Index at = 0;
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd;
    for (int j = 1; j <= probe_depth; ++j) {
        for (Eigen::Index iz = 0; iz < num_words(A, j); ++iz) {
            const CylinderFn ind = CylinderFn::indicator(A, word_at(A, j, iz));
            const Eigen::MatrixXcd Mz = real.mu_block(ind, N);
            stack.middleRows(at * n, n) = Mz - Mz * Mz;
            ++at;
        }
        svd.compute(stack.topRows(at * n), Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        const double cut = tol * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
        Eigen::Index null_dim = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            if (sv(i) <= cut) ++null_dim;
        null_dim += n - sv.size();  // V columns beyond the rank bound
        out.dim_per_depth.push_back(static_cast<int>(null_dim));
        if (j == probe_depth) {
            out.projective_basis = svd.matrixV().rightCols(null_dim);
            out.generic_basis = svd.matrixV().leftCols(n - null_dim);
        }
    }
    return out;
}

TraceFeasibility eff_finite_dim_obstruction(int dim, int k) {
    if (dim < 0 || k < 1) throw Error("eff_finite_dim_obstruction: need dim >= 0, k >= 1");
    const int n = 2 * k;
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n);
    for (int a = 0; a < n; ++a) {
        M(a, a) = 1.0;
        for (int b = 0; b < n; ++b)
            if (b != (a ^ 1)) M(a, b) -= 1.0;
    }
    M.row(n).setOnes();
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
    rhs(n) = static_cast<double>(dim);

    TraceFeasibility out;
    out.best = M.colPivHouseholderQr().solve(rhs);
    out.residual = (M * out.best - rhs).norm();
    out.feasible = out.residual < 1e-9 * std::max(1.0, static_cast<double>(dim)) &&
                   out.best.minCoeff() > -1e-9;
    return out;
}

}  // namespace fgb
