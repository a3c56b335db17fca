#include <doctest.h>

#include "fgb/psd.hpp"
#include "fgb/rng.hpp"

using namespace fgb;
using doctest::Approx;

TEST_SUITE("opalg") {

TEST_CASE("psd_sqrt basics") {
    Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(5, 5);
    CHECK((psd_sqrt(I) - I).cwiseAbs().maxCoeff() < 1e-12);

    Eigen::VectorXd d(3);
    d << 4.0, 9.0, 0.0;
    Eigen::MatrixXcd D = d.asDiagonal().toDenseMatrix().cast<Complex>();
    Eigen::MatrixXcd R = psd_sqrt(D);
    CHECK(std::abs(R(0, 0)) == Approx(2.0));
    CHECK(std::abs(R(1, 1)) == Approx(3.0));
    CHECK(std::abs(R(2, 2)) < 1e-12);

    Rng rng(7);
    Eigen::MatrixXcd S = rng.psd_matrix(8);
    Eigen::MatrixXcd r = psd_sqrt(S);
    CHECK((r * r - S).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((r - r.adjoint()).cwiseAbs().maxCoeff() < 1e-10);

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(1, 1) = -1.0;
    CHECK_THROWS_AS(psd_sqrt(bad), NotPSDError);
    // Tiny negative noise is clamped, not rejected.
    bad(1, 1) = -1e-13;
    CHECK_NOTHROW(psd_sqrt(bad));
}

TEST_CASE("trace pairing identities") {
    Alphabet A(2);
    Rng rng(11);

    // TR(Id, Id) at depth N equals dim H_N.
    for (int N : {1, 2, 3}) {
        Eigen::Index n = num_words(A, N);
        Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
        CHECK(trace_pair(I, I) == Approx(static_cast<double>(n)).epsilon(1e-12));
    }

    // Rank-one identity TR(v⊗v̄, T) = <Tv, v>.
    Eigen::Index n = num_words(A, 2);
    Eigen::VectorXcd v = rng.cvector(n);
    Eigen::MatrixXcd T = rng.psd_matrix(n);
    CHECK(trace_pair(v * v.adjoint(), T) == Approx((v.adjoint() * T * v)(0).real()).epsilon(1e-10));

    // Symmetry, linearity in each slot, unitary invariance, monotonicity.
    Eigen::MatrixXcd S = rng.psd_matrix(n), T2 = rng.psd_matrix(n);
    CHECK(trace_pair(S, T) == Approx(trace_pair(T, S)).epsilon(1e-10));
    CHECK(trace_pair(S, T + 2.0 * T2) ==
          Approx(trace_pair(S, T) + 2.0 * trace_pair(S, T2)).epsilon(1e-10));
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(rng.cmatrix(n, n));
    Eigen::MatrixXcd U = qr.householderQ();
    CHECK(trace_pair(U * S * U.adjoint(), U * T * U.adjoint()) ==
          Approx(trace_pair(S, T)).epsilon(1e-9));
    CHECK(trace_pair(S, T) <= trace_pair(S, T + T2) + 1e-10);  // T ≤ T+T2

    // TR(S,T) = ||√S·√T||²_HS.
    double hs = hs_norm(psd_sqrt(S) * psd_sqrt(T));
    CHECK(trace_pair(S, T) == Approx(hs * hs).epsilon(1e-9));

    // TR(S,T) = 0 forces the products to vanish.
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(4, 4), Q = Eigen::MatrixXcd::Zero(4, 4);
    P(0, 0) = 1.0;
    P(1, 1) = 1.0;
    Q(2, 2) = 0.5;
    CHECK(std::abs(trace_pair(P, Q)) < 1e-12);
    CHECK(spectral_norm(P * Q) < 1e-8);
}

TEST_CASE("tuple pairing") {
    Alphabet A(2);
    Rng rng(13);
    int depth = 2;
    Eigen::Index n = num_words(A, depth);

    // (F, F̃) sums TR over off-diagonal letter pairs.
    EffTuple F = EffTuple::zero(A, depth, depth), G = EffTuple::zero(A, depth, depth);
    for (Letter a = 0; a < A.size(); ++a) {
        F.at(a).at_depth(depth) = rng.psd_matrix(n);
        G.at(a).at_depth(depth) = rng.psd_matrix(n);
    }
    double direct = 0.0;
    for (Letter a = 0; a < A.size(); ++a)
        for (Letter b = 0; b < A.size(); ++b)
            if (a != b) direct += trace_pair(F.at(a).at_depth(depth), G.at(b).at_depth(depth));
    CHECK(tuple_pair(F, G, depth) == Approx(direct).epsilon(1e-12));

    // (F, F) = 2(F₁, F₂) for F = F₁ + F₂ with (F₁,F₁) = (F₂,F₂) = 0
    // (each Fᵢ concentrated on a single letter).
    EffTuple F1 = EffTuple::zero(A, depth, depth), F2 = EffTuple::zero(A, depth, depth);
    F1.at(0).at_depth(depth) = rng.psd_matrix(n);
    F2.at(2).at_depth(depth) = rng.psd_matrix(n);
    CHECK(std::abs(tuple_pair(F1, F1, depth)) < 1e-10);
    CHECK(std::abs(tuple_pair(F2, F2, depth)) < 1e-10);
    CHECK(tuple_pair(F1 + F2, F1 + F2, depth) ==
          Approx(2.0 * tuple_pair(F1, F2, depth)).epsilon(1e-10));
}

TEST_CASE("dominance and the square-root construction bound") {
    Rng rng(17);
    Eigen::Index n = 10;

    // v = √Q·u obeys v⊗v̄ ≤ ||u||²·Q.
    Eigen::MatrixXcd Q = rng.psd_matrix(n);
    Eigen::VectorXcd u = rng.cvector(n);
    Eigen::VectorXcd v = psd_sqrt(Q) * u;
    auto res = dominance(v * v.adjoint(), Q, u.squaredNorm());
    CHECK(res.ok);

    // Clear violation is reported with its witness eigenvalue.
    auto bad = dominance(Eigen::MatrixXcd::Identity(3, 3), Eigen::MatrixXcd::Zero(3, 3), 1.0);
    CHECK(!bad.ok);
    CHECK(bad.min_eig == Approx(-1.0));

    // Dominance scales monotonically in C.
    Eigen::MatrixXcd S = rng.psd_matrix(n);
    Eigen::MatrixXcd T = S + rng.psd_matrix(n);
    CHECK(dominance(S, T, 1.0).ok);
    CHECK(dominance(S, T, 2.0).min_eig >= dominance(S, T, 1.0).min_eig);
}

TEST_CASE("block operators and the filtration") {
    Alphabet A(2);

    // The inclusion is an isometry and intertwines with itself consistently.
    for (int d : {0, 1, 2, 3}) {
        Eigen::MatrixXcd V = promote_isometry(A, d);
        CHECK((V.adjoint() * V -
               Eigen::MatrixXcd::Identity(num_words(A, d), num_words(A, d)))
                  .cwiseAbs().maxCoeff() < 1e-14);
    }

    // Promotion isometry reproduces promote() in coordinates.
    Rng rng(23);
    CylinderFn f = rng.cylinder_fn(A, 2);
    Eigen::VectorXcd lifted = promote_isometry(A, 2) * to_coords(f, 2);
    CHECK((lifted - to_coords(f, 3)).cwiseAbs().maxCoeff() < 1e-12);

    // Rank-one block operators are filtration-consistent; identity too.
    CylinderFn v = rng.cylinder_fn(A, 1);
    CHECK(filtration_defect(BlockOperator::rank_one(v, 4)) < 1e-12);
    CHECK(filtration_defect(BlockOperator::identity(A, 0, 4)) < 1e-15);

    // Rank-one matches the L2 geometry: tr at depth d equals ||v||².
    BlockOperator R = BlockOperator::rank_one(v, 3);
    double nrm = l2_norm(v);
    for (int d = 1; d <= 3; ++d)
        CHECK(R.at_depth(d).trace().real() == Approx(nrm * nrm).epsilon(1e-12));

    // RankOneSum accumulates the same matrix as its vector list.
    RankOneSum sum(A, 2);
    for (int i = 0; i < 5; ++i) sum.add(rng.cvector(num_words(A, 2)));
    Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(num_words(A, 2), num_words(A, 2));
    for (const auto& w : sum.vectors()) direct += w * w.adjoint();
    CHECK((sum.matrix() - direct).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(sum.count() == 5);
}

}  // TEST_SUITE
