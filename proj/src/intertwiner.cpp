#include "fgb/intertwiner.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fgb/sphere.hpp"

namespace fgb {

bool is_endpoint(const PrincipalSeries& rep, double tol) {
    const double v = rep.t() * std::log(rep.q()) / std::numbers::pi;
    return std::abs(v - std::round(v)) < tol;
}

BlockOperator intertwiner(const PrincipalSeries& rep, int N) {
    if (is_endpoint(rep))
        throw EndpointError("intertwiner: q^{2it} = 1 at t = " + std::to_string(rep.t()) +
                            "; the two flavours coincide and the operator degenerates");
    const Alphabet& A = rep.alphabet();
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.push_back(Eigen::MatrixXcd::Ones(1, 1));
    for (int d = 1; d <= N; ++d) {
        const long long dn = num_words(A, d);
        const long long dp = num_words(A, d - 1);
        const Eigen::MatrixXcd& prev = blocks.back();

        // Equations X·K_a = R_a for all letters, K_a = π_z(a): H_{d−1} → H_d and
        // R_a = π_{1−z}(a)·I_{d−1}. Normal form: X·(Σ K_aK_a*) = Σ R_aK_a*,
        // assembled through the one-nonzero-per-row structure of the K_a.
        Eigen::MatrixXcd gram = Eigen::MatrixXcd::Zero(dn, dn);
        Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dn, dn);
        for (Letter a = 0; a < A.size(); ++a) {
            const auto ks = rep.letter_step(a, d, false);
            const auto ds = rep.letter_step(a, d, true);
            Eigen::MatrixXcd R(dn, dp);
            for (long long i = 0; i < dn; ++i)
                R.row(i) = ds.wgt(i) * prev.row(ds.src[static_cast<std::size_t>(i)]);
            for (long long v = 0; v < dn; ++v)
                rhs.col(v) += std::conj(ks.wgt(v)) * R.col(ks.src[static_cast<std::size_t>(v)]);
            std::vector<std::vector<long long>> fan(static_cast<std::size_t>(dp));
            for (long long v = 0; v < dn; ++v)
                fan[static_cast<std::size_t>(ks.src[static_cast<std::size_t>(v)])].push_back(v);
            for (const auto& rows : fan)
                for (long long v : rows)
                    for (long long w : rows) gram(v, w) += ks.wgt(v) * std::conj(ks.wgt(w));
        }

        Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
        if (ldlt.info() != Eigen::Success || ldlt.rcond() < 1e-10)
            throw NonUniqueIntertwinerError(
                "intertwiner: stacked system at depth " + std::to_string(d) +
                " is rank-deficient; the solution space exceeds one complex dimension");
        Eigen::MatrixXcd X = ldlt.solve(rhs.adjoint()).adjoint();

        // Enforce nesting exactly: X agrees with the previous block on H_{d−1}
        // and maps its complement to itself (the least-squares solution already
        // does so up to solver noise).
        const Eigen::MatrixXcd V = promote_isometry(A, d - 1);
        const Eigen::MatrixXcd P =
            Eigen::MatrixXcd::Identity(dn, dn) - V * V.adjoint();
        X = V * prev * V.adjoint() + P * X * P;

        // First-order polar correction: X is unitary up to solver noise, so one
        // step of X ← X(𝟙 − (X*X − 𝟙)/2) makes it unitary to quadratic accuracy.
        const Eigen::MatrixXcd E =
            X.adjoint() * X - Eigen::MatrixXcd::Identity(dn, dn);
        if (E.cwiseAbs().maxCoeff() > 1e-14) X -= 0.5 * X * E;

        blocks.push_back(std::move(X));
    }
    BlockOperator I(A, 0, std::move(blocks));
    const double res = intertwining_residual(rep, I);
    if (res > 1e-9)
        throw Error("intertwiner: residual " + std::to_string(res) + " exceeds 1e-9");
    return I;
}

double intertwining_residual(const PrincipalSeries& rep, const BlockOperator& I) {
    const Alphabet& A = rep.alphabet();
    double worst = 0.0;
    for (int d = I.base(); d < I.max_depth(); ++d) {
        for (Letter a = 0; a < A.size(); ++a) {
            const Word w = Word::single(a);
            const Eigen::MatrixXcd K = rep.op_matrix(w, d, false);
            const Eigen::MatrixXcd R = rep.op_matrix(w, d, true);
            const double dev =
                (I.at_depth(d + 1) * K - R * I.at_depth(d)).cwiseAbs().maxCoeff();
            worst = std::max(worst, dev);
        }
    }
    return worst;
}

double structure_defect(const BlockOperator& I, int depth) {
    const Alphabet& A = I.alphabet();
    const Eigen::MatrixXcd& M = I.at_depth(depth);
    const long long n = num_words(A, depth);
    std::vector<Word> words;
    words.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) words.push_back(word_at(A, depth, i));

    std::vector<Complex> sum(static_cast<std::size_t>(depth + 1), Complex(0, 0));
    std::vector<long long> count(static_cast<std::size_t>(depth + 1), 0);
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            const int c = common_prefix_len(words[static_cast<std::size_t>(i)],
                                            words[static_cast<std::size_t>(j)]);
            sum[static_cast<std::size_t>(c)] += M(i, j);
            ++count[static_cast<std::size_t>(c)];
        }
    double worst = 0.0;
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            const int c = common_prefix_len(words[static_cast<std::size_t>(i)],
                                            words[static_cast<std::size_t>(j)]);
            const Complex mean =
                sum[static_cast<std::size_t>(c)] / static_cast<double>(count[static_cast<std::size_t>(c)]);
            worst = std::max(worst, std::abs(M(i, j) - mean));
        }
    return worst;
}

std::vector<Complex> shell_scalars(const BlockOperator& I, int N, double* defect) {
    const Alphabet& A = I.alphabet();
    const Eigen::MatrixXcd& M = I.at_depth(N);
    const long long n = num_words(A, N);

    // C_j = Q_jQ_j* with Q_j the inclusion H_j → H_N; the shell projections are
    // successive differences P_j = C_j − C_{j−1}.
    std::vector<Eigen::MatrixXcd> C(static_cast<std::size_t>(N + 1));
    Eigen::MatrixXcd Q = Eigen::MatrixXcd::Identity(n, n);
    C[static_cast<std::size_t>(N)] = Q;
    for (int j = N - 1; j >= 0; --j) {
        Q = Q * promote_isometry(A, j);
        C[static_cast<std::size_t>(j)] = Q * Q.adjoint();
    }

    std::vector<Complex> scalars(static_cast<std::size_t>(N + 1));
    double worst = 0.0;
    for (int j = 0; j <= N; ++j) {
        Eigen::MatrixXcd P = C[static_cast<std::size_t>(j)];
        if (j > 0) P -= C[static_cast<std::size_t>(j - 1)];
        const long long rank = num_words(A, j) - (j > 0 ? num_words(A, j - 1) : 0);
        const Eigen::MatrixXcd IP = M * P;
        const Complex c = IP.trace() / static_cast<double>(rank);
        scalars[static_cast<std::size_t>(j)] = c;
        worst = std::max(worst, (IP - c * P).cwiseAbs().maxCoeff());
    }
    if (defect) *defect = worst;
    return scalars;
}

}  // namespace fgb
