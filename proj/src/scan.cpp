#include "fgb/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fgb/sphere.hpp"

namespace fgb {

void FirstLastBuckets::absorb(const ScanSink& later) {
    const auto& o = dynamic_cast<const FirstLastBuckets&>(later);
    for (std::size_t i = 0; i < buckets_.size(); ++i) buckets_[i] += o.buckets_[i];
}

Eigen::MatrixXcd FirstLastBuckets::sum(std::optional<Letter> first,
                                       std::optional<Letter> forbid_last) const {
    const long long d = num_words(A_, obs_);
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d, d);
    for (Letter f = 0; f < A_.size(); ++f) {
        if (first && *first != f) continue;
        for (Letter l = 0; l < A_.size(); ++l) {
            if (forbid_last && *forbid_last == l) continue;
            s += buckets_[static_cast<std::size_t>(f) * A_.size() + l];
        }
    }
    return s;
}

void RankOneCollector::absorb(const ScanSink& later) {
    const auto& o = dynamic_cast<const RankOneCollector&>(later);
    for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i].merge(o.comps_[i]);
}

namespace {

/** Leaves per chunk; fixed so results are independent of the worker count. */
constexpr long long kChunkLeaves = 1024;

struct ScanPlan {
    const Alphabet* A;
    int obs;
    int n;
    // steps[l][i] drives chain level i (the i-th letter of the reversed word):
    // the one-letter factor Mat(π(l⁻¹): H_{obs+n-i} → H_{obs+n-i+1}), whose
    // adjoint is the compressed action Mat(E_{obs+n-i} π(l)) applied to z_{i-1}.
    std::vector<std::vector<PrincipalSeries::Step>> steps;
    Eigen::MatrixXcd z0;  // scan vectors lifted to coordinates in H_{obs+n}
    bool dual;
};

/**
 * Walk state: the suffix chain, reused across consecutive chunks.  The chain
 * entry chain[i] holds coordinates of z_i = E_{obs+n-i} π(x_{n-i+1} … x_n) v,
 * one column per scan vector, so chain[n] = E_obs π(x) v.  Exactness rests on
 * the identity E_m π(l) = E_m π(l) E_{m+1}: compressions may be interleaved
 * with the letter factors, one depth at a time, without changing the result.
 */
struct ScanWalk {
    explicit ScanWalk(const ScanPlan& P) : plan(P), chain(static_cast<std::size_t>(P.n) + 1) {
        chain[0] = P.z0;
        for (int i = 1; i <= P.n; ++i)
            chain[static_cast<std::size_t>(i)].resize(num_words(*P.A, P.obs + P.n - i),
                                                      P.z0.cols());
    }

    /**
     * Processes the leaves with indices [lo, hi) in order.  Leaf index r
     * encodes the REVERSED word: x̃ = word_at(n, r), x = reverse(x̃).  Only
     * the levels whose letters changed since the previously processed leaf
     * are rebuilt; each level is a bit-identical function of the (suffix, v)
     * alone, so any decomposition of the walk yields identical output.
     */
    void run(long long lo, long long hi, ScanSink& sink) {
        const ScanPlan& P = plan;
        std::vector<Letter> rev(static_cast<std::size_t>(P.n));
        for (long long leaf = lo; leaf < hi; ++leaf) {
            const Word xt = word_at(*P.A, P.n, leaf);
            int common = 0;
            while (common < static_cast<int>(cur.size()) && cur[common] == xt.letter(common))
                ++common;
            for (int i = common + 1; i <= P.n; ++i) {
                const auto& s = P.steps[static_cast<std::size_t>(xt.letter(i - 1))]
                                       [static_cast<std::size_t>(i - 1)];
                const Eigen::MatrixXcd& in = chain[static_cast<std::size_t>(i) - 1];
                Eigen::MatrixXcd& out = chain[static_cast<std::size_t>(i)];
                out.setZero();
                // Adjoint of the sparse one-letter step: one source row per
                // input row, conjugated weight.
                for (long long v = 0; v < s.wgt.size(); ++v)
                    out.row(s.src[static_cast<std::size_t>(v)]) +=
                        std::conj(s.wgt(v)) * in.row(v);
            }
            cur = xt.letters();
            for (int i = 0; i < P.n; ++i)
                rev[static_cast<std::size_t>(i)] = xt.letter(P.n - 1 - i);
            sink.leaf(Word::from_reduced(rev), chain[static_cast<std::size_t>(P.n)]);
        }
    }

    const ScanPlan& plan;
    std::vector<Eigen::MatrixXcd> chain;
    std::vector<Letter> cur;
};

}  // namespace

void sphere_scan(const PrincipalSeries& rep, int obs_depth, int n,
                 const Eigen::MatrixXcd& vectors, ScanSink& sink,
                 int workers, bool dual) {
    const Alphabet& A = rep.alphabet();
    if (n < 1) throw Error("sphere_scan: radius must be >= 1");
    if (obs_depth < 0) throw Error("sphere_scan: observation depth must be >= 0");
    if (vectors.rows() != num_words(A, obs_depth))
        throw Error("sphere_scan: vector coordinates do not match the observation depth");

    ScanPlan P;
    P.A = &A;
    P.obs = obs_depth;
    P.n = n;
    P.dual = dual;
    P.steps.resize(static_cast<std::size_t>(A.size()));
    for (Letter l = 0; l < A.size(); ++l)
        for (int i = 1; i <= n; ++i)
            P.steps[static_cast<std::size_t>(l)].push_back(
                rep.letter_step(Alphabet::inv(l), obs_depth + n - i + 1, dual));
    P.z0.resize(num_words(A, obs_depth + n), vectors.cols());
    for (Eigen::Index c = 0; c < vectors.cols(); ++c)
        P.z0.col(c) = to_coords(
            promote(from_coords(A, obs_depth, vectors.col(c)), obs_depth + n),
            obs_depth + n);

    const long long total = num_words(A, n);
    const long long chunks = (total + kChunkLeaves - 1) / kChunkLeaves;

    if (workers <= 1 || chunks == 1) {
        ScanWalk walk(P);
        for (long long c = 0; c < chunks; ++c) {
            auto part = sink.fresh();
            walk.run(c * kChunkLeaves, std::min(total, (c + 1) * kChunkLeaves), *part);
            sink.absorb(*part);
        }
        return;
    }

    // Each worker walks one contiguous range of chunks with a single chain;
    // chain levels are bit-identical functions of the suffix, so the range
    // boundaries (and hence the worker count) cannot change any partial.
    const long long nw = std::min<long long>(workers, chunks);
    const long long per = (chunks + nw - 1) / nw;
    std::vector<std::unique_ptr<ScanSink>> parts(static_cast<std::size_t>(chunks));
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&](long long chunk_lo, long long chunk_hi) {
        try {
            ScanWalk walk(P);
            for (long long c = chunk_lo; c < chunk_hi; ++c) {
                auto part = sink.fresh();
                walk.run(c * kChunkLeaves, std::min(total, (c + 1) * kChunkLeaves), *part);
                parts[static_cast<std::size_t>(c)] = std::move(part);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (long long w = 0; w < nw; ++w)
        pool.emplace_back(work, w * per, std::min(chunks, (w + 1) * per));
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
    for (auto& part : parts) sink.absorb(*part);
}

}  // namespace fgb
