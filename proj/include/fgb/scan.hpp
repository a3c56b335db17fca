#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <vector>

#include "fgb/blockop.hpp"
#include "fgb/principal.hpp"

namespace fgb {

/**
 * Consumer interface for sphere scans.
 *
 * The scan enumerates the sphere of radius n ordered lexicographically by the
 * REVERSED letter sequence (so words sharing a long common suffix are
 * adjacent), sliced into fixed-size chunks of consecutive words.  Each chunk
 * is processed into a fresh sink and the chunk sinks are then folded into the
 * caller's sink in chunk order.  Because the enumeration order, the chunk
 * decomposition, and the fold order are fixed, serial and parallel runs
 * perform bit-identical floating-point arithmetic for any worker count.
 */
class ScanSink {
public:
    virtual ~ScanSink() = default;

    /** One word x with |x| = n; column i of U holds coords of E_obs π(x)vᵢ. */
    virtual void leaf(const Word& x, const Eigen::MatrixXcd& U) = 0;

    /** An empty sink of the same kind, used for a chunk's partial result. */
    virtual std::unique_ptr<ScanSink> fresh() const = 0;

    /** Folds a later chunk's partial result into this sink. */
    virtual void absorb(const ScanSink& later) = 0;
};

/**
 * For every reduced word x with |x| = n (ordered lexicographically by the
 * reversed letter sequence) computes the depth-obs_depth compression of π(x)
 * applied to each column of `vectors` (coordinates in H_{obs_depth}) and
 * feeds the sink.
 *
 * The computation is exact: because one letter changes depth by at most one,
 * E_m π(l) = E_m π(l) E_{m+1}, so E_obs π(x)v factors through a chain of
 * once-compressed letter applications.  The scan carries that vector chain
 * down the enumeration tree, reusing shared suffixes.  Requires n ≥ 1; the
 * radius-0 sphere is the identity word, which callers handle directly.
 */
void sphere_scan(const PrincipalSeries& rep, int obs_depth, int n,
                 const Eigen::MatrixXcd& vectors, ScanSink& sink,
                 int workers = 1, bool dual = false);

/**
 * Accumulates Σ_x u_x u_x* over the scanned sphere, bucketed by the (first
 * letter, last letter) pair of x, where u_x = E_obs π(x)v.  Requires a
 * single scan vector and n ≥ 1.
 */
class FirstLastBuckets : public ScanSink {
public:
    FirstLastBuckets(const Alphabet& A, int obs_depth)
        : A_(A), obs_(obs_depth) {
        const long long d = num_words(A, obs_depth);
        buckets_.assign(static_cast<std::size_t>(A.size()) * A.size(),
                        Eigen::MatrixXcd::Zero(d, d));
    }

    void leaf(const Word& x, const Eigen::MatrixXcd& U) override {
        Eigen::MatrixXcd& B =
            buckets_[static_cast<std::size_t>(x.first()) * A_.size() + x.last()];
        B.noalias() += U.col(0) * U.col(0).adjoint();
    }

    std::unique_ptr<ScanSink> fresh() const override {
        return std::make_unique<FirstLastBuckets>(A_, obs_);
    }

    void absorb(const ScanSink& later) override;

    /**
     * Σ u_x u_x* over the words matching the constraints: first letter equal
     * to `first` (all first letters if unset) and last letter different from
     * `forbid_last` (no restriction if unset).
     */
    Eigen::MatrixXcd sum(std::optional<Letter> first = std::nullopt,
                         std::optional<Letter> forbid_last = std::nullopt) const;

private:
    Alphabet A_;
    int obs_;
    std::vector<Eigen::MatrixXcd> buckets_;
};

/**
 * Collects the vectors u_x = E_obs π(x)v into one RankOneSum per first
 * letter, skipping words whose last letter equals `forbid_last`.  Requires a
 * single scan vector and n ≥ 1.
 */
class RankOneCollector : public ScanSink {
public:
    RankOneCollector(const Alphabet& A, int obs_depth, Letter forbid_last,
                     bool keep_vectors = true)
        : A_(A), forbid_(forbid_last), keep_(keep_vectors) {
        for (Letter a = 0; a < A.size(); ++a)
            comps_.emplace_back(A, obs_depth, keep_vectors);
    }

    void leaf(const Word& x, const Eigen::MatrixXcd& U) override {
        if (x.last() == forbid_) return;
        comps_[static_cast<std::size_t>(x.first())].add(U.col(0));
    }

    std::unique_ptr<ScanSink> fresh() const override {
        return std::make_unique<RankOneCollector>(A_, comps_.front().depth(), forbid_,
                                                  keep_);
    }

    void absorb(const ScanSink& later) override;

    /** One component per first letter, indexed by letter code. */
    const std::vector<RankOneSum>& components() const { return comps_; }

private:
    Alphabet A_;
    Letter forbid_;
    bool keep_;
    std::vector<RankOneSum> comps_;
};

}  // namespace fgb
