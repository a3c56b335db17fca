#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "fgb/errors.hpp"

namespace fgb {

/**
 * A truncated series of matrix-valued terms s_0 … s_M (scalars are 1×1) to be
 * Abel summed: A(ε) = ε Σ_{n≥0} e^{-εn} s_n, with the part beyond M unknown.
 *
 * sup_estimate is an a-priori bound on the max-abs entry of the terms, used
 * for the reported tail bound; when it is ≤ 0 the maximum over the stored
 * terms is used instead.
 */
struct AbelSeries {
    std::vector<Eigen::MatrixXcd> terms;
    double sup_estimate = 0.0;

    /** Wraps scalar terms as 1×1 matrices. */
    static AbelSeries scalars(const std::vector<std::complex<double>>& s);

    /** The effective sup bound (see sup_estimate). */
    double sup() const;
};

struct AbelValue {
    Eigen::MatrixXcd value;  // ε Σ_{n≤M} e^{-εn} s_n
    double tail_bound;       // ε e^{-εM} / (1 - e^{-ε}) · sup
};

/** Evaluates the truncated Abel sum at ε > 0 and reports the tail bound. */
AbelValue abel_eval(const AbelSeries& series, double eps);

/**
 * How the unknown tail s_n, n > M is modelled during extrapolation.
 * Constant freezes the tail at s_M.  Geometric fits s_{M+j} ≈ ŝ∞ - (ŝ∞-s_M)ρ̂ʲ
 * with ρ̂ estimated from the last increments.  Auto picks Geometric whenever
 * the increment ratio is usable (|ρ̂| ≤ 1, away from 1) and Constant otherwise.
 */
enum class TailModel { Constant, Geometric, Auto };

struct AbelLimit {
    Eigen::MatrixXcd limit;
    double error_estimate;  // magnitude of the last extrapolation correction
    bool diverged;          // terms still growing: no Abel limit is expected
    double tail_bound;      // reported truncation bound at the smallest ε
};

/**
 * Extrapolates the Abel sum to ε → 0 over a strictly decreasing schedule of
 * at least three evaluation points.
 *
 * Internally the tail-completed, normalized sums
 *   Ã(ε) = (1 - e^{-ε}) [ Σ_{n≤M} e^{-εn} s_n + tail(ε) ]
 * are evaluated; they have the same ε → 0 limit as A(ε) and are exact at
 * every ε when the terms have a constant or geometric tail.  Neville
 * polynomial extrapolation over the schedule then produces the ε = 0 value,
 * with the last correction as the error estimate.  Divergence is flagged
 * from the terms themselves: increments whose ratio sits at or beyond 1
 * indicate a series with no Abel limit.
 */
AbelLimit abel_extrapolate(const AbelSeries& series, const std::vector<double>& schedule,
                           TailModel model = TailModel::Auto);

}  // namespace fgb
