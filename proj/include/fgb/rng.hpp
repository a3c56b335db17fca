#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <numbers>

#include "fgb/cylinder.hpp"

namespace fgb {

/**
 * Deterministic RNG for property-test sampling (splitmix64 core).
 * Implemented explicitly — std:: distributions are implementation-defined and
 * would break byte-identical reports across standard libraries.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /** Uniform in [0, 1). */
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /** Uniform integer in [0, n). */
    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    double normal() {
        double u1 = 0.0;
        while (u1 <= 1e-300) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    Complex cnormal() { return Complex(normal(), normal()) / std::sqrt(2.0); }

    Eigen::VectorXcd cvector(Eigen::Index n) {
        Eigen::VectorXcd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal();
        return v;
    }

    Eigen::MatrixXcd cmatrix(Eigen::Index r, Eigen::Index c) {
        Eigen::MatrixXcd m(r, c);
        for (Eigen::Index i = 0; i < r; ++i)
            for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cnormal();
        return m;
    }

    /** Random PSD matrix G·G* with the given rank (full rank by default). */
    Eigen::MatrixXcd psd_matrix(Eigen::Index n, Eigen::Index rank = -1) {
        if (rank < 0) rank = n;
        Eigen::MatrixXcd g = cmatrix(n, rank);
        return g * g.adjoint();
    }

    CylinderFn cylinder_fn(const Alphabet& A, int depth) {
        return CylinderFn(A, depth, cvector(num_words(A, depth)));
    }

    Word random_word(const Alphabet& A, int len) {
        if (len == 0) return Word();
        return word_at(A, len, static_cast<long long>(below(
                                   static_cast<std::uint64_t>(num_words(A, len)))));
    }

private:
    std::uint64_t state_;
};

}  // namespace fgb
