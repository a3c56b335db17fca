#pragma once

#include <boost/rational.hpp>

#include "fgb/alphabet.hpp"

namespace fgb {

using Rational = boost::rational<long long>;

/**
 * The natural rotation-invariant probability measure on the tree boundary.
 *
 * Convention (pinned, echoed in reports): a cylinder over a reduced word of
 * length n >= 1 has mass (1/2k) * q^{1-n}; the whole boundary has mass 1.
 * All depth-n cylinders share the same mass, so conditional expectations are
 * plain averages and the indicator basis is orthogonal.
 */
class BoundaryMeasure {
public:
    explicit BoundaryMeasure(const Alphabet& A) : A_(A) {}

    Rational cylinder_mass(int depth) const {
        if (depth < 0) throw Error("BoundaryMeasure: negative depth");
        if (depth == 0) return Rational(1);
        Rational m(1, A_.size());
        for (int i = 1; i < depth; ++i) m /= A_.q();
        return m;
    }

    double cylinder_mass_d(int depth) const {
        Rational r = cylinder_mass(depth);
        return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
    }

    const Alphabet& alphabet() const { return A_; }

private:
    Alphabet A_;
};

}  // namespace fgb
