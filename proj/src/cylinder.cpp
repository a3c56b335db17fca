#include "fgb/cylinder.hpp"

#include <cmath>

namespace fgb {

CylinderFn promote(const CylinderFn& f, int to_depth) {
    if (to_depth < f.depth()) throw Error("promote: target depth shallower than source");
    const Alphabet& A = f.alphabet();
    CylinderFn cur = f;
    while (cur.depth() < to_depth) {
        int d = cur.depth();
        int branch = (d == 0) ? A.size() : A.q();
        Eigen::VectorXcd next(num_words(A, d + 1));
        for (Eigen::Index p = 0; p < cur.dim(); ++p)
            next.segment(p * branch, branch).setConstant(cur.value(p));
        cur = CylinderFn(A, d + 1, std::move(next));
    }
    return cur;
}

CylinderFn coarsen(const CylinderFn& f, int to_depth) {
    if (to_depth > f.depth()) throw Error("coarsen: target depth deeper than source");
    const Alphabet& A = f.alphabet();
    CylinderFn cur = f;
    while (cur.depth() > to_depth) {
        int d = cur.depth();
        int branch = (d == 1) ? A.size() : A.q();
        Eigen::VectorXcd next(num_words(A, d - 1));
        for (Eigen::Index p = 0; p < next.size(); ++p)
            next(p) = cur.values().segment(p * branch, branch).mean();
        cur = CylinderFn(A, d - 1, std::move(next));
    }
    return cur;
}

Complex inner(const CylinderFn& f, const CylinderFn& g) {
    if (!(f.alphabet() == g.alphabet())) throw Error("inner: alphabet mismatch");
    int d = std::max(f.depth(), g.depth());
    CylinderFn fp = promote(f, d), gp = promote(g, d);
    BoundaryMeasure nu(f.alphabet());
    // Eigen's dot conjugates its first argument: gp.dot(fp) = Σ conj(g) f.
    return nu.cylinder_mass_d(d) * gp.values().dot(fp.values());
}

double l2_norm(const CylinderFn& f) { return std::sqrt(std::abs(inner(f, f))); }

CylinderFn pointwise_mul(const CylinderFn& f, const CylinderFn& g) {
    if (!(f.alphabet() == g.alphabet())) throw Error("pointwise_mul: alphabet mismatch");
    int d = std::max(f.depth(), g.depth());
    CylinderFn fp = promote(f, d), gp = promote(g, d);
    return CylinderFn(f.alphabet(), d, fp.values().cwiseProduct(gp.values()));
}

CylinderFn translate(const Word& x, const CylinderFn& f) {
    const Alphabet& A = f.alphabet();
    if (x.empty()) return f;
    int out_depth = x.length() + f.depth();
    Word xi = inverse(x);
    CylinderFn out(A, out_depth);
    for (Eigen::Index i = 0; i < out.dim(); ++i) {
        Word u = word_at(A, out_depth, i);
        // For every boundary point through u, the first depth(f) letters of
        // x⁻¹ω equal the first depth(f) letters of reduced(x⁻¹u): the
        // cancellation at the junction consumes at most |x| letters of u,
        // so |reduced(x⁻¹u)| >= out_depth - |x| = depth(f).
        Word r = reduced_mul(xi, u);
        out.values()(i) = (f.depth() == 0) ? f.value(0)
                                           : f.value(word_index(A, r.prefix(f.depth())));
    }
    return out;
}

CylinderFn conj(const CylinderFn& f) {
    return CylinderFn(f.alphabet(), f.depth(), f.values().conjugate());
}

CylinderFn operator+(const CylinderFn& f, const CylinderFn& g) {
    int d = std::max(f.depth(), g.depth());
    CylinderFn fp = promote(f, d), gp = promote(g, d);
    return CylinderFn(f.alphabet(), d, fp.values() + gp.values());
}

CylinderFn operator-(const CylinderFn& f, const CylinderFn& g) {
    int d = std::max(f.depth(), g.depth());
    CylinderFn fp = promote(f, d), gp = promote(g, d);
    return CylinderFn(f.alphabet(), d, fp.values() - gp.values());
}

CylinderFn operator*(Complex c, const CylinderFn& f) {
    return CylinderFn(f.alphabet(), f.depth(), c * f.values());
}

Eigen::VectorXcd to_coords(const CylinderFn& f, int depth) {
    BoundaryMeasure nu(f.alphabet());
    return std::sqrt(nu.cylinder_mass_d(depth)) * promote(f, depth).values();
}

CylinderFn from_coords(const Alphabet& A, int depth, const Eigen::VectorXcd& coords) {
    BoundaryMeasure nu(A);
    return CylinderFn(A, depth, coords / std::sqrt(nu.cylinder_mass_d(depth)));
}

}  // namespace fgb
