#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "fgb/abel.hpp"
#include "fgb/realization.hpp"

namespace fgb {

/**
 * A weight on the group together with its boundary: finitely many explicit
 * word values, plus a cylinder function assigning every other long word the
 * value of the cylinder its leading letters select.  Evaluation is
 * continuous towards the boundary: beyond the explicit interior list, the
 * value of a word of length ≥ the boundary depth depends only on its first
 * boundary-depth letters; shorter unlisted words evaluate to 0.
 */
class CompactifiedFn {
public:
    explicit CompactifiedFn(CylinderFn boundary) : boundary_(std::move(boundary)) {}

    /** The weight that is 1 exactly on words starting with z (and on the
     *  z-cylinder at infinity); for empty z this is the constant 1. */
    static CompactifiedFn indicator(const Alphabet& A, const Word& z) {
        return CompactifiedFn(CylinderFn::indicator(A, z));
    }

    static CompactifiedFn one(const Alphabet& A) {
        return CompactifiedFn(CylinderFn::one(A));
    }

    /** Overrides the value at one explicit word (interior point). */
    void set_interior(const Word& x, Complex value) {
        for (auto& p : interior_)
            if (p.first == x) {
                p.second = value;
                return;
            }
        interior_.emplace_back(x, value);
    }

    const CylinderFn& boundary() const { return boundary_; }
    const std::vector<std::pair<Word, Complex>>& interior() const { return interior_; }

private:
    std::vector<std::pair<Word, Complex>> interior_;
    CylinderFn boundary_;
};

/** The evaluation rule of CompactifiedFn at a word. */
Complex eval_weight(const CompactifiedFn& G, const Word& x);

/**
 * The left-translated weight (λ(z)G)(x) = G(z⁻¹x): the boundary part is the
 * translated cylinder function, and every word too short for the deepened
 * boundary rule gets an explicit interior value.
 */
CompactifiedFn translate_weight(const Word& z, const CompactifiedFn& G);

/** The adjoint weight G*(x) = conj(G(x⁻¹)). */
Complex eval_weight_adjoint(const CompactifiedFn& G, const Word& x);

/** One side of the orthogonality identity with its Abel diagnostics. */
struct SchurSide {
    Complex value = 0.0;
    double error_estimate = 0.0;         // last extrapolation correction
    bool diverged = false;               // sphere sums still growing
    double tail_bound = 0.0;             // truncation bound at the smallest ε
    std::vector<Complex> per_radius;     // S_n for n = 0..n_max (S_0 omitted ≡ 0)
};

/**
 * Abel limit of ε Σ_x e^{-ε|x|} G(x)·G̃*(x)·⟨v1, π(x)v3⟩·conj(⟨v2, π(x)v4⟩),
 * evaluated by per-radius sphere sums, known-oscillation cleaning, and
 * extrapolation over the ε schedule.  The identity word is omitted (finitely
 * many terms never change the limit).  Brackets are linear in the first slot.
 */
SchurSide schur_lhs(const PrincipalSeries& rep, const CompactifiedFn& G,
                    const CompactifiedFn& Gt, const CylinderFn& v1, const CylinderFn& v2,
                    const CylinderFn& v3, const CylinderFn& v4, int n_max,
                    const std::vector<double>& schedule, int workers = 1);

/**
 * The boundary-realization side: a_pi · [⟨μ₊(G∂)v1, v2⟩·conj(⟨μ₋(G̃∂)v3, v4⟩)
 * + ⟨μ₋(G∂)v1, v2⟩·conj(⟨μ₊(G̃∂)v3, v4⟩)], where G∂ is the weight's boundary
 * part (interior values do not reach the boundary operators).
 */
Complex schur_rhs(const Realization& plus, const Realization& minus,
                  const CompactifiedFn& G, const CompactifiedFn& Gt, const CylinderFn& v1,
                  const CylinderFn& v2, const CylinderFn& v3, const CylinderFn& v4,
                  double a_pi);

struct SchurComparison {
    SchurSide lhs;
    Complex rhs = 0.0;
    double rel_error = 0.0;  // |lhs - rhs| / |rhs| (absolute error if rhs ≈ 0)
    double a_pi = 0.0;       // 1 / (F₊, F₋), from the convergent pairing table
};

/**
 * Runs both sides with the normalization constant computed from the
 * realization pair and reports the relative error.  Throws Error when the
 * pairing table has not converged (the constant would be meaningless).
 */
SchurComparison schur_compare(const Realization& plus, const Realization& minus,
                              const CompactifiedFn& G, const CompactifiedFn& Gt,
                              const CylinderFn& v1, const CylinderFn& v2,
                              const CylinderFn& v3, const CylinderFn& v4, int n_max,
                              const std::vector<double>& schedule, int workers = 1);

}  // namespace fgb
