#pragma once

#include <string>
#include <utility>

#include "fol4/existence.hpp"

namespace fol4 {

// A closed connected embedded surface, tracked by the Poincare dual of its
// fundamental class and its genus.
struct SurfaceData {
    CohClass cls;
    Int genus = 0;
    bool connected = true;

    Int chi() const { return 2 - 2 * genus; }  // always even, <= 2
};

// Surface S as a closed transversal of a singular foliation with splitting
// (tau, nu): EXISTS iff tau + nu is a complex class, chi(M) - tau*nu >= 0,
// chi(S) = nu*S, and S*S = tau*S; otherwise UNKNOWN naming the failing
// conditions. Throws std::invalid_argument for a disconnected surface or a
// negative genus.
Verdict transversal_check(const ManifoldInvariants& inv, const Splitting& sp,
                          const SurfaceData& S);

// Surface S as a leaf: EXISTS iff tau + nu is complex, S*S >= 0,
// chi(M) - tau*nu >= S*S, chi(S) = tau*S, and S*S = nu*S; the realizing
// foliation places S*S singular points along S. Surfaces with S*S < 0 are
// routed to achiral_leaf_check.
Verdict leaf_check(const ManifoldInvariants& inv, const Splitting& sp, const SurfaceData& S);

// Achiral leaf criterion for S*S < 0: EXISTS iff tau + nu is characteristic,
// m >= -S*S, and n >= 0. Throws std::domain_error when S*S >= 0 (wrong
// route).
Verdict achiral_leaf_check(const ManifoldInvariants& inv, const Splitting& sp,
                           const SurfaceData& S);

// The two foliations adjunct to a surface satisfying the adjunction equality
// chi(S) + S*S = c*S: the first has S as a closed transversal (tau = S,
// nu = c - S), the second has S as a leaf (tau = c - S, nu = S). When the
// equality fails, both verdicts are UNKNOWN. Throws std::invalid_argument
// when c is not a complex class.
std::pair<Verdict, Verdict> adjunct_surfaces(const ManifoldInvariants& inv, const CohClass& c,
                                             const SurfaceData& S);

// Whether S is representable by an almost-complex curve for some structure
// with first Chern class c: exactly the adjunction equality
// chi(S) + S*S = c*S. Throws std::invalid_argument when c is not complex.
bool jhol_representable(const ManifoldInvariants& inv, const CohClass& c, const SurfaceData& S);

// Minimum-genus lower bound from the inequality chi(S) + S*S <= epsilon*S
// applied to the class a.
struct GenusBound {
    Int g_min = 0;
    std::string caveat;  // nonempty for the zero class (no-sphere hypothesis)
    std::string note;    // conjectural status of the inequality in general
};

GenusBound kronheimer_bound(const ManifoldInvariants& inv, const CohClass& epsilon,
                            const CohClass& a);

}  // namespace fol4
