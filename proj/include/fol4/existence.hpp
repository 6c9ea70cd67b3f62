#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fol4/bundle.hpp"
#include "fol4/lattice.hpp"
#include "fol4/singularity.hpp"

namespace fol4 {

// Verdict trichotomy. The construction theorems prove sufficiency of their
// hypotheses, not necessity, so a failed hypothesis is UNKNOWN unless a
// genuine obstruction applies.
enum class Status { Exists, Obstructed, Unknown };

std::string to_string(Status s);

// A splitting c = tau + nu of a characteristic class, with the derived
// modification counts (m, n). Always satisfies m + n = chi - tau*nu; when c
// is a complex class, m = 0.
struct Splitting {
    CohClass tau;
    CohClass nu;
    CohClass c;  // tau + nu
    Int m = 0;
    Int n = 0;
};

// Derives c, m, n from the pair (tau, nu). Throws std::invalid_argument on
// rank mismatch and std::domain_error when tau + nu is not characteristic.
Splitting make_splitting(const ManifoldInvariants& inv, const CohClass& tau,
                         const CohClass& nu);

struct Verdict {
    Status status = Status::Unknown;
    std::optional<Splitting> witness;       // present whenever status == Exists
    std::optional<FoliationPlan> plan;      // realizing singularity plan
    std::string reason;                     // human-readable explanation
    std::string citation;                   // the decisive criterion, spelled out
};

// True iff c is characteristic and c^2 = 2 chi + p1 — exactly the classes
// realizable as first Chern classes of almost-complex structures.
bool is_complex_class(const ManifoldInvariants& inv, const CohClass& c);

// All complex classes with coordinates bounded by `bound` in infinity norm,
// sorted lexicographically. Throws std::invalid_argument when the search box
// is infeasibly large.
std::vector<CohClass> enumerate_complex_classes(const ManifoldInvariants& inv, Int bound);

// Existence of a singular foliation with tangent class tau, normal class nu,
// and the prescribed positive-type singularities (a default plan of
// chi - tau*nu pencil points is synthesized when none are supplied).
// Negative-type entries are rejected with std::invalid_argument.
Verdict foliation_exists(const ManifoldInvariants& inv, const CohClass& tau, const CohClass& nu,
                         const std::optional<std::vector<SingularityModel>>& singularities =
                             std::nullopt);

// Achiral variant: both positive and negative singular points are allowed,
// with totals n and m respectively. Throws std::domain_error when tau + nu
// is not characteristic.
Verdict achiral_exists(const ManifoldInvariants& inv, const CohClass& tau, const CohClass& nu,
                       const std::optional<std::vector<SingularityModel>>& positive =
                           std::nullopt,
                       const std::optional<std::vector<SingularityModel>>& negative =
                           std::nullopt);

// On a manifold with positive-definite intersection form (rank 0 counts),
// returns true when 1 - b1 + b2 < m: no achiral singular foliation whose
// singular points are all negative with total degree m can exist. Throws
// std::domain_error when the form is not positive-definite.
bool positive_definite_obstruction(const ManifoldInvariants& inv, Int m);

// All splittings tau + (c - tau) of a complex class c with |tau_i| <= bound
// and chi - tau*(c - tau) >= 0, sorted lexicographically by tau. Throws
// std::invalid_argument when c is not a complex class or the box is
// infeasibly large.
std::vector<Splitting> find_splittings(const ManifoldInvariants& inv, const CohClass& c,
                                       Int bound);

// Witness that infinitely many admissible splittings exist: a class alpha
// with alpha^2 > 0 and the least k0 >= 0 such that
// chi - k*(c.alpha) + k^2*alpha^2 >= 0 for every k >= k0 (so tau = k*alpha
// works for all k >= k0). Empty when b2+ = 0 or the bounded alpha search
// finds nothing.
struct InfiniteSplittings {
    CohClass alpha;
    Int k0 = 0;
};

std::optional<InfiniteSplittings> infinite_splittings_witness(const ManifoldInvariants& inv,
                                                              const CohClass& c);

}  // namespace fol4
