#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fol4/bipoly.hpp"
#include "fol4/lattice.hpp"

namespace fol4 {

// The tangent directions of the level foliation of f: the spanning field
// (df/dz2, -df/dz1) of ker[d1 f, d2 f]. Throws std::invalid_argument when f
// is constant.
std::pair<BivarPoly, BivarPoly> tangent_field(const BivarPoly& f);

// Divides both components by their exact polynomial GCD (normalized to have
// leading coefficient 1 in graded-lex order). Throws std::invalid_argument
// when both components are zero.
std::pair<BivarPoly, BivarPoly> reduce(const BivarPoly& g1, const BivarPoly& g2);

// Hopf degree of the level foliation of f at the origin: the local
// intersection multiplicity of the reduced tangent field, computed exactly
// as the vanishing order of a resultant after an integer shear that makes
// the projection direction generic.
//
// Throws std::invalid_argument when f is constant, and std::domain_error
// when the reduced field does not vanish at the origin: either the point is
// nonsingular, or the field vanishes along a curve through the origin (a
// non-isolated zero), in which case the message names the common factor.
Int hopf_degree(const BivarPoly& f);

// Independent verification of hopf_degree: counts solutions of the reduced
// field equal to a random small generic target inside the closed polydisc of
// the given radius, using exact resultant elimination plus numeric root
// isolation, and returns the modal count across trials. Throws
// std::runtime_error when the count is unstable across trials (no strict
// majority).
Int hopf_degree_oracle(const BivarPoly& f, double radius = 0.5, int trials = 9);

// A local model of an isolated singular point of a singular 2-dimensional
// foliation. Positive models are tangent to complex level curves; negative
// models are the same germs through an orientation-reversing chart and carry
// the same (nonnegative) degrees.
class SingularityModel {
public:
    enum class Sign { Positive, Negative };

    // Lefschetz-pencil point; degree 1. Canonical default: it can be traded
    // away by blow-ups.
    static SingularityModel pencil(Sign sign = Sign::Positive);
    // Nondegenerate quadratic point, levels of z1^2 + z2^2; degree 1.
    static SingularityModel quadratic(Sign sign = Sign::Positive);
    // Cusp point, levels of z1^3 - z2^2; degree 2.
    static SingularityModel cusp(Sign sign = Sign::Positive);
    // Normal crossing, levels of z1^p z2^q; degree 1 for every p, q >= 1.
    static SingularityModel normal_crossing(int p = 1, int q = 1, Sign sign = Sign::Positive);
    // Levels of z1^(p+1) + z2^(q+1); degree p*q.
    static SingularityModel power(int p, int q, Sign sign = Sign::Positive);
    // Levels of an arbitrary polynomial; the degree is computed by
    // hopf_degree and its errors propagate.
    static SingularityModel from_polynomial(const BivarPoly& f, Sign sign = Sign::Positive);
    // A point prescribed only by its degree, with no polynomial model.
    static SingularityModel explicit_degree(Int degree, Sign sign = Sign::Positive);

    Sign sign() const { return sign_; }
    bool positive() const { return sign_ == Sign::Positive; }
    Int degree() const { return degree_; }
    const std::string& label() const { return label_; }
    const std::optional<BivarPoly>& polynomial() const { return poly_; }

    SingularityModel with_sign(Sign sign) const;

private:
    SingularityModel(Sign sign, Int degree, std::optional<BivarPoly> poly, std::string label);

    Sign sign_;
    Int degree_;
    std::optional<BivarPoly> poly_;
    std::string label_;
};

// Sum of the degrees of a list of models.
Int total_degree(const std::vector<SingularityModel>& models);

// A prescription for a singular foliation: the splitting classes tau
// (tangent) and nu (normal) plus the local models, split by type. Chiral
// plans leave `negative` empty.
struct FoliationPlan {
    CohClass tau;
    CohClass nu;
    std::vector<SingularityModel> positive;
    std::vector<SingularityModel> negative;
};

// Exact audit of the singularity ledger: the Euler characteristic must equal
// the total degree of all singular points plus tau*nu. Covers both the
// chiral case (no negative models) and the achiral case.
bool ledger_check(const ManifoldInvariants& inv, const FoliationPlan& plan);

// A deterministic list of models from the menu whose degrees sum to n
// exactly (cycling through the menu greedily). Default menu: pencils only,
// giving n pencil points. Throws std::invalid_argument when n < 0, when the
// menu is empty with n > 0, or when the menu cannot reach n exactly.
std::vector<SingularityModel> synthesize_plan(Int n, const std::vector<SingularityModel>& menu = {
                                                         SingularityModel::pencil()});

// Single-singularity alternative: one point modeled on z1^(n+1) + z2^2, of
// degree n; empty for n = 0.
std::vector<SingularityModel> synthesize_single(Int n);

}  // namespace fol4
