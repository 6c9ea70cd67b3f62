#include "fol4/surface.hpp"

#include <sstream>
#include <stdexcept>
#include <vector>

namespace fol4 {

namespace {

void validate_surface(const SurfaceData& S) {
    if (!S.connected) throw std::invalid_argument("surface checks require a connected surface");
    if (S.genus < 0) throw std::invalid_argument("surface genus must be nonnegative");
}

Verdict unknown(std::vector<std::string> failures, std::string citation) {
    Verdict v;
    v.status = Status::Unknown;
    std::ostringstream os;
    os << "sufficient conditions not met:";
    for (size_t i = 0; i < failures.size(); ++i) os << (i ? "; " : " ") << failures[i];
    v.reason = os.str();
    v.citation = std::move(citation);
    return v;
}

}  // namespace

Verdict transversal_check(const ManifoldInvariants& inv, const Splitting& sp,
                          const SurfaceData& S) {
    validate_surface(S);
    const CohClass c = sp.tau + sp.nu;
    const Int chiM = inv.euler_characteristic();
    const Int taunu = inv.form.pair(sp.tau, sp.nu);
    const Int ss = inv.form.square(S.cls);
    const std::string citation =
        "a complex splitting with chi(M) - tau*nu >= 0, chi(S) = nu*S and S*S = tau*S "
        "yields a singular foliation with S as a closed transversal";

    std::vector<std::string> failures;
    if (!is_complex_class(inv, c)) failures.push_back("tau + nu is not a complex class");
    if (chiM - taunu < 0) failures.push_back("chi(M) - tau*nu < 0");
    {
        std::ostringstream os;
        if (S.chi() != inv.form.pair(sp.nu, S.cls)) {
            os << "chi(S) = " << S.chi() << " differs from nu*S = "
               << inv.form.pair(sp.nu, S.cls);
            failures.push_back(os.str());
        }
    }
    {
        std::ostringstream os;
        if (ss != inv.form.pair(sp.tau, S.cls)) {
            os << "S*S = " << ss << " differs from tau*S = " << inv.form.pair(sp.tau, S.cls);
            failures.push_back(os.str());
        }
    }
    if (!failures.empty()) return unknown(std::move(failures), citation);

    Splitting witness = make_splitting(inv, sp.tau, sp.nu);
    Verdict v;
    v.status = Status::Exists;
    v.witness = witness;
    v.plan = FoliationPlan{sp.tau, sp.nu, synthesize_plan(witness.n), {}};
    std::ostringstream os;
    os << "a singular foliation with " << witness.n
       << " positive singularities meets S transversally in circles";
    v.reason = os.str();
    v.citation = citation;
    return v;
}

Verdict leaf_check(const ManifoldInvariants& inv, const Splitting& sp, const SurfaceData& S) {
    validate_surface(S);
    const Int ss = inv.form.square(S.cls);
    if (ss < 0) return achiral_leaf_check(inv, sp, S);

    const CohClass c = sp.tau + sp.nu;
    const Int chiM = inv.euler_characteristic();
    const Int taunu = inv.form.pair(sp.tau, sp.nu);
    const std::string citation =
        "a complex splitting with chi(M) - tau*nu >= S*S >= 0, chi(S) = tau*S and "
        "S*S = nu*S yields a singular foliation with S as a leaf carrying S*S "
        "singular points";

    std::vector<std::string> failures;
    if (!is_complex_class(inv, c)) failures.push_back("tau + nu is not a complex class");
    if (chiM - taunu < ss) {
        std::ostringstream os;
        os << "chi(M) - tau*nu = " << (chiM - taunu) << " < S*S = " << ss;
        failures.push_back(os.str());
    }
    if (S.chi() != inv.form.pair(sp.tau, S.cls)) {
        std::ostringstream os;
        os << "chi(S) = " << S.chi() << " differs from tau*S = "
           << inv.form.pair(sp.tau, S.cls);
        failures.push_back(os.str());
    }
    if (ss != inv.form.pair(sp.nu, S.cls)) {
        std::ostringstream os;
        os << "S*S = " << ss << " differs from nu*S = " << inv.form.pair(sp.nu, S.cls);
        failures.push_back(os.str());
    }
    if (!failures.empty()) return unknown(std::move(failures), citation);

    Splitting witness = make_splitting(inv, sp.tau, sp.nu);
    Verdict v;
    v.status = Status::Exists;
    v.witness = witness;
    v.plan = FoliationPlan{sp.tau, sp.nu, synthesize_plan(witness.n), {}};
    std::ostringstream os;
    os << "a singular foliation has S as a leaf with " << ss
       << " of its " << witness.n << " singular points placed along S";
    v.reason = os.str();
    v.citation = citation;
    return v;
}

Verdict achiral_leaf_check(const ManifoldInvariants& inv, const Splitting& sp,
                           const SurfaceData& S) {
    validate_surface(S);
    const Int ss = inv.form.square(S.cls);
    if (ss >= 0)
        throw std::domain_error(
            "the achiral leaf criterion applies only to surfaces with S*S < 0");

    const CohClass c = sp.tau + sp.nu;
    const std::string citation =
        "a characteristic splitting with m >= -S*S and n >= 0 yields an achiral "
        "singular foliation having S as a leaf";

    if (!inv.form.is_characteristic(c))
        return unknown({"tau + nu is not characteristic"}, citation);

    Splitting witness = make_splitting(inv, sp.tau, sp.nu);
    std::vector<std::string> failures;
    if (witness.m < -ss) {
        std::ostringstream os;
        os << "m = " << witness.m << " < -S*S = " << -ss;
        failures.push_back(os.str());
    }
    if (witness.n < 0) {
        std::ostringstream os;
        os << "n = " << witness.n << " < 0";
        failures.push_back(os.str());
    }
    if (!failures.empty()) return unknown(std::move(failures), citation);

    std::vector<SingularityModel> neg;
    for (const auto& model : synthesize_plan(witness.m))
        neg.push_back(model.with_sign(SingularityModel::Sign::Negative));
    Verdict v;
    v.status = Status::Exists;
    v.witness = witness;
    v.plan = FoliationPlan{sp.tau, sp.nu, synthesize_plan(witness.n), std::move(neg)};
    std::ostringstream os;
    os << "an achiral singular foliation has S as a leaf; " << -ss << " of its " << witness.m
       << " negative singular points foliate a neighborhood of S";
    v.reason = os.str();
    v.citation = citation;
    return v;
}

std::pair<Verdict, Verdict> adjunct_surfaces(const ManifoldInvariants& inv, const CohClass& c,
                                             const SurfaceData& S) {
    if (!is_complex_class(inv, c))
        throw std::invalid_argument("adjunct surfaces require a complex class");
    validate_surface(S);

    const Int ss = inv.form.square(S.cls);
    const Int cs = inv.form.pair(c, S.cls);
    if (S.chi() + ss != cs) {
        std::ostringstream os;
        os << "adjunction equality fails: chi(S) + S*S = " << (S.chi() + ss)
           << " differs from c*S = " << cs;
        Verdict v;
        v.status = Status::Unknown;
        v.reason = os.str();
        v.citation = "surfaces adjunct to a complex class satisfy chi(S) + S*S = c*S";
        return {v, v};
    }

    Splitting transversal_split = make_splitting(inv, S.cls, c - S.cls);
    Splitting leaf_split = make_splitting(inv, c - S.cls, S.cls);
    return {transversal_check(inv, transversal_split, S), leaf_check(inv, leaf_split, S)};
}

bool jhol_representable(const ManifoldInvariants& inv, const CohClass& c, const SurfaceData& S) {
    if (!is_complex_class(inv, c))
        throw std::invalid_argument("representability test requires a complex class");
    validate_surface(S);
    return S.chi() + inv.form.square(S.cls) == inv.form.pair(c, S.cls);
}

GenusBound kronheimer_bound(const ManifoldInvariants& inv, const CohClass& epsilon,
                            const CohClass& a) {
    const Int ea = inv.form.pair(epsilon, a);
    const Int aa = inv.form.square(a);
    // 2 - 2g + a*a <= epsilon*a  <=>  g >= (2 - (epsilon*a - a*a)) / 2
    const Int numerator = 2 - (ea - aa);
    const Int required = (numerator + 1) >> 1;  // ceil(numerator / 2)
    GenusBound out;
    out.g_min = required > 0 ? required : 0;
    if (a.is_zero()) {
        out.caveat =
            "the inequality excludes sphere components, and the trivial class is realized "
            "by a torus; the formal bound g >= 1 for the zero class is vacuous in practice";
    }
    out.note =
        "conjectural bound: the inequality is established for classes pulled back from a "
        "fibered 3-manifold, and conjectural in general";
    return out;
}

}  // namespace fol4
