#include "fol4/bundle.hpp"

#include <string>

namespace fol4 {

BundleClasses whitney_sum_classes(const IntersectionForm& q, const CohClass& tau,
                                  const CohClass& nu) {
    if (tau.rank() != q.rank() || nu.rank() != q.rank())
        throw std::invalid_argument("whitney_sum_classes: class rank does not match form");
    const CohClass c1 = tau + nu;
    const Int c2 = q.pair(tau, nu);
    BundleClasses b;
    b.w2 = c1.mod2();
    b.e = c2;
    b.p1 = q.square(c1) - 2 * c2;
    b.cx = BundleClasses::ComplexData{c1, c2};
    return b;
}

BundleClasses modify(BundleClasses b, Int m, Int n) {
    b.e += m + n;
    b.p1 += 2 * m - 2 * n;
    if (b.cx && m == 0) {
        b.cx->c2 += n;
    } else {
        b.cx.reset();
    }
    return b;
}

bool dold_whitney_equal(const BundleClasses& a, const BundleClasses& b) {
    if (!a.same_base(b))
        throw std::invalid_argument("dold_whitney_equal: bundles live over different bases");
    return a.w2 == b.w2 && a.e == b.e && a.p1 == b.p1;
}

BundleClasses tangent_classes(const ManifoldInvariants& inv) {
    BundleClasses t;
    t.w2 = inv.form.characteristic_base().mod2();
    t.e = inv.euler_characteristic();
    t.p1 = inv.p1();
    return t;
}

Modification solve_modification(const ManifoldInvariants& inv, const CohClass& tau,
                                const CohClass& nu) {
    const IntersectionForm& q = inv.form;
    const CohClass c = tau + nu;
    if (!q.is_characteristic(c))
        throw std::domain_error("solve_modification: c = tau + nu is not characteristic, no "
                                "modification identifies the sum with the tangent bundle");

    const Int chi = inv.euler_characteristic();
    const Int p1 = inv.p1();
    const Int c2 = q.square(c);
    const Int taunu = q.pair(tau, nu);

    const Int num_m = p1 + 2 * chi - c2;
    const Int num_n = -p1 + 2 * chi + c2 - 4 * taunu;
    if (num_m % 4 != 0 || num_n % 4 != 0)
        throw std::logic_error("solve_modification: m or n came out non-integral for a "
                               "characteristic class; refusing to round");
    Modification mod{num_m / 4, num_n / 4};

    // Verify the claim behind the formulas before handing the pair out.
    BundleClasses built = modify(whitney_sum_classes(q, tau, nu), mod.m, mod.n);
    if (!dold_whitney_equal(built, tangent_classes(inv)))
        throw std::logic_error("solve_modification: modified sum failed the Dold-Whitney "
                               "comparison with the tangent classes");
    return mod;
}

}  // namespace fol4
