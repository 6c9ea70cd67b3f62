#include "fol4/existence.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fol4 {

std::string to_string(Status s) {
    switch (s) {
        case Status::Exists: return "EXISTS";
        case Status::Obstructed: return "OBSTRUCTED";
        case Status::Unknown: return "UNKNOWN";
    }
    return "UNKNOWN";
}

namespace {

constexpr double kMaxBoxCandidates = 5e8;

void guard_box_size(int rank, Int bound, const char* what) {
    if (bound < 0) throw std::invalid_argument("search bound must be nonnegative");
    double log_candidates = rank * std::log(2.0 * static_cast<double>(bound) + 1.0);
    if (log_candidates > std::log(kMaxBoxCandidates)) {
        std::ostringstream os;
        os << what << ": search box (2*" << bound << "+1)^" << rank
           << " exceeds the enumeration budget; lower the bound";
        throw std::invalid_argument(os.str());
    }
}

// Calls fn(coords) for every integer vector with |coords[i]| <= bound,
// in lexicographically increasing order.
template <typename Fn>
void for_each_in_box(int rank, Int bound, Fn&& fn) {
    std::vector<Int> v(static_cast<size_t>(rank), -bound);
    if (rank == 0) {
        fn(v);
        return;
    }
    while (true) {
        fn(v);
        int i = rank - 1;
        while (i >= 0 && v[static_cast<size_t>(i)] == bound) {
            v[static_cast<size_t>(i)] = -bound;
            --i;
        }
        if (i < 0) break;
        ++v[static_cast<size_t>(i)];
    }
}

std::string complex_class_citation() {
    return "complex classes are exactly the characteristic c with c^2 = 2*chi + p1";
}

CohClass canonical_sign(const CohClass& a) {
    for (int i = 0; i < a.rank(); ++i) {
        if (a[i] > 0) return a;
        if (a[i] < 0) return -a;
    }
    return a;
}

}  // namespace

Splitting make_splitting(const ManifoldInvariants& inv, const CohClass& tau,
                         const CohClass& nu) {
    Modification mod = solve_modification(inv, tau, nu);
    return Splitting{tau, nu, tau + nu, mod.m, mod.n};
}

bool is_complex_class(const ManifoldInvariants& inv, const CohClass& c) {
    if (!inv.form.is_characteristic(c)) return false;
    return inv.form.square(c) == 2 * static_cast<Int>(inv.euler_characteristic()) + inv.p1();
}

std::vector<CohClass> enumerate_complex_classes(const ManifoldInvariants& inv, Int bound) {
    const int rank = inv.form.rank();
    guard_box_size(rank, bound, "enumerate_complex_classes");
    std::vector<CohClass> out;
    for_each_in_box(rank, bound, [&](const std::vector<Int>& v) {
        CohClass c(v);
        if (is_complex_class(inv, c)) out.push_back(std::move(c));
    });
    return out;  // box order is already lexicographic
}

Verdict foliation_exists(const ManifoldInvariants& inv, const CohClass& tau, const CohClass& nu,
                         const std::optional<std::vector<SingularityModel>>& singularities) {
    const CohClass c = tau + nu;
    if (singularities)
        for (const auto& s : *singularities)
            if (!s.positive())
                throw std::invalid_argument(
                    "negative-type singularity supplied to the chiral existence test");

    if (!is_complex_class(inv, c)) {
        Verdict v;
        v.status = Status::Obstructed;
        v.reason = "tau + nu = " + c.str() + " is not a complex class, so no singular "
                   "foliation has these tangent and normal classes";
        v.citation = complex_class_citation();
        return v;
    }

    Splitting s = make_splitting(inv, tau, nu);
    if (s.n < 0) {
        Verdict v;
        v.status = Status::Unknown;
        std::ostringstream os;
        os << "chi - tau*nu = " << s.n << " < 0: the construction needs nonnegative total "
           << "degree and no converse obstruction is known";
        v.reason = os.str();
        v.citation = "singular foliations are constructed from splittings with "
                     "chi - tau*nu >= 0; necessity is open";
        return v;
    }

    std::vector<SingularityModel> models =
        singularities ? *singularities : synthesize_plan(s.n);
    if (total_degree(models) != s.n) {
        Verdict v;
        v.status = Status::Unknown;
        std::ostringstream os;
        os << "prescribed singularities have total degree " << total_degree(models)
           << " but the splitting forces total degree " << s.n;
        v.reason = os.str();
        v.citation = "the singularity ledger chi = total degree + tau*nu is necessary";
        return v;
    }

    Verdict v;
    v.status = Status::Exists;
    v.witness = s;
    v.plan = FoliationPlan{tau, nu, std::move(models), {}};
    std::ostringstream os;
    os << "complex splitting with n = chi - tau*nu = " << s.n
       << "; a singular foliation with the prescribed positive singularities exists";
    v.reason = os.str();
    v.citation = "a splitting c = tau + nu of a complex class with chi - tau*nu >= 0 is "
                 "realized by a singular foliation with any positive singularities of "
                 "total degree chi - tau*nu";
    return v;
}

Verdict achiral_exists(const ManifoldInvariants& inv, const CohClass& tau, const CohClass& nu,
                       const std::optional<std::vector<SingularityModel>>& positive,
                       const std::optional<std::vector<SingularityModel>>& negative) {
    if (positive)
        for (const auto& s : *positive)
            if (!s.positive())
                throw std::invalid_argument("negative-type model in the positive list");
    if (negative)
        for (const auto& s : *negative)
            if (s.positive())
                throw std::invalid_argument("positive-type model in the negative list");

    Splitting s = make_splitting(inv, tau, nu);  // throws when c is not characteristic

    if (s.m >= 0 && s.n >= 0) {
        std::vector<SingularityModel> pos = positive ? *positive : synthesize_plan(s.n);
        std::vector<SingularityModel> neg;
        if (negative) {
            neg = *negative;
        } else {
            for (const auto& model : synthesize_plan(s.m))
                neg.push_back(model.with_sign(SingularityModel::Sign::Negative));
        }
        if (total_degree(pos) != s.n || total_degree(neg) != s.m) {
            Verdict v;
            v.status = Status::Unknown;
            std::ostringstream os;
            os << "plan totals (" << total_degree(neg) << ", " << total_degree(pos)
               << ") do not match the forced counts (m, n) = (" << s.m << ", " << s.n << ")";
            v.reason = os.str();
            v.citation = "the achiral ledger chi = (positive total) + (negative total) + "
                         "tau*nu fixes both totals";
            return v;
        }
        Verdict v;
        v.status = Status::Exists;
        v.witness = s;
        v.plan = FoliationPlan{tau, nu, std::move(pos), std::move(neg)};
        std::ostringstream os;
        os << "characteristic splitting with (m, n) = (" << s.m << ", " << s.n
           << "); an achiral singular foliation exists";
        v.reason = os.str();
        v.citation = "a characteristic splitting with m >= 0 and n >= 0 is realized by an "
                     "achiral singular foliation with negative total degree m and positive "
                     "total degree n";
        return v;
    }

    if (inv.form.positive_definite() &&
        positive_definite_obstruction(inv, std::max<Int>(Int{0}, s.m))) {
        Verdict v;
        v.status = Status::Obstructed;
        std::ostringstream os;
        os << "1 - b1 + b2 = " << (1 - inv.b1 + inv.b2())
           << " is negative, so the positive-definite obstruction excludes every "
           << "achiral singular foliation";
        v.reason = os.str();
        v.citation = "on a positive-definite manifold an achiral singular foliation with "
                     "negative singularities of total degree m needs 1 - b1 + b2 >= m";
        return v;
    }

    Verdict v;
    v.status = Status::Unknown;
    std::ostringstream os;
    os << "(m, n) = (" << s.m << ", " << s.n << ") leaves the construction hypothesis "
       << "m >= 0 and n >= 0 unsatisfied, and no applicable obstruction fires";
    v.reason = os.str();
    v.citation = "the achiral construction requires m >= 0 and n >= 0; necessity is open";
    return v;
}

bool positive_definite_obstruction(const ManifoldInvariants& inv, Int m) {
    if (!inv.form.positive_definite())
        throw std::domain_error(
            "the obstruction applies only to positive-definite intersection forms");
    return 1 - static_cast<Int>(inv.b1) + static_cast<Int>(inv.b2()) < m;
}

std::vector<Splitting> find_splittings(const ManifoldInvariants& inv, const CohClass& c,
                                       Int bound) {
    if (!is_complex_class(inv, c))
        throw std::invalid_argument("find_splittings requires a complex class");
    const int rank = inv.form.rank();
    guard_box_size(rank, bound, "find_splittings");
    const Int chi = inv.euler_characteristic();
    std::vector<Splitting> out;
    for_each_in_box(rank, bound, [&](const std::vector<Int>& v) {
        CohClass tau(v);
        CohClass nu = c - tau;
        if (chi - inv.form.pair(tau, nu) < 0) return;
        out.push_back(make_splitting(inv, tau, nu));
    });
    return out;  // box order is lexicographic in tau
}

std::optional<InfiniteSplittings> infinite_splittings_witness(const ManifoldInvariants& inv,
                                                              const CohClass& c) {
    if (!is_complex_class(inv, c))
        throw std::invalid_argument("infinite_splittings_witness requires a complex class");
    if (inv.form.b2_plus() == 0) return std::nullopt;

    const int rank = inv.form.rank();
    constexpr Int kAlphaBound = 3;
    std::set<CohClass> candidates;
    if (rank <= 6) {
        for_each_in_box(rank, kAlphaBound, [&](const std::vector<Int>& v) {
            CohClass a(v);
            if (inv.form.square(a) > 0) candidates.insert(canonical_sign(a));
        });
    } else {
        // High rank: positive vectors of coordinate support <= 2 suffice for
        // every indefinite or positive-definite unimodular form in practice.
        for (int i = 0; i < rank; ++i)
            for (int j = i; j < rank; ++j)
                for (Int xi = -kAlphaBound; xi <= kAlphaBound; ++xi)
                    for (Int xj = -kAlphaBound; xj <= kAlphaBound; ++xj) {
                        CohClass a = CohClass::zero(rank);
                        a[i] = xi;
                        a[j] = (j == i) ? a[j] : xj;
                        if (inv.form.square(a) > 0) candidates.insert(canonical_sign(a));
                    }
    }
    if (candidates.empty()) return std::nullopt;

    const CohClass* best = nullptr;
    Int best_sq = 0;
    for (const CohClass& a : candidates) {
        Int sq = inv.form.square(a);
        if (!best || sq < best_sq || (sq == best_sq && a < *best)) {
            best = &a;
            best_sq = sq;
        }
    }

    const Int chi = inv.euler_characteristic();
    const Int ca = inv.form.pair(c, *best);
    const Int aa = best_sq;
    auto f = [&](Int k) { return chi - k * ca + k * k * aa; };

    Int start = std::max<Int>(
        Int{0}, static_cast<Int>(std::ceil(static_cast<double>(ca) / (2.0 * static_cast<double>(aa)))));
    Int kup = start;
    while (f(kup) < 0) ++kup;
    Int k0 = 0;
    for (Int k = kup - 1; k >= 0; --k) {
        if (f(k) < 0) {
            k0 = k + 1;
            break;
        }
    }
    return InfiniteSplittings{*best, k0};
}

}  // namespace fol4
