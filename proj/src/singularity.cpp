#include "fol4/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fol4 {

// ---------------------------------------------------------------------------
// Tangent field and reduction

std::pair<BivarPoly, BivarPoly> tangent_field(const BivarPoly& f) {
    if (f.is_constant()) throw std::invalid_argument("tangent field of a constant polynomial");
    return {f.derivative_z2(), -f.derivative_z1()};
}

std::pair<BivarPoly, BivarPoly> reduce(const BivarPoly& g1, const BivarPoly& g2) {
    if (g1.is_zero() && g2.is_zero())
        throw std::invalid_argument("cannot reduce the zero field");
    BivarPoly g = gcd(g1, g2);  // graded-lex leading coefficient 1
    return {g1.exact_div(g), g2.exact_div(g)};
}

// ---------------------------------------------------------------------------
// Hopf degree, exact

namespace {

bool vanishes_at_origin(const BivarPoly& p) { return p.constant_term().is_zero(); }

// Is u a (nonzero) constant multiple of a single power of the variable?
bool is_monomial(const UniPoly& u) {
    if (u.is_zero()) return false;
    for (int k = 0; k < u.degree(); ++k)
        if (!u.coeff(k).is_zero()) return false;
    return true;
}

// Produces the reduced tangent field of f, or throws the errors shared by
// hopf_degree and its oracle.
std::pair<BivarPoly, BivarPoly> reduced_field_at_singular_origin(const BivarPoly& f) {
    auto [g1, g2] = tangent_field(f);
    BivarPoly common = gcd(g1, g2);
    auto [h1, h2] = reduce(g1, g2);
    if (!vanishes_at_origin(h1) || !vanishes_at_origin(h2)) {
        if (!common.is_constant() && vanishes_at_origin(common)) {
            throw std::domain_error(
                "non-isolated zero: the tangent field vanishes along { " + common.str() +
                " = 0 } through the origin");
        }
        throw std::domain_error("the tangent field does not vanish at the origin "
                                "(nonsingular point)");
    }
    return {h1, h2};
}

// Intersection multiplicity at the origin of a coprime pair that vanishes
// there, via the vanishing order of the z2-eliminating resultant, after an
// integral shear z1 -> z1 + t*z2 chosen so that the projection is honest:
// (i) on the line z1 = 0 the only common zero is the origin, and (ii) the
// leading z2-coefficients do not both vanish at z1 = 0 (no common root
// escapes to infinity over the origin).
Int multiplicity_at_origin(const BivarPoly& h1, const BivarPoly& h2) {
    std::vector<long> shears{0};
    for (long m = 1; m <= 30; ++m) {
        shears.push_back(m);
        shears.push_back(-m);
    }
    for (long t : shears) {
        BivarPoly a = h1.shear_z1(t);
        BivarPoly b = h2.shear_z1(t);

        UniPoly a0 = a.restrict_z1_zero();
        UniPoly b0 = b.restrict_z1_zero();
        UniPoly g0 = gcd(a0, b0);
        if (!is_monomial(g0)) continue;  // (i) fails: another common zero on z1 = 0

        const bool a_escapes = a.z2_coefficients().back().eval(GQ(0)).is_zero();
        const bool b_escapes = b.z2_coefficients().back().eval(GQ(0)).is_zero();
        if (a_escapes && b_escapes) continue;  // (ii) fails

        UniPoly r = resultant_z2(a, b);
        if (r.is_zero())
            throw std::logic_error("resultant of a coprime pair vanished identically");
        return r.order_at_zero();
    }
    throw std::runtime_error("no generic shear found for multiplicity computation");
}

}  // namespace

Int hopf_degree(const BivarPoly& f) {
    auto [h1, h2] = reduced_field_at_singular_origin(f);
    return multiplicity_at_origin(h1, h2);
}

// ---------------------------------------------------------------------------
// Numeric oracle

namespace {

using Cx = std::complex<double>;

// Convert an exact bivariate polynomial into a univariate one in z2 with
// numeric coefficients, at a fixed numeric z1.
std::vector<Cx> z2_slice(const BivarPoly& p, Cx z1) {
    std::vector<Cx> c(static_cast<size_t>(std::max(p.degree_z2(), 0)) + 1, Cx(0));
    for (int j = 0; j <= p.degree_z2(); ++j) {
        // Horner in z1 over the exact z2-coefficient
        Cx v = 0;
        for (int i = p.degree_z1(); i >= 0; --i) v = v * z1 + p.coeff(i, j).to_complex();
        c[static_cast<size_t>(j)] = v;
    }
    return c;
}

Cx eval_coeffs(const std::vector<Cx>& c, Cx z) {
    Cx r = 0;
    for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
    return r;
}

// Durand-Kerner on numeric coefficients.
std::vector<Cx> roots_of(const std::vector<Cx>& coeffs) {
    std::vector<Cx> c = coeffs;
    double maxabs = 0;
    for (const Cx& v : c) maxabs = std::max(maxabs, std::abs(v));
    if (maxabs == 0) return {};
    while (c.size() > 1 && std::abs(c.back()) < 1e-12 * maxabs) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg <= 0) return {};
    for (auto& v : c) v /= c.back();
    std::vector<Cx> roots(static_cast<size_t>(deg));
    Cx seed(0.4, 0.9), acc = 1;
    for (auto& r : roots) {
        acc *= seed;
        r = acc;
    }
    for (int iter = 0; iter < 1000; ++iter) {
        double delta = 0;
        for (size_t i = 0; i < roots.size(); ++i) {
            Cx denom = 1;
            for (size_t j = 0; j < roots.size(); ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            Cx step = eval_coeffs(c, roots[i]) / denom;
            roots[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-13) break;
    }
    return roots;
}

// One Newton step refinement of the 2x2 system (p1, p2)(z) = 0.
void newton_polish(const BivarPoly& p1, const BivarPoly& p2, Cx& z1, Cx& z2) {
    const BivarPoly d11 = p1.derivative_z1(), d12 = p1.derivative_z2();
    const BivarPoly d21 = p2.derivative_z1(), d22 = p2.derivative_z2();
    for (int it = 0; it < 20; ++it) {
        Cx f1 = p1.eval(z1, z2), f2 = p2.eval(z1, z2);
        if (std::abs(f1) + std::abs(f2) < 1e-14) break;
        Cx a = d11.eval(z1, z2), b = d12.eval(z1, z2);
        Cx c = d21.eval(z1, z2), d = d22.eval(z1, z2);
        Cx det = a * d - b * c;
        if (std::abs(det) < 1e-300) break;
        Cx s1 = (f1 * d - b * f2) / det;
        Cx s2 = (a * f2 - f1 * c) / det;
        z1 -= s1;
        z2 -= s2;
    }
}

}  // namespace

Int hopf_degree_oracle(const BivarPoly& f, double radius, int trials) {
    if (radius <= 0) throw std::invalid_argument("polydisc radius must be positive");
    if (trials < 1) throw std::invalid_argument("at least one trial required");
    auto [h1, h2] = reduced_field_at_singular_origin(f);

    std::map<Int, int> votes;
    for (int trial = 0; trial < trials; ++trial) {
        // Deterministic per-trial generic target with exact rational
        // components of magnitude about 1e-3.
        std::mt19937_64 rng(0x5eedULL * 1000003ULL + static_cast<unsigned long long>(trial));
        std::uniform_int_distribution<long> mag(4, 12);
        std::uniform_int_distribution<int> coin(0, 1);
        auto draw = [&]() {
            long k = mag(rng) * (coin(rng) ? 1 : -1);
            return GQ(mpq_class(k, 8192));
        };
        const GQ w1 = draw(), w2 = draw();

        const BivarPoly p1 = h1 - BivarPoly::constant(w1);
        const BivarPoly p2 = h2 - BivarPoly::constant(w2);

        // Eliminate z2 exactly, isolate z1-roots numerically, then lift.
        const BivarPoly* lifter = p1.degree_z2() >= 1 ? &p1 : &p2;
        const BivarPoly* checker = lifter == &p1 ? &p2 : &p1;
        UniPoly r = resultant_z2(p1, p2);

        std::vector<std::pair<Cx, Cx>> sols;
        std::vector<Cx> z1_roots = complex_roots(r);
        for (Cx a : z1_roots) {
            if (std::abs(a) > radius * 1.5) continue;
            for (Cx b : roots_of(z2_slice(*lifter, a))) {
                Cx za = a, zb = b;
                newton_polish(p1, p2, za, zb);
                if (std::abs(checker->eval(za, zb)) > 1e-6) continue;
                if (std::abs(lifter->eval(za, zb)) > 1e-6) continue;
                if (std::abs(za) > radius || std::abs(zb) > radius) continue;
                bool dup = false;
                for (const auto& s : sols)
                    if (std::abs(s.first - za) < 1e-6 && std::abs(s.second - zb) < 1e-6) {
                        dup = true;
                        break;
                    }
                if (!dup) sols.emplace_back(za, zb);
            }
        }
        votes[static_cast<Int>(sols.size())]++;
    }

    auto best = std::max_element(votes.begin(), votes.end(),
                                 [](const auto& a, const auto& b) { return a.second < b.second; });
    if (best->second * 2 <= trials) {
        std::ostringstream os;
        os << "oracle count unstable across " << trials << " trials:";
        for (const auto& [count, freq] : votes) os << ' ' << count << 'x' << freq;
        throw std::runtime_error(os.str());
    }
    return best->first;
}

// ---------------------------------------------------------------------------
// Singularity models

SingularityModel::SingularityModel(Sign sign, Int degree, std::optional<BivarPoly> poly,
                                   std::string label)
    : sign_(sign), degree_(degree), poly_(std::move(poly)), label_(std::move(label)) {
    if (degree_ < 0) throw std::invalid_argument("singularity degree must be nonnegative");
}

SingularityModel SingularityModel::pencil(Sign sign) {
    return SingularityModel(sign, 1, std::nullopt, "pencil");
}

SingularityModel SingularityModel::quadratic(Sign sign) {
    BivarPoly f = BivarPoly::parse("z1^2 + z2^2");
    return SingularityModel(sign, hopf_degree(f), f, "quadratic");
}

SingularityModel SingularityModel::cusp(Sign sign) {
    BivarPoly f = BivarPoly::parse("z1^3 - z2^2");
    return SingularityModel(sign, hopf_degree(f), f, "cusp");
}

SingularityModel SingularityModel::normal_crossing(int p, int q, Sign sign) {
    if (p < 1 || q < 1) throw std::invalid_argument("normal crossing needs p, q >= 1");
    BivarPoly f = BivarPoly::monomial(p, q, GQ(1));
    std::ostringstream label;
    label << "normal_crossing(" << p << "," << q << ")";
    return SingularityModel(sign, hopf_degree(f), f, label.str());
}

SingularityModel SingularityModel::power(int p, int q, Sign sign) {
    if (p < 1 || q < 1) throw std::invalid_argument("power model needs p, q >= 1");
    BivarPoly f = BivarPoly::monomial(p + 1, 0, GQ(1)) + BivarPoly::monomial(0, q + 1, GQ(1));
    std::ostringstream label;
    label << "power(" << p << "," << q << ")";
    return SingularityModel(sign, hopf_degree(f), f, label.str());
}

SingularityModel SingularityModel::from_polynomial(const BivarPoly& f, Sign sign) {
    return SingularityModel(sign, hopf_degree(f), f, f.str());
}

SingularityModel SingularityModel::explicit_degree(Int degree, Sign sign) {
    std::ostringstream label;
    label << "explicit(" << degree << ")";
    return SingularityModel(sign, degree, std::nullopt, label.str());
}

SingularityModel SingularityModel::with_sign(Sign sign) const {
    SingularityModel copy = *this;
    copy.sign_ = sign;
    return copy;
}

Int total_degree(const std::vector<SingularityModel>& models) {
    Int s = 0;
    for (const auto& m : models) s += m.degree();
    return s;
}

// ---------------------------------------------------------------------------
// Ledger and synthesis

bool ledger_check(const ManifoldInvariants& inv, const FoliationPlan& plan) {
    const Int chi = inv.euler_characteristic();
    const Int taunu = inv.form.pair(plan.tau, plan.nu);
    return total_degree(plan.positive) + total_degree(plan.negative) + taunu == chi;
}

std::vector<SingularityModel> synthesize_plan(Int n, const std::vector<SingularityModel>& menu) {
    if (n < 0) throw std::invalid_argument("total degree must be nonnegative");
    if (n == 0) return {};
    if (menu.empty()) throw std::invalid_argument("empty singularity menu");

    std::vector<SingularityModel> plan;
    Int remaining = n;
    size_t idx = 0;
    size_t stall = 0;  // menu entries skipped in a row
    while (remaining > 0) {
        const SingularityModel& m = menu[idx % menu.size()];
        ++idx;
        if (m.degree() > 0 && m.degree() <= remaining) {
            plan.push_back(m);
            remaining -= m.degree();
            stall = 0;
        } else if (++stall >= menu.size()) {
            std::ostringstream os;
            os << "menu cannot realize total degree " << n << " exactly (stuck at " << remaining
               << ")";
            throw std::invalid_argument(os.str());
        }
    }
    return plan;
}

std::vector<SingularityModel> synthesize_single(Int n) {
    if (n < 0) throw std::invalid_argument("total degree must be nonnegative");
    if (n == 0) return {};
    if (n > 64) throw std::invalid_argument("single-singularity model limited to degree 64");
    return {SingularityModel::power(static_cast<int>(n), 1)};
}

}  // namespace fol4
