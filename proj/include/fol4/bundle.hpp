#pragma once

// Characteristic-class calculus for oriented 4-plane bundles over a closed
// oriented 4-manifold. A bundle is identified with its class triple
// (w2, e, p1) — over a 4-complex this triple determines the bundle up to
// isomorphism — plus optional complex-structure data (c1, c2).
//
// (m,n)-modification is the cut-and-reglue operation along a small 3-sphere
// whose gluing map acts on fibers by h |-> q^m h q^n in quaternion
// coordinates; on classes it shifts e by m+n and p1 by 2m-2n.

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>

#include <gmpxx.h>

#include "fol4/lattice.hpp"

namespace fol4 {

struct BundleClasses {
    // mod-2 coordinates of w2 in the base's H^2 basis; length = b2(base).
    std::vector<int> w2;
    Int e = 0;   // Euler number, evaluated on the fundamental class
    Int p1 = 0;  // first Pontryagin number

    struct ComplexData {
        CohClass c1;
        Int c2 = 0;
    };
    // Present only when the bundle carries a complex structure; then
    // p1 = c1^2 - 2 c2, w2 = c1 mod 2 and e = c2.
    std::optional<ComplexData> cx;

    bool same_base(const BundleClasses& o) const { return w2.size() == o.w2.size(); }
};

// Classes of the sum L_tau + L_nu of two complex line bundles.
// Throws std::invalid_argument on rank mismatch.
BundleClasses whitney_sum_classes(const IntersectionForm& q, const CohClass& tau,
                                  const CohClass& nu);

// (m,n)-modification: e += m+n, p1 += 2m-2n, w2 unchanged. The complex
// structure survives only pure (0,n)-modifications (then c2 += n); for
// m != 0 the complex data is dropped rather than guessed.
BundleClasses modify(BundleClasses e, Int m, Int n);

// Dold–Whitney test: bundles over the same 4-manifold are isomorphic iff
// (w2, e, p1) agree. Throws std::invalid_argument on mismatched bases.
bool dold_whitney_equal(const BundleClasses& a, const BundleClasses& b);

// Class triple of the tangent bundle: w2 = mod-2 reduction of any
// characteristic element, e = chi, p1 = 3 sigma.
BundleClasses tangent_classes(const ManifoldInvariants& inv);

struct Modification {
    Int m = 0;
    Int n = 0;
};

// The unique (m,n) with (L_tau + L_nu)_{m,n} isomorphic to TM:
//   m = (p1 + 2 chi - c^2) / 4,   n = (-p1 + 2 chi + c^2 - 4 tau.nu) / 4,
// where c = tau + nu must be characteristic (guaranteeing integrality).
// Throws std::domain_error for non-characteristic c; a non-integral m or n
// or a failed Dold–Whitney verification raises std::logic_error (internal
// invariant violation — never silently rounded).
Modification solve_modification(const ManifoldInvariants& inv, const CohClass& tau,
                                const CohClass& nu);

// ---------------------------------------------------------------------------
// Quaternions and the fiberwise action xi_{m,n}(q) h = q^m h q^n.

template <typename S>
struct QuatT {
    S w{}, x{}, y{}, z{};

    QuatT() = default;
    QuatT(S w_, S x_, S y_, S z_) : w(w_), x(x_), y(y_), z(z_) {}

    QuatT operator*(const QuatT& o) const {
        return QuatT(w * o.w - x * o.x - y * o.y - z * o.z,
                     w * o.x + x * o.w + y * o.z - z * o.y,
                     w * o.y - x * o.z + y * o.w + z * o.x,
                     w * o.z + x * o.y - y * o.x + z * o.w);
    }
    QuatT conj() const { return QuatT(w, S{} - x, S{} - y, S{} - z); }
    S norm_sq() const { return w * w + x * x + y * y + z * z; }
    static QuatT one() { return QuatT(S(1), S(0), S(0), S(0)); }
};

using Quaternion = QuatT<double>;
using QuaternionQ = QuatT<mpq_class>;  // exact-rational variant

template <typename S>
using Mat4T = std::array<std::array<S, 4>, 4>;
using Mat4 = Mat4T<double>;

namespace detail {

template <typename S>
QuatT<S> quat_pow(QuatT<S> base, Int n) {
    QuatT<S> r = QuatT<S>::one();
    if (n < 0) {
        // unit quaternion: inverse = conjugate / |q|^2 (the division keeps
        // the float path honest when |q| is only approximately 1)
        base = base.conj();
        S ns = base.norm_sq();
        base.w = base.w / ns;
        base.x = base.x / ns;
        base.y = base.y / ns;
        base.z = base.z / ns;
        n = -n;
    }
    for (Int i = 0; i < n; ++i) r = r * base;
    return r;
}

}  // namespace detail

// Matrix of h |-> q^m h q^n in the basis (1, i, j, k). Requires |q| = 1:
// exactly for rational scalars, to 1e-9 for floating point. Throws
// std::domain_error otherwise.
template <typename S>
Mat4T<S> xi(Int m, Int n, const QuatT<S>& q) {
    S ns = q.norm_sq();
    if constexpr (std::is_floating_point_v<S>) {
        if (std::abs(ns - S(1)) > 2e-9) throw std::domain_error("xi requires a unit quaternion");
    } else {
        if (ns != S(1)) throw std::domain_error("xi requires a unit quaternion");
    }
    const QuatT<S> qm = detail::quat_pow(q, m);
    const QuatT<S> qn = detail::quat_pow(q, n);
    const QuatT<S> basis[4] = {QuatT<S>(S(1), S(0), S(0), S(0)), QuatT<S>(S(0), S(1), S(0), S(0)),
                               QuatT<S>(S(0), S(0), S(1), S(0)), QuatT<S>(S(0), S(0), S(0), S(1))};
    Mat4T<S> a{};
    for (int col = 0; col < 4; ++col) {
        QuatT<S> img = qm * basis[col] * qn;
        a[0][col] = img.w;
        a[1][col] = img.x;
        a[2][col] = img.y;
        a[3][col] = img.z;
    }
    return a;
}

}  // namespace fol4
