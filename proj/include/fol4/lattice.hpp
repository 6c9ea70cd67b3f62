#pragma once

// Integral lattice layer: the intersection form of a closed oriented
// 4-manifold, cohomology classes in a fixed basis of H^2/torsion, and the
// numeric invariants (rank, signature, parity, Euler characteristic, p1)
// everything downstream is computed from.
//
// All form-level arithmetic is exact: determinants use fraction-free integer
// elimination and the signature comes from a rational congruence
// diagonalization, never from floating-point eigenvalues.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace fol4 {

using Int = long long;

// A class in H^2(M;Z)/torsion written in the basis the intersection form is
// given in. Tracked as plain integer coordinates; pairing happens through an
// IntersectionForm.
class CohClass {
public:
    CohClass() = default;
    explicit CohClass(std::vector<Int> coords) : coords_(std::move(coords)) {}
    static CohClass zero(int rank) { return CohClass(std::vector<Int>(rank, 0)); }

    int rank() const { return static_cast<int>(coords_.size()); }
    Int operator[](int i) const { return coords_[static_cast<size_t>(i)]; }
    Int& operator[](int i) { return coords_[static_cast<size_t>(i)]; }
    const std::vector<Int>& coords() const { return coords_; }

    bool is_zero() const;
    CohClass operator+(const CohClass& o) const;
    CohClass operator-(const CohClass& o) const;
    CohClass operator-() const;
    CohClass operator*(Int k) const;
    bool operator==(const CohClass& o) const { return coords_ == o.coords_; }
    bool operator!=(const CohClass& o) const { return coords_ != o.coords_; }
    // Lexicographic order, used for deterministic enumeration output.
    bool operator<(const CohClass& o) const { return coords_ < o.coords_; }

    // Coordinates reduced into {0,1}; the image in H^2(M;Z/2).
    std::vector<int> mod2() const;

    std::string str() const;  // "(a1,a2,...)"

private:
    std::vector<Int> coords_;
};

enum class Parity { Even, Odd };
enum class Definiteness { PositiveDefinite, NegativeDefinite, Indefinite, ZeroRank };

// Symmetric unimodular bilinear form on Z^rank. Construction validates
// symmetry and |det| = 1 (both checked exactly) and precomputes the
// signature by congruence diagonalization over the rationals.
class IntersectionForm {
public:
    // Throws std::invalid_argument on a non-square, non-symmetric or
    // non-unimodular matrix.
    explicit IntersectionForm(std::vector<std::vector<Int>> entries);

    static IntersectionForm zero_rank() { return IntersectionForm({}); }
    static IntersectionForm diagonal(const std::vector<Int>& d);

    int rank() const { return rank_; }
    int signature() const { return b2_plus_ - b2_minus_; }
    int b2_plus() const { return b2_plus_; }
    int b2_minus() const { return b2_minus_; }
    Parity parity() const { return parity_; }
    Definiteness definiteness() const;
    bool positive_definite() const;  // includes rank 0

    const std::vector<std::vector<Int>>& entries() const { return entries_; }
    Int entry(int i, int j) const { return entries_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    // Q(a, b). Throws std::invalid_argument on rank mismatch.
    Int pair(const CohClass& a, const CohClass& b) const;
    Int square(const CohClass& a) const { return pair(a, a); }

    // True iff c . a == a . a (mod 2) for every class a; checked on the basis
    // vectors, which spans the condition.
    bool is_characteristic(const CohClass& c) const;

    // The canonical 0/1 solution of Q c == diag(Q) (mod 2); every
    // characteristic element is congruent to it mod 2. Exists and is unique
    // mod 2 because the form is unimodular.
    CohClass characteristic_base() const;

    // Direct sum, in block order (this, other).
    IntersectionForm direct_sum(const IntersectionForm& other) const;

    bool operator==(const IntersectionForm& o) const { return entries_ == o.entries_; }

private:
    std::vector<std::vector<Int>> entries_;
    int rank_ = 0;
    int b2_plus_ = 0;
    int b2_minus_ = 0;
    Parity parity_ = Parity::Even;
};

// Result of the bounded search for the smallest square of a characteristic
// element of a positive-definite form. `minimum` is empty when no
// characteristic vector lies inside the search box, which can happen for
// small bounds in a skew basis; `analytic_floor` = b2 is the value the
// standard-diagonalizable case attains.
struct MinCharacteristicSquare {
    std::optional<Int> minimum;
    Int analytic_floor = 0;
    Int bound = 0;
};

// Exhaustive search over |coordinate| <= bound, restricted to characteristic
// vectors. Precondition: positive-definite form (rank 0 allowed, giving 0).
// Throws std::domain_error otherwise, std::invalid_argument if the search
// box is infeasibly large.
MinCharacteristicSquare min_characteristic_square(const IntersectionForm& q, Int bound = 3);

// The algebraic shadow of a closed oriented smooth 4-manifold: first Betti
// number and intersection form (b2 = rank of the form, torsion dropped).
struct ManifoldInvariants {
    std::string name;
    int b1 = 0;
    IntersectionForm form = IntersectionForm::zero_rank();

    ManifoldInvariants() = default;
    ManifoldInvariants(std::string name_, int b1_, IntersectionForm form_);

    int b2() const { return form.rank(); }
    int signature() const { return form.signature(); }
    // chi = 2 - 2 b1 + b2 (b3 = b1, b0 = b4 = 1 by Poincare duality).
    int euler_characteristic() const { return 2 - 2 * b1 + b2(); }
    // p1 evaluated on the fundamental class; equals 3 * signature.
    int p1() const { return 3 * signature(); }

    // Connected sum: b1 adds, forms block-sum, chi composes as chi+chi'-2.
    ManifoldInvariants connected_sum(const ManifoldInvariants& other) const;
};

}  // namespace fol4
