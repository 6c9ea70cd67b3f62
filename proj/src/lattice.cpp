#include "fol4/lattice.hpp"

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fol4 {

bool CohClass::is_zero() const {
    for (Int v : coords_)
        if (v != 0) return false;
    return true;
}

CohClass CohClass::operator+(const CohClass& o) const {
    if (coords_.size() != o.coords_.size())
        throw std::invalid_argument("class rank mismatch in +");
    std::vector<Int> r(coords_);
    for (size_t i = 0; i < r.size(); ++i) r[i] += o.coords_[i];
    return CohClass(std::move(r));
}

CohClass CohClass::operator-(const CohClass& o) const {
    if (coords_.size() != o.coords_.size())
        throw std::invalid_argument("class rank mismatch in -");
    std::vector<Int> r(coords_);
    for (size_t i = 0; i < r.size(); ++i) r[i] -= o.coords_[i];
    return CohClass(std::move(r));
}

CohClass CohClass::operator-() const {
    std::vector<Int> r(coords_);
    for (Int& v : r) v = -v;
    return CohClass(std::move(r));
}

CohClass CohClass::operator*(Int k) const {
    std::vector<Int> r(coords_);
    for (Int& v : r) v *= k;
    return CohClass(std::move(r));
}

std::vector<int> CohClass::mod2() const {
    std::vector<int> r(coords_.size());
    for (size_t i = 0; i < coords_.size(); ++i)
        r[i] = static_cast<int>(((coords_[i] % 2) + 2) % 2);
    return r;
}

std::string CohClass::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t i = 0; i < coords_.size(); ++i) {
        if (i) os << ',';
        os << coords_[i];
    }
    os << ')';
    return os.str();
}

namespace {

// Exact determinant by fraction-free (Bareiss) elimination over Z.
mpz_class exact_determinant(const std::vector<std::vector<Int>>& m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);

    mpz_class prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && a[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                mpz_class num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                // Bareiss guarantees exact divisibility by the previous pivot.
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = q;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// Counts (positive, negative, zero) diagonal entries after a symmetric
// congruence diagonalization over Q. Exact; determines the signature.
struct InertiaCounts {
    int pos = 0;
    int neg = 0;
    int zero = 0;
};

InertiaCounts inertia(const std::vector<std::vector<Int>>& m) {
    const size_t n = m.size();
    std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);

    auto add_row_col = [&](size_t dst, size_t src, const mpq_class& f) {
        for (size_t j = 0; j < n; ++j) a[dst][j] += f * a[src][j];
        for (size_t i = 0; i < n; ++i) a[i][dst] += f * a[i][src];
    };
    auto swap_row_col = [&](size_t i, size_t j) {
        std::swap(a[i], a[j]);
        for (size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    };

    InertiaCounts c;
    for (size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            size_t d = k + 1;
            while (d < n && a[d][d] == 0) ++d;
            if (d < n) {
                swap_row_col(k, d);
            } else {
                // All remaining diagonal entries vanish; manufacture a pivot
                // from a nonzero off-diagonal entry, if any.
                size_t pi = n, pj = n;
                for (size_t i = k; i < n && pi == n; ++i)
                    for (size_t j = i + 1; j < n; ++j)
                        if (a[i][j] != 0) {
                            pi = i;
                            pj = j;
                            break;
                        }
                if (pi == n) {
                    c.zero += static_cast<int>(n - k);
                    return c;
                }
                add_row_col(pi, pj, 1);  // a[pi][pi] becomes 2*a[pi][pj] != 0
                if (pi != k) swap_row_col(k, pi);
            }
        }
        const mpq_class pivot = a[k][k];
        if (pivot > 0)
            ++c.pos;
        else
            ++c.neg;
        for (size_t i = k + 1; i < n; ++i) {
            if (a[i][k] != 0) add_row_col(i, k, -a[i][k] / pivot);
        }
    }
    return c;
}

}  // namespace

IntersectionForm::IntersectionForm(std::vector<std::vector<Int>> entries)
    : entries_(std::move(entries)) {
    rank_ = static_cast<int>(entries_.size());
    for (const auto& row : entries_)
        if (static_cast<int>(row.size()) != rank_)
            throw std::invalid_argument("intersection form matrix must be square");
    for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < i; ++j)
            if (entry(i, j) != entry(j, i))
                throw std::invalid_argument("intersection form matrix must be symmetric");

    mpz_class det = exact_determinant(entries_);
    if (det != 1 && det != -1)
        throw std::invalid_argument("intersection form must be unimodular (|det| = 1), got det = " +
                                    det.get_str());

    InertiaCounts c = inertia(entries_);
    if (c.zero != 0)
        throw std::logic_error("unimodular form diagonalized with a zero block");
    b2_plus_ = c.pos;
    b2_minus_ = c.neg;

    // Even iff every class has even square; by bilinearity it is enough to
    // test the basis vectors and their pairwise sums.
    parity_ = Parity::Even;
    for (int i = 0; i < rank_ && parity_ == Parity::Even; ++i) {
        if (entry(i, i) % 2 != 0) parity_ = Parity::Odd;
        for (int j = i + 1; j < rank_ && parity_ == Parity::Even; ++j)
            if ((entry(i, i) + 2 * entry(i, j) + entry(j, j)) % 2 != 0) parity_ = Parity::Odd;
    }
}

IntersectionForm IntersectionForm::diagonal(const std::vector<Int>& d) {
    const size_t n = d.size();
    std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = d[i];
    return IntersectionForm(std::move(m));
}

Definiteness IntersectionForm::definiteness() const {
    if (rank_ == 0) return Definiteness::ZeroRank;
    if (b2_minus_ == 0) return Definiteness::PositiveDefinite;
    if (b2_plus_ == 0) return Definiteness::NegativeDefinite;
    return Definiteness::Indefinite;
}

bool IntersectionForm::positive_definite() const {
    return definiteness() == Definiteness::PositiveDefinite ||
           definiteness() == Definiteness::ZeroRank;
}

Int IntersectionForm::pair(const CohClass& a, const CohClass& b) const {
    if (a.rank() != rank_ || b.rank() != rank_)
        throw std::invalid_argument("class rank does not match form rank");
    Int s = 0;
    for (int i = 0; i < rank_; ++i) {
        if (a[i] == 0) continue;
        Int row = 0;
        for (int j = 0; j < rank_; ++j) row += entry(i, j) * b[j];
        s += a[i] * row;
    }
    return s;
}

bool IntersectionForm::is_characteristic(const CohClass& c) const {
    if (c.rank() != rank_)
        throw std::invalid_argument("class rank does not match form rank");
    // c . e_i == e_i . e_i (mod 2) for each basis vector e_i; any class is an
    // integer combination of these, and both sides are linear mod 2.
    for (int i = 0; i < rank_; ++i) {
        Int dot = 0;
        for (int j = 0; j < rank_; ++j) dot += entry(i, j) * c[j];
        if (((dot - entry(i, i)) % 2 + 2) % 2 != 0) return false;
    }
    return true;
}

CohClass IntersectionForm::characteristic_base() const {
    const int n = rank_;
    // Solve Q x == diag(Q) over GF(2); Q is invertible mod 2 since |det Q|=1.
    std::vector<std::vector<int>> a(static_cast<size_t>(n),
                                    std::vector<int>(static_cast<size_t>(n) + 1, 0));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = static_cast<int>(((entry(i, j) % 2) + 2) % 2);
        a[i][n] = a[i][i];
    }
    for (int col = 0; col < n; ++col) {
        int p = col;
        while (p < n && a[p][col] == 0) ++p;
        if (p == n) throw std::logic_error("intersection form not invertible mod 2");
        std::swap(a[col], a[p]);
        for (int i = 0; i < n; ++i)
            if (i != col && a[i][col])
                for (int j = col; j <= n; ++j) a[i][j] ^= a[col][j];
    }
    std::vector<Int> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = a[i][n];
    return CohClass(std::move(x));
}

IntersectionForm IntersectionForm::direct_sum(const IntersectionForm& other) const {
    const int n = rank_, m = other.rank_;
    std::vector<std::vector<Int>> s(static_cast<size_t>(n + m),
                                    std::vector<Int>(static_cast<size_t>(n + m), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s[i][j] = entry(i, j);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s[n + i][n + j] = other.entry(i, j);
    return IntersectionForm(std::move(s));
}

MinCharacteristicSquare min_characteristic_square(const IntersectionForm& q, Int bound) {
    if (!q.positive_definite())
        throw std::domain_error(
            "min_characteristic_square requires a positive-definite form");
    if (bound < 0) throw std::invalid_argument("bound must be >= 0");

    MinCharacteristicSquare out;
    out.analytic_floor = q.rank();
    out.bound = bound;
    if (q.rank() == 0) {
        out.minimum = 0;  // the zero class is characteristic with square 0
        return out;
    }

    const Int width = 2 * bound + 1;
    double cost = 1;
    for (int i = 0; i < q.rank(); ++i) cost *= static_cast<double>(width);
    if (cost > 5e8)
        throw std::invalid_argument("characteristic search box too large; lower the bound");

    std::vector<Int> v(static_cast<size_t>(q.rank()), -bound);
    std::optional<Int> best;
    while (true) {
        CohClass c{std::vector<Int>(v)};
        if (q.is_characteristic(c)) {
            Int s = q.square(c);
            if (!best || s < *best) best = s;
        }
        int i = 0;
        for (; i < q.rank(); ++i) {
            if (v[static_cast<size_t>(i)] < bound) {
                ++v[static_cast<size_t>(i)];
                break;
            }
            v[static_cast<size_t>(i)] = -bound;
        }
        if (i == q.rank()) break;
    }
    out.minimum = best;
    return out;
}

ManifoldInvariants::ManifoldInvariants(std::string name_, int b1_, IntersectionForm form_)
    : name(std::move(name_)), b1(b1_), form(std::move(form_)) {
    if (b1 < 0) throw std::invalid_argument("b1 must be >= 0");
}

ManifoldInvariants ManifoldInvariants::connected_sum(const ManifoldInvariants& other) const {
    return ManifoldInvariants(name + "#" + other.name, b1 + other.b1,
                              form.direct_sum(other.form));
}

}  // namespace fol4
