#pragma once

// Exact polynomial algebra over the Gaussian rationals Q(i), sized for the
// local singularity calculus: dense univariate polynomials, sparse bivariate
// polynomials in (z1, z2), GCDs by primitive pseudo-remainder sequences, and
// resultants by fraction-free determinant elimination. Everything here is
// exact; floating point appears only in the complex evaluation helpers used
// by the numeric cross-check oracle.

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fol4 {

// a + b i with exact rational a, b.
struct GQ {
    mpq_class re, im;

    GQ() = default;
    GQ(int v) : re(v) {}                 // NOLINT: implicit by design
    GQ(long v) : re(v) {}                // NOLINT
    GQ(mpq_class r) : re(std::move(r)) {}  // NOLINT
    GQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GQ conj() const { return GQ(re, -im); }

    GQ operator+(const GQ& o) const { return GQ(re + o.re, im + o.im); }
    GQ operator-(const GQ& o) const { return GQ(re - o.re, im - o.im); }
    GQ operator-() const { return GQ(-re, -im); }
    GQ operator*(const GQ& o) const {
        return GQ(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    GQ operator/(const GQ& o) const;  // throws std::domain_error on /0
    bool operator==(const GQ& o) const { return re == o.re && im == o.im; }
    bool operator!=(const GQ& o) const { return !(*this == o); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
    std::string str() const;
};

// Dense univariate polynomial over Q(i); used both for polynomials in z1
// (resultant values, contents) and restrictions to the line z1 = 0.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(GQ constant);
    explicit UniPoly(std::vector<GQ> coeffs);  // coeffs[k] multiplies t^k
    static UniPoly monomial(int degree, GQ coeff);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
    bool is_zero() const { return c_.empty(); }
    const GQ& lc() const;                   // leading coefficient
    GQ coeff(int k) const;                  // 0 beyond degree
    const std::vector<GQ>& coeffs() const { return c_; }

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator-() const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const GQ& s) const;
    bool operator==(const UniPoly& o) const { return c_ == o.c_; }

    // Long division over the field Q(i): returns (quotient, remainder).
    // Throws std::domain_error when dividing by zero.
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    // Division known to be exact; throws std::logic_error on a remainder.
    UniPoly exact_div(const UniPoly& d) const;

    UniPoly pow(int e) const;
    UniPoly monic() const;  // divide by lc (zero stays zero)

    // Multiplicity of the root t = 0.
    int order_at_zero() const;

    std::complex<double> eval(std::complex<double> t) const;
    GQ eval(const GQ& t) const;

    std::string str(const std::string& var) const;

private:
    void trim();
    std::vector<GQ> c_;
};

// Monic (Euclid over the field) GCD; gcd(p, 0) = monic p, gcd(0, 0) = 0.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

// Sparse bivariate polynomial over Q(i) in variables z1, z2.
class BivarPoly {
public:
    BivarPoly() = default;
    static BivarPoly constant(GQ v);
    static BivarPoly z1();
    static BivarPoly z2();
    static BivarPoly monomial(int i, int j, GQ coeff);  // coeff * z1^i z2^j

    // Parses strings like "z1^3 - z2^2", "2z1*z2", "1/2 z2^4 + 3".
    // Coefficients are integers or rationals a/b; variables z1 and z2;
    // exponents with ^. Throws std::invalid_argument on malformed input.
    static BivarPoly parse(const std::string& text);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int total_degree() const;  // -1 for the zero polynomial
    int degree_z1() const;
    int degree_z2() const;
    GQ coeff(int i, int j) const;
    GQ constant_term() const { return coeff(0, 0); }
    const std::map<std::pair<int, int>, GQ>& terms() const { return terms_; }

    BivarPoly operator+(const BivarPoly& o) const;
    BivarPoly operator-(const BivarPoly& o) const;
    BivarPoly operator-() const;
    BivarPoly operator*(const BivarPoly& o) const;
    BivarPoly operator*(const GQ& s) const;
    bool operator==(const BivarPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const BivarPoly& o) const { return terms_ != o.terms_; }

    BivarPoly derivative_z1() const;
    BivarPoly derivative_z2() const;
    BivarPoly swap_vars() const;
    // Substitutes z1 -> z1 + t*z2 (an area-preserving shear).
    BivarPoly shear_z1(long t) const;

    // The polynomial viewed in (Q(i)[z1])[z2]: entry j is the coefficient of
    // z2^j as a polynomial in z1.
    std::vector<UniPoly> z2_coefficients() const;
    // Restriction to the line z1 = 0, as a polynomial in z2.
    UniPoly restrict_z1_zero() const;

    // Graded-lexicographic leading data (total degree first, then z1 power).
    std::pair<int, int> leading_monomial() const;  // requires nonzero
    GQ leading_coeff() const;
    BivarPoly normalized() const;  // leading graded-lex coefficient set to 1

    // Exact multivariate division: requires d | *this, throws
    // std::logic_error otherwise.
    BivarPoly exact_div(const BivarPoly& d) const;

    std::complex<double> eval(std::complex<double> v1, std::complex<double> v2) const;
    GQ eval(const GQ& v1, const GQ& v2) const;

    std::string str() const;

private:
    void add_term(int i, int j, const GQ& v);
    std::map<std::pair<int, int>, GQ> terms_;  // (deg_z1, deg_z2) -> coeff
};

// GCD in Q(i)[z1, z2], normalized so its graded-lex leading coefficient is 1.
// gcd(p, 0) = normalized p; gcd(0, 0) = 0.
BivarPoly gcd(const BivarPoly& a, const BivarPoly& b);

// Resultant of a and b with respect to z2: a univariate polynomial in z1.
// Degree-zero conventions: Res(a, b) = a^deg(b) when deg_z2 a = 0, and 1 when
// both degrees vanish. Throws std::invalid_argument if either is zero.
UniPoly resultant_z2(const BivarPoly& a, const BivarPoly& b);

// All complex roots of p (with multiplicity, as repeated entries) by the
// Durand–Kerner iteration on double-precision coefficients. Intended for the
// numeric oracle; not exact.
std::vector<std::complex<double>> complex_roots(const UniPoly& p);

}  // namespace fol4
