#include "fol4/bipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace fol4 {

// ---------------------------------------------------------------------------
// GQ

GQ GQ::operator/(const GQ& o) const {
    if (o.is_zero()) throw std::domain_error("division by zero in Q(i)");
    mpq_class n = o.re * o.re + o.im * o.im;
    return GQ((re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n);
}

std::string GQ::str() const {
    if (im == 0) return re.get_str();
    std::ostringstream os;
    mpq_class ia = abs(im);
    os << '(' << re.get_str() << (im > 0 ? "+" : "-") << ia.get_str() << "i)";
    return os.str();
}

// ---------------------------------------------------------------------------
// UniPoly

UniPoly::UniPoly(GQ constant) {
    if (!constant.is_zero()) c_.push_back(std::move(constant));
}

UniPoly::UniPoly(std::vector<GQ> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::monomial(int degree, GQ coeff) {
    if (degree < 0) throw std::invalid_argument("negative monomial degree");
    if (coeff.is_zero()) return UniPoly();
    std::vector<GQ> c(static_cast<size_t>(degree) + 1);
    c.back() = std::move(coeff);
    return UniPoly(std::move(c));
}

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

const GQ& UniPoly::lc() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

GQ UniPoly::coeff(int k) const {
    if (k < 0 || k >= static_cast<int>(c_.size())) return GQ();
    return c_[static_cast<size_t>(k)];
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<GQ> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        GQ v;
        if (i < c_.size()) v = v + c_[i];
        if (i < o.c_.size()) v = v + o.c_[i];
        r[i] = v;
    }
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const { return *this + (-o); }

UniPoly UniPoly::operator-() const {
    std::vector<GQ> r(c_);
    for (auto& v : r) v = -v;
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    std::vector<GQ> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const GQ& s) const {
    if (s.is_zero()) return UniPoly();
    std::vector<GQ> r(c_);
    for (auto& v : r) v = v * s;
    return UniPoly(std::move(r));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    UniPoly rem = *this;
    std::vector<GQ> q;
    if (degree() >= d.degree()) q.assign(static_cast<size_t>(degree() - d.degree()) + 1, GQ());
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        GQ f = rem.lc() / d.lc();
        int shift = rem.degree() - d.degree();
        q[static_cast<size_t>(shift)] = f;
        rem = rem - d * UniPoly::monomial(shift, f);
    }
    return {UniPoly(std::move(q)), rem};
}

UniPoly UniPoly::exact_div(const UniPoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero())
        throw std::logic_error("polynomial division expected to be exact left a remainder");
    return q;
}

UniPoly UniPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative polynomial power");
    UniPoly r{GQ(1)};
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (GQ(1) / lc());
}

int UniPoly::order_at_zero() const {
    if (is_zero()) throw std::domain_error("order at zero of the zero polynomial");
    for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return static_cast<int>(i);
    return 0;  // unreachable, c_ is trimmed
}

std::complex<double> UniPoly::eval(std::complex<double> t) const {
    std::complex<double> r = 0;
    for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i].to_complex();
    return r;
}

GQ UniPoly::eval(const GQ& t) const {
    GQ r;
    for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
    return r;
}

std::string UniPoly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        GQ v = coeff(k);
        if (v.is_zero()) continue;
        bool neg = v.im == 0 && v.re < 0;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << '-';
        GQ a = neg ? -v : v;
        bool unit = (a.im == 0 && a.re == 1);
        if (!unit || k == 0) os << a.str();
        if (k > 0) {
            os << var;
            if (k > 1) os << '^' << k;
        }
        first = false;
    }
    return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x.divmod(y).second;
        x = y;
        y = r;
    }
    return x.monic();
}

// ---------------------------------------------------------------------------
// BivarPoly

void BivarPoly::add_term(int i, int j, const GQ& v) {
    if (v.is_zero()) return;
    auto key = std::make_pair(i, j);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, v);
    } else {
        it->second = it->second + v;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BivarPoly BivarPoly::constant(GQ v) { return monomial(0, 0, std::move(v)); }
BivarPoly BivarPoly::z1() { return monomial(1, 0, GQ(1)); }
BivarPoly BivarPoly::z2() { return monomial(0, 1, GQ(1)); }

BivarPoly BivarPoly::monomial(int i, int j, GQ coeff) {
    if (i < 0 || j < 0) throw std::invalid_argument("negative exponent");
    BivarPoly p;
    p.add_term(i, j, coeff);
    return p;
}

bool BivarPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == std::make_pair(0, 0));
}

int BivarPoly::total_degree() const {
    int d = -1;
    for (const auto& [ij, v] : terms_) d = std::max(d, ij.first + ij.second);
    return d;
}

int BivarPoly::degree_z1() const {
    int d = is_zero() ? -1 : 0;
    for (const auto& [ij, v] : terms_) d = std::max(d, ij.first);
    return d;
}

int BivarPoly::degree_z2() const {
    int d = is_zero() ? -1 : 0;
    for (const auto& [ij, v] : terms_) d = std::max(d, ij.second);
    return d;
}

GQ BivarPoly::coeff(int i, int j) const {
    auto it = terms_.find(std::make_pair(i, j));
    return it == terms_.end() ? GQ() : it->second;
}

BivarPoly BivarPoly::operator+(const BivarPoly& o) const {
    BivarPoly r = *this;
    for (const auto& [ij, v] : o.terms_) r.add_term(ij.first, ij.second, v);
    return r;
}

BivarPoly BivarPoly::operator-(const BivarPoly& o) const { return *this + (-o); }

BivarPoly BivarPoly::operator-() const {
    BivarPoly r = *this;
    for (auto& [ij, v] : r.terms_) v = -v;
    return r;
}

BivarPoly BivarPoly::operator*(const BivarPoly& o) const {
    BivarPoly r;
    for (const auto& [a, va] : terms_)
        for (const auto& [b, vb] : o.terms_)
            r.add_term(a.first + b.first, a.second + b.second, va * vb);
    return r;
}

BivarPoly BivarPoly::operator*(const GQ& s) const {
    if (s.is_zero()) return BivarPoly();
    BivarPoly r = *this;
    for (auto& [ij, v] : r.terms_) v = v * s;
    return r;
}

BivarPoly BivarPoly::derivative_z1() const {
    BivarPoly r;
    for (const auto& [ij, v] : terms_)
        if (ij.first > 0) r.add_term(ij.first - 1, ij.second, v * GQ(ij.first));
    return r;
}

BivarPoly BivarPoly::derivative_z2() const {
    BivarPoly r;
    for (const auto& [ij, v] : terms_)
        if (ij.second > 0) r.add_term(ij.first, ij.second - 1, v * GQ(ij.second));
    return r;
}

BivarPoly BivarPoly::swap_vars() const {
    BivarPoly r;
    for (const auto& [ij, v] : terms_) r.add_term(ij.second, ij.first, v);
    return r;
}

BivarPoly BivarPoly::shear_z1(long t) const {
    // z1 -> z1 + t z2: expand (z1 + t z2)^i by the binomial theorem.
    BivarPoly r;
    for (const auto& [ij, v] : terms_) {
        const int i = ij.first, j = ij.second;
        mpz_class binom = 1;
        for (int k = 0; k <= i; ++k) {
            // coefficient of z1^{i-k} z2^k in (z1 + t z2)^i: C(i,k) t^k
            mpz_class tk;
            mpz_ui_pow_ui(tk.get_mpz_t(), static_cast<unsigned long>(std::abs(t)),
                          static_cast<unsigned long>(k));
            if (t < 0 && k % 2 == 1) tk = -tk;
            r.add_term(i - k, j + k, v * GQ(mpq_class(binom * tk)));
            binom = binom * (i - k) / (k + 1);
        }
    }
    return r;
}

std::vector<UniPoly> BivarPoly::z2_coefficients() const {
    std::vector<std::vector<GQ>> rows(static_cast<size_t>(degree_z2()) + 1);
    for (auto& row : rows) row.assign(static_cast<size_t>(std::max(degree_z1(), 0)) + 1, GQ());
    for (const auto& [ij, v] : terms_)
        rows[static_cast<size_t>(ij.second)][static_cast<size_t>(ij.first)] = v;
    std::vector<UniPoly> out;
    out.reserve(rows.size());
    for (auto& row : rows) out.emplace_back(std::move(row));
    return out;
}

UniPoly BivarPoly::restrict_z1_zero() const {
    std::vector<GQ> c(static_cast<size_t>(std::max(degree_z2(), 0)) + 1, GQ());
    for (const auto& [ij, v] : terms_)
        if (ij.first == 0) c[static_cast<size_t>(ij.second)] = v;
    return UniPoly(std::move(c));
}

std::pair<int, int> BivarPoly::leading_monomial() const {
    if (is_zero()) throw std::domain_error("leading monomial of the zero polynomial");
    std::pair<int, int> best = terms_.begin()->first;
    auto key = [](const std::pair<int, int>& m) {
        return std::make_pair(m.first + m.second, m.first);
    };
    for (const auto& [ij, v] : terms_)
        if (key(ij) > key(best)) best = ij;
    return best;
}

GQ BivarPoly::leading_coeff() const {
    auto lm = leading_monomial();
    return coeff(lm.first, lm.second);
}

BivarPoly BivarPoly::normalized() const {
    if (is_zero()) return *this;
    return *this * (GQ(1) / leading_coeff());
}

BivarPoly BivarPoly::exact_div(const BivarPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    BivarPoly rem = *this, q;
    const auto dl = d.leading_monomial();
    const GQ dc = d.coeff(dl.first, dl.second);
    while (!rem.is_zero()) {
        const auto rl = rem.leading_monomial();
        if (rl.first < dl.first || rl.second < dl.second)
            throw std::logic_error("bivariate division expected to be exact failed");
        BivarPoly t = monomial(rl.first - dl.first, rl.second - dl.second,
                               rem.coeff(rl.first, rl.second) / dc);
        q = q + t;
        rem = rem - t * d;
    }
    return q;
}

std::complex<double> BivarPoly::eval(std::complex<double> v1, std::complex<double> v2) const {
    std::complex<double> r = 0;
    for (const auto& [ij, v] : terms_) {
        std::complex<double> m = v.to_complex();
        for (int k = 0; k < ij.first; ++k) m *= v1;
        for (int k = 0; k < ij.second; ++k) m *= v2;
        r += m;
    }
    return r;
}

GQ BivarPoly::eval(const GQ& v1, const GQ& v2) const {
    GQ r;
    for (const auto& [ij, v] : terms_) {
        GQ m = v;
        for (int k = 0; k < ij.first; ++k) m = m * v1;
        for (int k = 0; k < ij.second; ++k) m = m * v2;
        r = r + m;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Parsing and printing

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    explicit Lexer(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }
    mpz_class integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("expected a number at position " +
                                                      std::to_string(start) + " in polynomial");
        return mpz_class(s.substr(start, pos - start));
    }
    // z1 or z2; returns 0 if the next token is not a variable
    int variable() {
        skip_ws();
        if (pos + 1 < s.size() && s[pos] == 'z' && (s[pos + 1] == '1' || s[pos + 1] == '2')) {
            int which = s[pos + 1] == '1' ? 1 : 2;
            pos += 2;
            return which;
        }
        return 0;
    }
};

constexpr int kMaxExponent = 64;

}  // namespace

BivarPoly BivarPoly::parse(const std::string& text) {
    Lexer lx(text);
    BivarPoly out;
    bool expect_term = true;
    int sign = 1;
    // leading sign
    if (lx.eat('-')) sign = -1;
    else lx.eat('+');

    while (true) {
        // one term: [coefficient] [factors]
        mpq_class coef = sign;
        int e1 = 0, e2 = 0;
        bool any = false;
        while (true) {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                mpz_class num = lx.integer();
                if (lx.eat('/')) {
                    mpz_class den = lx.integer();
                    if (den == 0) throw std::invalid_argument("zero denominator in coefficient");
                    mpq_class q(num, den);
                    q.canonicalize();
                    coef *= q;
                } else {
                    coef *= num;
                }
                any = true;
            } else if (int var = lx.variable(); var != 0) {
                long e = 1;
                if (lx.eat('^')) {
                    mpz_class ev = lx.integer();
                    if (ev < 0 || ev > kMaxExponent)
                        throw std::invalid_argument("exponent out of range in polynomial");
                    e = ev.get_si();
                }
                (var == 1 ? e1 : e2) += static_cast<int>(e);
                any = true;
            } else if (c == '*') {
                lx.eat('*');
            } else {
                break;
            }
        }
        if (!any) throw std::invalid_argument("malformed polynomial near position " +
                                              std::to_string(lx.pos));
        out = out + monomial(e1, e2, GQ(coef));
        expect_term = false;

        char c = lx.peek();
        if (c == '\0') break;
        if (c == '+') {
            lx.eat('+');
            sign = 1;
        } else if (c == '-') {
            lx.eat('-');
            sign = -1;
        } else {
            throw std::invalid_argument("unexpected character '" + std::string(1, c) +
                                        "' at position " + std::to_string(lx.pos));
        }
        expect_term = true;
    }
    if (expect_term) throw std::invalid_argument("polynomial ends with a dangling sign");
    return out;
}

std::string BivarPoly::str() const {
    if (is_zero()) return "0";
    // graded-lex descending
    std::vector<std::pair<std::pair<int, int>, GQ>> ts(terms_.begin(), terms_.end());
    std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
        auto ka = std::make_pair(a.first.first + a.first.second, a.first.first);
        auto kb = std::make_pair(b.first.first + b.first.second, b.first.first);
        return ka > kb;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [ij, v] : ts) {
        bool neg = v.im == 0 && v.re < 0;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << '-';
        GQ a = neg ? -v : v;
        bool unit = (a.im == 0 && a.re == 1);
        bool has_vars = ij.first > 0 || ij.second > 0;
        if (!unit || !has_vars) os << a.str();
        if (ij.first > 0) {
            os << "z1";
            if (ij.first > 1) os << '^' << ij.first;
        }
        if (ij.second > 0) {
            os << "z2";
            if (ij.second > 1) os << '^' << ij.second;
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Bivariate GCD by primitive pseudo-remainder sequences in (Q(i)[z1])[z2]

namespace {

BivarPoly from_z2_coefficients(const std::vector<UniPoly>& coeffs) {
    BivarPoly r;
    for (size_t j = 0; j < coeffs.size(); ++j)
        for (int i = 0; i <= coeffs[j].degree(); ++i)
            r = r + BivarPoly::monomial(i, static_cast<int>(j), coeffs[j].coeff(i));
    return r;
}

// Monic gcd of all z2-coefficients, i.e. the content over Q(i)[z1].
UniPoly content_z1(const BivarPoly& p) {
    UniPoly c;
    for (const UniPoly& q : p.z2_coefficients()) c = gcd(c, q);
    return c;
}

BivarPoly divide_content(const BivarPoly& p, const UniPoly& content) {
    if (content.degree() == 0) {
        return p * (GQ(1) / content.lc());
    }
    auto coeffs = p.z2_coefficients();
    for (auto& q : coeffs) q = q.exact_div(content);
    return from_z2_coefficients(coeffs);
}

BivarPoly primitive_part_z2(const BivarPoly& p) {
    if (p.is_zero()) return p;
    return divide_content(p, content_z1(p));
}

// Multiply by a univariate polynomial in z1.
BivarPoly mul_uni_z1(const BivarPoly& p, const UniPoly& u) {
    BivarPoly r;
    for (int i = 0; i <= u.degree(); ++i) {
        GQ c = u.coeff(i);
        if (c.is_zero()) continue;
        r = r + p * BivarPoly::monomial(i, 0, c);
    }
    return r;
}

UniPoly lc_z2(const BivarPoly& p) {
    auto coeffs = p.z2_coefficients();
    return coeffs.back();
}

// Pseudo-remainder of a by b in z2 (coefficients in Q(i)[z1]); result differs
// from the true remainder by a power of lc_z2(b), harmless under the content
// stripping that follows.
BivarPoly pseudo_rem_z2(BivarPoly r, const BivarPoly& b) {
    const int db = b.degree_z2();
    const UniPoly lb = lc_z2(b);
    while (!r.is_zero() && r.degree_z2() >= db) {
        const UniPoly lr = lc_z2(r);
        const int shift = r.degree_z2() - db;
        r = mul_uni_z1(r, lb) -
            mul_uni_z1(b * BivarPoly::monomial(0, shift, GQ(1)), lr);
    }
    return r;
}

}  // namespace

BivarPoly gcd(const BivarPoly& a, const BivarPoly& b) {
    if (a.is_zero()) return b.normalized();
    if (b.is_zero()) return a.normalized();

    const UniPoly cont = gcd(content_z1(a), content_z1(b));
    BivarPoly p = primitive_part_z2(a);
    BivarPoly q = primitive_part_z2(b);
    if (p.degree_z2() < q.degree_z2()) std::swap(p, q);
    while (!q.is_zero()) {
        BivarPoly r = pseudo_rem_z2(p, q);
        p = q;
        q = primitive_part_z2(r);
    }
    BivarPoly g = mul_uni_z1(primitive_part_z2(p), cont);
    return g.normalized();
}

// ---------------------------------------------------------------------------
// Resultant via fraction-free (Bareiss) elimination on the Sylvester matrix

namespace {

UniPoly det_bareiss(std::vector<std::vector<UniPoly>> a) {
    const size_t n = a.size();
    if (n == 0) return UniPoly(GQ(1));
    UniPoly prev{GQ(1)};
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k].is_zero()) {
            size_t p = k + 1;
            while (p < n && a[p][k].is_zero()) ++p;
            if (p == n) return UniPoly();
            std::swap(a[k], a[p]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                UniPoly num = a[k][k] * a[i][j] - a[i][k] * a[k][j];
                a[i][j] = num.exact_div(prev);
            }
            a[i][k] = UniPoly();
        }
        prev = a[k][k];
    }
    UniPoly d = a[n - 1][n - 1];
    return sign < 0 ? -d : d;
}

}  // namespace

UniPoly resultant_z2(const BivarPoly& a, const BivarPoly& b) {
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("resultant of the zero polynomial");
    const auto ac = a.z2_coefficients();
    const auto bc = b.z2_coefficients();
    const int m = static_cast<int>(ac.size()) - 1;  // deg_z2 a
    const int n = static_cast<int>(bc.size()) - 1;  // deg_z2 b
    if (m == 0 && n == 0) return UniPoly(GQ(1));
    if (m == 0) return ac[0].pow(n);
    if (n == 0) return bc[0].pow(m);

    const size_t size = static_cast<size_t>(m + n);
    std::vector<std::vector<UniPoly>> s(size, std::vector<UniPoly>(size));
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) s[static_cast<size_t>(r)][static_cast<size_t>(r + k)] = ac[static_cast<size_t>(m - k)];
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k)
            s[static_cast<size_t>(n + r)][static_cast<size_t>(r + k)] = bc[static_cast<size_t>(n - k)];
    return det_bareiss(std::move(s));
}

// ---------------------------------------------------------------------------
// Numeric root finding (oracle support)

std::vector<std::complex<double>> complex_roots(const UniPoly& p) {
    using C = std::complex<double>;
    std::vector<C> c;
    for (int k = 0; k <= p.degree(); ++k) c.push_back(p.coeff(k).to_complex());
    // strip numerically negligible leading coefficients
    double maxabs = 0;
    for (const C& v : c) maxabs = std::max(maxabs, std::abs(v));
    if (maxabs == 0) return {};
    while (c.size() > 1 && std::abs(c.back()) < 1e-12 * maxabs) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg <= 0) return {};
    for (auto& v : c) v /= c.back();

    std::vector<C> roots(static_cast<size_t>(deg));
    C seed(0.4, 0.9);
    C acc = 1;
    for (auto& r : roots) {
        acc *= seed;
        r = acc;
    }
    auto eval = [&](C z) {
        C r = 0;
        for (size_t i = c.size(); i-- > 0;) r = r * z + c[i];
        return r;
    };
    for (int iter = 0; iter < 1000; ++iter) {
        double delta = 0;
        for (size_t i = 0; i < roots.size(); ++i) {
            C denom = 1;
            for (size_t j = 0; j < roots.size(); ++j)
                if (j != i) denom *= roots[i] - roots[j];
            if (std::abs(denom) < 1e-300) denom = 1e-300;
            C step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = std::max(delta, std::abs(step));
        }
        if (delta < 1e-13) break;
    }
    return roots;
}

}  // namespace fol4
