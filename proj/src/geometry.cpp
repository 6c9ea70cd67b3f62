#include "fol4/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fol4 {

namespace {

constexpr double kJInvariantTol = 1e-9;
constexpr double kMinMetricEigenvalue = 1e-8;

Mat4 identity4() {
    Mat4 m{};
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return m;
}

Vec4 matvec(const Mat4& m, const Vec4& v) {
    Vec4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i] += m[i][j] * v[j];
    return out;
}

Mat4 matmul(const Mat4& a, const Mat4& b) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

Mat4 transpose(const Mat4& m) {
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = m[j][i];
    return out;
}

double frobenius(const Mat4& m) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += m[i][j] * m[i][j];
    return std::sqrt(s);
}

double inner_g(const Mat4& g, const Vec4& a, const Vec4& b) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) s += a[i] * g[i][j] * b[j];
    return s;
}

double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Mat4 inverse4(const Mat4& m) {
    // Gauss-Jordan with partial pivoting on [m | I].
    double a[4][8];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) a[i][j] = m[i][j];
        for (int j = 0; j < 4; ++j) a[i][4 + j] = i == j ? 1.0 : 0.0;
    }
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-14)
            throw std::domain_error("metric matrix is numerically singular");
        if (pivot != col)
            for (int j = 0; j < 8; ++j) std::swap(a[pivot][j], a[col][j]);
        const double inv = 1.0 / a[col][col];
        for (int j = 0; j < 8; ++j) a[col][j] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (int j = 0; j < 8; ++j) a[r][j] -= f * a[col][j];
        }
    }
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[i][4 + j];
    return out;
}

// Cyclic Jacobi iteration; adequate and robust for symmetric 4x4 input.
double min_symmetric_eigenvalue(Mat4 a) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off += a[p][q] * a[p][q];
        if (off < 1e-28) break;
        for (int p = 0; p < 4; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                if (std::fabs(a[p][q]) < 1e-300) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t =
                    (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < 4; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < 4; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    double mn = a[0][0];
    for (int i = 1; i < 4; ++i) mn = std::min(mn, a[i][i]);
    return mn;
}

void require_order(int order) {
    if (order != 2 && order != 4)
        throw std::invalid_argument("difference order must be 2 or 4");
}

void require_interior(const Box& box, const Vec4& p, double h, const char* what) {
    if (h <= 0) throw std::invalid_argument("difference step h must be positive");
    if (!box.interior(p, 2 * h)) {
        std::ostringstream os;
        os << what << ": point is within 2h of the chart boundary";
        throw std::domain_error(os.str());
    }
}

Vec4 shifted(const Vec4& p, int axis, double delta) {
    Vec4 q = p;
    q[axis] += delta;
    return q;
}

// d/dx_axis of a scalar function, central differences.
double partial(const std::function<double(const Vec4&)>& f, const Vec4& p, int axis, double h,
               int order) {
    if (order == 2) return (f(shifted(p, axis, h)) - f(shifted(p, axis, -h))) / (2 * h);
    return (-f(shifted(p, axis, 2 * h)) + 8 * f(shifted(p, axis, h)) -
            8 * f(shifted(p, axis, -h)) + f(shifted(p, axis, -2 * h))) /
           (12 * h);
}

// Directional derivative of a scalar along the constant direction v.
double directional(const std::function<double(const Vec4&)>& f, const Vec4& p, const Vec4& v,
                   double h, int order) {
    double s = 0;
    for (int i = 0; i < 4; ++i)
        if (v[i] != 0) s += v[i] * partial(f, p, i, h, order);
    return s;
}

// Jacobian J[k][j] = d w^k / d x_j of a vector field.
Mat4 jacobian(const VectorField& w, const Vec4& p, double h, int order) {
    Mat4 out{};
    for (int j = 0; j < 4; ++j) {
        Vec4 plus, minus;
        if (order == 2) {
            plus = w(shifted(p, j, h));
            minus = w(shifted(p, j, -h));
            for (int k = 0; k < 4; ++k) out[k][j] = (plus[k] - minus[k]) / (2 * h);
        } else {
            const Vec4 p2 = w(shifted(p, j, 2 * h));
            const Vec4 p1 = w(shifted(p, j, h));
            const Vec4 m1 = w(shifted(p, j, -h));
            const Vec4 m2 = w(shifted(p, j, -2 * h));
            for (int k = 0; k < 4; ++k)
                out[k][j] = (-p2[k] + 8 * p1[k] - 8 * m1[k] + m2[k]) / (12 * h);
        }
    }
    return out;
}

// Lie bracket [u, v] at p by finite differences.
Vec4 lie_bracket(const VectorField& u, const VectorField& v, const Vec4& p, double h,
                 int order) {
    const Vec4 up = u(p), vp = v(p);
    const Mat4 du = jacobian(u, p, h, order);
    const Mat4 dv = jacobian(v, p, h, order);
    Vec4 out{};
    for (int k = 0; k < 4; ++k)
        for (int j = 0; j < 4; ++j) out[k] += up[j] * dv[k][j] - vp[j] * du[k][j];
    return out;
}

// Covariant derivative (grad_u w) at p from precomputed Christoffels.
Vec4 covariant(const VectorField& u, const VectorField& w, const std::array<Mat4, 4>& gamma,
               const Vec4& p, double h, int order) {
    const Vec4 up = u(p), wp = w(p);
    const Mat4 dw = jacobian(w, p, h, order);
    Vec4 out{};
    for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < 4; ++j) out[k] += up[j] * dw[k][j];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out[k] += gamma[k][i][j] * up[i] * wp[j];
    }
    return out;
}

}  // namespace

bool Box::interior(const Vec4& p, double margin) const {
    for (int i = 0; i < 4; ++i)
        if (p[i] < lo[i] + margin || p[i] > hi[i] - margin) return false;
    return true;
}

void ChartField::validate_metric_at(const Vec4& p) const {
    const Mat4 g = metric(p);
    double scale = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) scale = std::max(scale, std::fabs(g[i][j]));
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::fabs(g[i][j] - g[j][i]) > 1e-9 * (1 + scale))
                throw std::domain_error("metric is not symmetric at the sample point");
    if (min_symmetric_eigenvalue(g) <= kMinMetricEigenvalue)
        throw std::domain_error("metric is not positive-definite at the sample point");
}

OrthogonalJ::OrthogonalJ(MatrixField field) : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("OrthogonalJ requires a non-empty field");
}

Mat4 OrthogonalJ::at(const Vec4& p) const { return field_(p); }

double OrthogonalJ::invariant_residual(const MatrixField& g, const Vec4& p) const {
    const Mat4 j = field_(p);
    const Mat4 gp = g(p);
    Mat4 jj = matmul(j, j);
    for (int i = 0; i < 4; ++i) jj[i][i] += 1.0;  // J^2 + I
    Mat4 pull = matmul(transpose(j), matmul(gp, j));
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) pull[i][k] -= gp[i][k];  // J^T g J - g
    return std::max(frobenius(jj), frobenius(pull));
}

OrthogonalJ orthogonal_j_from_frame(const ChartField& field, std::uint64_t seed) {
    std::array<int, 4> perm{0, 1, 2, 3};
    std::mt19937_64 rng(seed);
    std::shuffle(perm.begin(), perm.end(), rng);

    MatrixField metric = field.metric;
    auto j_at = [metric, perm](const Vec4& p) -> Mat4 {
        const Mat4 g = metric(p);
        std::array<Vec4, 4> frame{};
        for (int k = 0; k < 4; ++k) {
            Vec4 v{};
            v[perm[k]] = 1.0;
            for (int l = 0; l < k; ++l) {
                const double proj = inner_g(g, frame[l], v);
                for (int i = 0; i < 4; ++i) v[i] -= proj * frame[l][i];
            }
            const double nn = inner_g(g, v, v);
            if (!(nn > 1e-12))
                throw std::domain_error(
                    "metric is degenerate: Gram-Schmidt frame construction failed");
            const double inv = 1.0 / std::sqrt(nn);
            for (int i = 0; i < 4; ++i) frame[k][i] = v[i] * inv;
        }
        // J = (f2 f1^T - f1 f2^T + f4 f3^T - f3 f4^T) g  rotates the frame:
        // f1 -> f2 -> -f1, f3 -> f4 -> -f3.
        Mat4 skew{};
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                skew[i][j] = frame[1][i] * frame[0][j] - frame[0][i] * frame[1][j] +
                             frame[3][i] * frame[2][j] - frame[2][i] * frame[3][j];
            }
        }
        return matmul(skew, g);
    };

    // Fail fast on blatantly bad metrics.
    Vec4 center{};
    for (int i = 0; i < 4; ++i) center[i] = (field.box.lo[i] + field.box.hi[i]) / 2;
    field.validate_metric_at(center);
    (void)j_at(center);
    return OrthogonalJ(j_at);
}

std::array<Mat4, 4> christoffel(const ChartField& field, const Vec4& point, double h,
                                int order) {
    require_order(order);
    require_interior(field.box, point, h, "christoffel");
    field.validate_metric_at(point);

    const Mat4 ginv = inverse4(field.metric(point));
    // dg[a][i][j] = d g_ij / d x_a
    std::array<Mat4, 4> dg{};
    for (int a = 0; a < 4; ++a) {
        if (order == 2) {
            const Mat4 plus = field.metric(shifted(point, a, h));
            const Mat4 minus = field.metric(shifted(point, a, -h));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) dg[a][i][j] = (plus[i][j] - minus[i][j]) / (2 * h);
        } else {
            const Mat4 p2 = field.metric(shifted(point, a, 2 * h));
            const Mat4 p1 = field.metric(shifted(point, a, h));
            const Mat4 m1 = field.metric(shifted(point, a, -h));
            const Mat4 m2 = field.metric(shifted(point, a, -2 * h));
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j)
                    dg[a][i][j] =
                        (-p2[i][j] + 8 * p1[i][j] - 8 * m1[i][j] + m2[i][j]) / (12 * h);
        }
    }

    // Computed once per unordered pair {i, j} and mirrored, so the lower-index
    // symmetry is exact even when the metric evaluator rounds asymmetrically.
    std::array<Mat4, 4> gamma{};
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                double s = 0;
                for (int l = 0; l < 4; ++l)
                    s += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                gamma[k][i][j] = 0.5 * s;
                gamma[k][j][i] = gamma[k][i][j];
            }
    return gamma;
}

double domega_covariant(const ChartField& field, const OrthogonalJ& J, const VectorField& a,
                        const VectorField& b, const VectorField& c, const Vec4& point,
                        double h, int order) {
    require_order(order);
    require_interior(field.box, point, h, "domega_covariant");

    const MatrixField& g = field.metric;
    auto omega = [&g, &J](const Vec4& q, const Vec4& u, const Vec4& v) {
        return inner_g(g(q), matvec(J.at(q), u), v);
    };
    auto scalar = [&omega](const VectorField& u, const VectorField& v) {
        return [&omega, &u, &v](const Vec4& q) { return omega(q, u(q), v(q)); };
    };

    const auto gamma = christoffel(field, point, h, order);
    const Vec4 ap = a(point), bp = b(point), cp = c(point);

    const double d1 = directional(scalar(b, c), point, ap, h, order);
    const double d2 = directional(scalar(c, a), point, bp, h, order);
    const double d3 = directional(scalar(a, b), point, cp, h, order);

    const Vec4 ab = covariant(a, b, gamma, point, h, order);
    const Vec4 bc = covariant(b, c, gamma, point, h, order);
    const Vec4 ca = covariant(c, a, gamma, point, h, order);
    const Vec4 ac = covariant(a, c, gamma, point, h, order);
    const Vec4 ba = covariant(b, a, gamma, point, h, order);
    const Vec4 cb = covariant(c, b, gamma, point, h, order);

    return d1 + d2 + d3 - omega(point, ab, cp) - omega(point, bc, ap) - omega(point, ca, bp) -
           omega(point, bp, ac) - omega(point, cp, ba) - omega(point, ap, cb);
}

DomegaReport verify_domega(const ChartField& field, const OrthogonalJ& J, const Vec4& point,
                           double h, int order) {
    require_order(order);
    require_interior(field.box, point, h, "verify_domega");
    field.validate_metric_at(point);
    if (J.invariant_residual(field.metric, point) >= kJInvariantTol)
        throw std::domain_error("J is not a g-orthogonal almost-complex structure at the point");
    if (!field.x || !field.z)
        throw std::invalid_argument("verify_domega requires both test vector fields x and z");

    const VectorField& x = field.x;
    const VectorField& z = field.z;
    VectorField jx = [&J, &x](const Vec4& q) { return matvec(J.at(q), x(q)); };

    DomegaReport report;
    report.lhs = domega_covariant(field, J, x, jx, z, point, h, order);

    const Mat4 gp = field.metric(point);
    const auto gamma = christoffel(field, point, h, order);
    const Vec4 bracket = lie_bracket(x, jx, point, h, order);
    const Vec4 jz = matvec(J.at(point), z(point));
    const Vec4 grad_xx = covariant(x, x, gamma, point, h, order);
    const Vec4 grad_jxjx = covariant(jx, jx, gamma, point, h, order);
    Vec4 mean{};
    for (int i = 0; i < 4; ++i) mean[i] = grad_xx[i] + grad_jxjx[i];

    report.rhs = inner_g(gp, bracket, jz) - inner_g(gp, mean, z(point));
    report.residual = std::fabs(report.lhs - report.rhs);
    return report;
}

RummlerReport rummler_check(const ChartField& field, const VectorField& tau1,
                            const VectorField& tau2, const std::vector<Vec4>& points,
                            double h, double tol) {
    if (!field.mu)
        throw std::invalid_argument("rummler_check requires the chart to carry a 2-form mu");
    if (h <= 0) throw std::invalid_argument("difference step h must be positive");
    if (tol <= 0) throw std::invalid_argument("closedness tolerance must be positive");
    const MatrixField& mu = *field.mu;

    auto mu_of = [&mu](const Vec4& q, const Vec4& u, const Vec4& v) {
        double s = 0;
        const Mat4 m = mu(q);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) s += u[i] * m[i][j] * v[j];
        return s;
    };
    // dmu(u,v,w) by the bracket formula; constant fields drop their terms.
    auto dmu = [&](const VectorField& u, const VectorField& v, const VectorField& w,
                   const Vec4& p) {
        auto s_vw = [&](const Vec4& q) { return mu_of(q, v(q), w(q)); };
        auto s_wu = [&](const Vec4& q) { return mu_of(q, w(q), u(q)); };
        auto s_uv = [&](const Vec4& q) { return mu_of(q, u(q), v(q)); };
        const double lead = directional(s_vw, p, u(p), h, 2) +
                            directional(s_wu, p, v(p), h, 2) +
                            directional(s_uv, p, w(p), h, 2);
        const Vec4 uv = lie_bracket(u, v, p, h, 2);
        const Vec4 vw = lie_bracket(v, w, p, h, 2);
        const Vec4 wu = lie_bracket(w, u, p, h, 2);
        return lead - mu_of(p, uv, w(p)) - mu_of(p, vw, u(p)) - mu_of(p, wu, v(p));
    };

    RummlerReport report;
    report.min_mu = std::numeric_limits<double>::infinity();
    report.note =
        "pointwise audit of the necessary conditions mu(tau1,tau2) > 0 and "
        "dmu(tau1,tau2,-) = 0; passing is consistent with tautness, not a proof of it";

    for (std::size_t idx = 0; idx < points.size(); ++idx) {
        const Vec4& p = points[idx];
        const Vec4 t1 = tau1(p), t2 = tau2(p);
        const double area2 = dot(t1, t1) * dot(t2, t2) - dot(t1, t2) * dot(t1, t2);
        if (!(std::sqrt(std::max(area2, 0.0)) >= 1e-10)) {
            std::ostringstream os;
            os << "spanning pair is degenerate at sample " << idx;
            throw std::domain_error(os.str());
        }

        ++report.points;
        const double positivity = mu_of(p, t1, t2);
        report.min_mu = std::min(report.min_mu, positivity);
        if (positivity > 0)
            ++report.positivity_pass;
        else
            ++report.positivity_fail;

        bool closed = true;
        for (int k = 0; k < 4; ++k) {
            VectorField basis = [k](const Vec4&) {
                Vec4 e{};
                e[k] = 1.0;
                return e;
            };
            const double v = std::fabs(dmu(tau1, tau2, basis, p));
            report.max_leafwise_dmu = std::max(report.max_leafwise_dmu, v);
            if (v >= tol) closed = false;
        }
        if (closed)
            ++report.closedness_pass;
        else
            ++report.closedness_fail;
    }
    if (report.points == 0) report.min_mu = 0;
    return report;
}

// --- expression parser ------------------------------------------------------

namespace {

struct ExprNode {
    enum class Kind {
        Number,
        Var,
        Add,
        Sub,
        Mul,
        Div,
        Pow,
        Neg,
        Sin,
        Cos,
        Exp,
        Sqrt,
        Log
    };
    Kind kind;
    double number = 0;
    int var = 0;
    std::shared_ptr<const ExprNode> a;
    std::shared_ptr<const ExprNode> b;

    double eval(const Vec4& p) const {
        switch (kind) {
            case Kind::Number: return number;
            case Kind::Var: return p[var];
            case Kind::Add: return a->eval(p) + b->eval(p);
            case Kind::Sub: return a->eval(p) - b->eval(p);
            case Kind::Mul: return a->eval(p) * b->eval(p);
            case Kind::Div: return a->eval(p) / b->eval(p);
            case Kind::Pow: return std::pow(a->eval(p), b->eval(p));
            case Kind::Neg: return -a->eval(p);
            case Kind::Sin: return std::sin(a->eval(p));
            case Kind::Cos: return std::cos(a->eval(p));
            case Kind::Exp: return std::exp(a->eval(p));
            case Kind::Sqrt: return std::sqrt(a->eval(p));
            case Kind::Log: return std::log(a->eval(p));
        }
        return 0;
    }
};

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(ExprNode::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<ExprNode>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    NodePtr parse() {
        NodePtr e = expression();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        std::ostringstream os;
        os << "expression error at position " << pos_ << ": " << what;
        throw std::invalid_argument(os.str());
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expression() {
        NodePtr lhs = term();
        for (;;) {
            if (eat('+'))
                lhs = make_node(ExprNode::Kind::Add, lhs, term());
            else if (eat('-'))
                lhs = make_node(ExprNode::Kind::Sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term() {
        NodePtr lhs = unary();
        for (;;) {
            if (eat('*'))
                lhs = make_node(ExprNode::Kind::Mul, lhs, unary());
            else if (eat('/'))
                lhs = make_node(ExprNode::Kind::Div, lhs, unary());
            else
                return lhs;
        }
    }

    // '-' binds looser than '^', so -x1^2 is -(x1^2); exponents may start
    // with '-' themselves, and '^' is right-associative.
    NodePtr unary() {
        if (eat('-')) return make_node(ExprNode::Kind::Neg, unary());
        return power();
    }

    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) return make_node(ExprNode::Kind::Pow, base, unary());
        return base;
    }

    NodePtr primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of expression");
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (eat('(')) {
            NodePtr e = expression();
            if (!eat(')')) fail("missing ')'");
            return e;
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    NodePtr number() {
        const char* begin = text_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(end - begin);
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::Number;
        n->number = v;
        return n;
    }

    NodePtr identifier() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        if (name.size() == 2 && name[0] == 'x' && name[1] >= '1' && name[1] <= '4') {
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Var;
            n->var = name[1] - '1';
            return n;
        }
        ExprNode::Kind kind;
        if (name == "sin")
            kind = ExprNode::Kind::Sin;
        else if (name == "cos")
            kind = ExprNode::Kind::Cos;
        else if (name == "exp")
            kind = ExprNode::Kind::Exp;
        else if (name == "sqrt")
            kind = ExprNode::Kind::Sqrt;
        else if (name == "log")
            kind = ExprNode::Kind::Log;
        else {
            pos_ = start;
            fail("unknown identifier '" + name + "'");
        }
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr arg = expression();
        if (!eat(')')) fail("missing ')'");
        return make_node(kind, std::move(arg));
    }
};

}  // namespace

ScalarField parse_scalar_field(const std::string& expr) {
    NodePtr root = ExprParser(expr).parse();
    return [root](const Vec4& p) { return root->eval(p); };
}

VectorField parse_vector_field(const std::array<std::string, 4>& components) {
    std::array<ScalarField, 4> f;
    for (int i = 0; i < 4; ++i) f[i] = parse_scalar_field(components[i]);
    return [f](const Vec4& p) {
        Vec4 out{};
        for (int i = 0; i < 4; ++i) out[i] = f[i](p);
        return out;
    };
}

MatrixField parse_metric_field(const std::array<std::string, 10>& upper) {
    std::array<ScalarField, 10> f;
    for (int i = 0; i < 10; ++i) f[i] = parse_scalar_field(upper[i]);
    return [f](const Vec4& p) {
        Mat4 g{};
        int idx = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i; j < 4; ++j) {
                g[i][j] = f[idx](p);
                g[j][i] = g[i][j];
                ++idx;
            }
        return g;
    };
}

// --- grid-sampled fields ------------------------------------------------------

std::size_t GridData::index(std::uint32_t i1, std::uint32_t i2, std::uint32_t i3,
                            std::uint32_t i4) const {
    return ((static_cast<std::size_t>(i1) * dims[1] + i2) * dims[2] + i3) * dims[3] + i4;
}

GridData load_grid(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open grid file: " + path);
    GridData grid;
    in.read(reinterpret_cast<char*>(grid.dims.data()), sizeof(std::uint32_t) * 4);
    in.read(reinterpret_cast<char*>(&grid.spacing), sizeof(double));
    if (!in) throw std::runtime_error("truncated grid header in " + path);

    std::uint64_t count = 1;
    for (auto d : grid.dims) {
        if (d == 0) throw std::runtime_error("grid dimension is zero in " + path);
        count *= d;
        if (count > 100'000'000) throw std::runtime_error("grid too large in " + path);
    }
    if (!(grid.spacing > 0)) throw std::runtime_error("grid spacing must be positive in " + path);

    grid.values.resize(count);
    in.read(reinterpret_cast<char*>(grid.values.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!in || in.gcount() != static_cast<std::streamsize>(count * sizeof(double)))
        throw std::runtime_error("truncated grid data in " + path);
    char extra;
    if (in.read(&extra, 1)) throw std::runtime_error("trailing data in grid file " + path);
    return grid;
}

void save_grid(const std::string& path, const GridData& grid) {
    std::uint64_t count = 1;
    for (auto d : grid.dims) {
        if (d == 0) throw std::invalid_argument("grid dimension is zero");
        count *= d;
    }
    if (grid.values.size() != count)
        throw std::invalid_argument("grid value count does not match dimensions");
    if (!(grid.spacing > 0)) throw std::invalid_argument("grid spacing must be positive");

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot create grid file: " + path);
    out.write(reinterpret_cast<const char*>(grid.dims.data()), sizeof(std::uint32_t) * 4);
    out.write(reinterpret_cast<const char*>(&grid.spacing), sizeof(double));
    out.write(reinterpret_cast<const char*>(grid.values.data()),
              static_cast<std::streamsize>(grid.values.size() * sizeof(double)));
    if (!out) throw std::runtime_error("failed writing grid file: " + path);
}

Box grid_box(const GridData& grid) {
    Box box;
    for (int i = 0; i < 4; ++i) {
        box.lo[i] = 0;
        box.hi[i] = (grid.dims[i] - 1) * grid.spacing;
    }
    return box;
}

ScalarField grid_scalar_field(GridData grid) {
    auto data = std::make_shared<const GridData>(std::move(grid));
    return [data](const Vec4& p) {
        std::array<std::uint32_t, 4> i0{}, i1{};
        std::array<double, 4> frac{};
        for (int k = 0; k < 4; ++k) {
            const double hi = (data->dims[k] - 1) * data->spacing;
            const double tol = 1e-9 * (1 + hi);
            if (p[k] < -tol || p[k] > hi + tol)
                throw std::domain_error("grid field evaluated outside its box");
            const double clamped = std::clamp(p[k], 0.0, hi);
            if (data->dims[k] == 1) {
                i0[k] = i1[k] = 0;
                frac[k] = 0;
            } else {
                const double t = clamped / data->spacing;
                const auto base = std::min<std::uint32_t>(static_cast<std::uint32_t>(t),
                                                          data->dims[k] - 2);
                i0[k] = base;
                i1[k] = base + 1;
                frac[k] = t - base;
            }
        }
        double value = 0;
        for (int mask = 0; mask < 16; ++mask) {
            double w = 1;
            std::array<std::uint32_t, 4> idx{};
            for (int k = 0; k < 4; ++k) {
                if (mask & (1 << k)) {
                    idx[k] = i1[k];
                    w *= frac[k];
                } else {
                    idx[k] = i0[k];
                    w *= 1 - frac[k];
                }
            }
            if (w != 0) value += w * data->values[data->index(idx[0], idx[1], idx[2], idx[3])];
        }
        return value;
    };
}

std::vector<Vec4> sample_points(const Box& box, int count, double margin, std::uint64_t seed) {
    if (count < 0) throw std::invalid_argument("sample count must be nonnegative");
    for (int i = 0; i < 4; ++i)
        if (box.lo[i] + margin >= box.hi[i] - margin)
            throw std::invalid_argument("margin leaves no interior to sample");
    std::mt19937_64 rng(seed);
    std::vector<Vec4> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int n = 0; n < count; ++n) {
        Vec4 p{};
        for (int i = 0; i < 4; ++i) {
            std::uniform_real_distribution<double> dist(box.lo[i] + margin, box.hi[i] - margin);
            p[i] = dist(rng);
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace fol4
