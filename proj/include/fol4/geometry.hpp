#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace fol4 {

// Numerical verification layer: checks the fundamental-form identity
//   domega(x, Jx, z) = <[x,Jx], Jz> - <grad_x x + grad_Jx Jx, z>
// on a coordinate chart by finite differences, and audits the pointwise
// tautness conditions (positivity and leafwise closedness of a 2-form) on
// sampled data. Everything here is floating point; the only error source is
// the difference step h, and it is controlled and reported.

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<std::array<double, 4>, 4>;

using ScalarField = std::function<double(const Vec4&)>;
using VectorField = std::function<Vec4(const Vec4&)>;
using MatrixField = std::function<Mat4(const Vec4&)>;

// Open coordinate box on which all fields are evaluable.
struct Box {
    Vec4 lo{-1e9, -1e9, -1e9, -1e9};
    Vec4 hi{1e9, 1e9, 1e9, 1e9};

    // True when every coordinate keeps at least `margin` distance from the
    // boundary.
    bool interior(const Vec4& p, double margin) const;
};

// A chart worth of data: metric, two test vector fields, and an optional
// 2-form given as an antisymmetric matrix field mu[i][j] = mu(e_i, e_j).
struct ChartField {
    Box box;
    MatrixField metric;
    VectorField x;
    VectorField z;
    std::optional<MatrixField> mu;

    // Throws std::domain_error unless the metric is symmetric with least
    // eigenvalue > 1e-8 at p.
    void validate_metric_at(const Vec4& p) const;
};

// A field of g-orthogonal almost-complex structures: J^T g J = g and
// J^2 = -I pointwise.
class OrthogonalJ {
public:
    explicit OrthogonalJ(MatrixField field);

    Mat4 at(const Vec4& p) const;

    // max Frobenius norm of J^2 + I and J^T g J - g at p; the invariant
    // demands < 1e-9.
    double invariant_residual(const MatrixField& g, const Vec4& p) const;

private:
    MatrixField field_;
};

// Gram-Schmidt an orthonormal frame out of the coordinate frame (taken in a
// seed-chosen order) and rotate it: J f1 = f2, J f2 = -f1, J f3 = f4,
// J f4 = -f3. Deterministic for a fixed seed. Throws std::domain_error on a
// degenerate metric.
OrthogonalJ orthogonal_j_from_frame(const ChartField& field, std::uint64_t seed);

// Central-difference Christoffel symbols Gamma[k][i][j] at an interior point
// (margin >= 2h), symmetric in (i, j) by construction. order is 2 or 4.
std::array<Mat4, 4> christoffel(const ChartField& field, const Vec4& point, double h,
                                int order = 2);

// The 3-form domega evaluated on arbitrary vector fields (a, b, c) through
// the covariant expansion
//   domega(a,b,c) = a w(b,c) + b w(c,a) + c w(a,b)
//                 - w(grad_a b, c) - w(grad_b c, a) - w(grad_c a, b)
//                 - w(b, grad_a c) - w(c, grad_b a) - w(a, grad_c b)
// with w(u,v) = <Ju, v> and all derivatives by central differences.
double domega_covariant(const ChartField& field, const OrthogonalJ& J, const VectorField& a,
                        const VectorField& b, const VectorField& c, const Vec4& point,
                        double h, int order = 2);

struct DomegaReport {
    double lhs = 0;       // domega(x, Jx, z) via the covariant expansion
    double rhs = 0;       // <[x,Jx], Jz> - <grad_x x + grad_Jx Jx, z>
    double residual = 0;  // |lhs - rhs|
};

// Evaluates both sides of the identity at an interior point (margin >= 2h).
// Throws std::domain_error near the boundary or when J fails its
// orthogonality invariants at the point (residual >= 1e-9).
DomegaReport verify_domega(const ChartField& field, const OrthogonalJ& J, const Vec4& point,
                           double h, int order = 2);

struct RummlerReport {
    int points = 0;
    int positivity_pass = 0;
    int positivity_fail = 0;
    int closedness_pass = 0;
    int closedness_fail = 0;
    double min_mu = 0;             // least mu(tau1, tau2) over the samples
    double max_leafwise_dmu = 0;   // largest |dmu(tau1, tau2, e_k)| seen
    std::string note;              // audit disclaimer, always set
};

// Pointwise audit of the tautness necessary conditions for the plane field
// spanned by (tau1, tau2): mu(tau1,tau2) > 0 and |dmu(tau1,tau2,e_k)| < tol
// for the coordinate basis e_k. This is a sample audit, not a tautness
// decision. Throws std::domain_error when the spanning pair degenerates
// (parallelogram area < 1e-10) and std::invalid_argument when mu is absent.
RummlerReport rummler_check(const ChartField& field, const VectorField& tau1,
                            const VectorField& tau2, const std::vector<Vec4>& points,
                            double h, double tol);

// --- Field definitions from expression strings -----------------------------
//
// Grammar: numbers, coordinates x1..x4, + - * / ^, parentheses, unary minus,
// and the functions sin, cos, exp, sqrt, log. '^' is right-associative.
// Throws std::invalid_argument with a position on malformed input.
ScalarField parse_scalar_field(const std::string& expr);
VectorField parse_vector_field(const std::array<std::string, 4>& components);
// Upper-triangle entries in the order g11,g12,g13,g14,g22,g23,g24,g33,g34,g44.
MatrixField parse_metric_field(const std::array<std::string, 10>& upper);

// --- Grid-sampled fields ----------------------------------------------------
//
// Binary layout: four uint32 dimensions, one double spacing, then row-major
// doubles (last index fastest). Sample (i1,i2,i3,i4) sits at coordinates
// (i1*spacing, ..., i4*spacing).
struct GridData {
    std::array<std::uint32_t, 4> dims{};
    double spacing = 0;
    std::vector<double> values;

    std::size_t index(std::uint32_t i1, std::uint32_t i2, std::uint32_t i3,
                      std::uint32_t i4) const;
};

GridData load_grid(const std::string& path);           // throws std::runtime_error
void save_grid(const std::string& path, const GridData& grid);

// The box a grid covers: [0, (dims_k - 1) * spacing] in each coordinate.
Box grid_box(const GridData& grid);

// Multilinear interpolation over the grid; throws std::domain_error outside
// the covered box.
ScalarField grid_scalar_field(GridData grid);

// Uniform interior sample points (margin away from the boundary),
// deterministic for a fixed seed.
std::vector<Vec4> sample_points(const Box& box, int count, double margin,
                                std::uint64_t seed);

}  // namespace fol4
