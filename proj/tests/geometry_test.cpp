#include "fol4/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "doctest.h"

using namespace fol4;

namespace {

Box unit_box() {
    Box b;
    b.lo = {-1, -1, -1, -1};
    b.hi = {1, 1, 1, 1};
    return b;
}

MatrixField flat_metric() {
    return [](const Vec4&) {
        Mat4 g{};
        for (int i = 0; i < 4; ++i) g[i][i] = 1.0;
        return g;
    };
}

// I + 0.1 s s^T with s = (sin x1, cos x2, sin x3, cos x4): smooth and
// uniformly positive-definite.
MatrixField bump_metric() {
    return [](const Vec4& p) {
        const Vec4 s{std::sin(p[0]), std::cos(p[1]), std::sin(p[2]), std::cos(p[3])};
        Mat4 g{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g[i][j] = (i == j ? 1.0 : 0.0) + 0.1 * s[i] * s[j];
        return g;
    };
}

// diag(1, 1, 1, (1 + 0.1 x1)^2), whose only nonzero Christoffel symbols are
// known in closed form.
MatrixField warped_metric() {
    return [](const Vec4& p) {
        Mat4 g{};
        g[0][0] = g[1][1] = g[2][2] = 1.0;
        const double f = 1 + 0.1 * p[0];
        g[3][3] = f * f;
        return g;
    };
}

VectorField linear_field(const Mat4& a, const Vec4& b) {
    return [a, b](const Vec4& p) {
        Vec4 out{};
        for (int i = 0; i < 4; ++i) {
            out[i] = b[i];
            for (int j = 0; j < 4; ++j) out[i] += a[i][j] * p[j];
        }
        return out;
    };
}

VectorField trig_field_a() {
    return [](const Vec4& p) {
        return Vec4{std::sin(p[1]) + p[0], p[0] * p[2], std::cos(p[3]), p[1] - 0.5 * p[3]};
    };
}

VectorField trig_field_b() {
    return [](const Vec4& p) {
        return Vec4{p[2] * p[2], std::cos(p[0]), p[3] + 0.25, std::sin(p[0] + p[1])};
    };
}

ChartField flat_chart() {
    ChartField f;
    f.box = unit_box();
    f.metric = flat_metric();
    f.x = trig_field_a();
    f.z = trig_field_b();
    return f;
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
    double m = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m = std::max(m, std::fabs(a[i][j] - b[i][j]));
    return m;
}

}  // namespace

TEST_CASE("box interiors and metric validation") {
    Box b = unit_box();
    CHECK(b.interior({0, 0, 0, 0}, 0.5));
    CHECK_FALSE(b.interior({0.96, 0, 0, 0}, 0.05));
    CHECK_FALSE(b.interior({-1.5, 0, 0, 0}, 0.0));

    ChartField good = flat_chart();
    good.validate_metric_at({0, 0, 0, 0});

    ChartField indefinite = flat_chart();
    indefinite.metric = [](const Vec4&) {
        Mat4 g{};
        g[0][0] = g[1][1] = g[2][2] = 1.0;
        g[3][3] = -1.0;
        return g;
    };
    CHECK_THROWS_AS(indefinite.validate_metric_at({0, 0, 0, 0}), std::domain_error);

    ChartField skewed = flat_chart();
    skewed.metric = [](const Vec4&) {
        Mat4 g{};
        for (int i = 0; i < 4; ++i) g[i][i] = 1.0;
        g[0][1] = 0.5;  // g[1][0] stays 0
        return g;
    };
    CHECK_THROWS_AS(skewed.validate_metric_at({0, 0, 0, 0}), std::domain_error);
}

TEST_CASE("orthogonal J from a Gram-Schmidt frame") {
    SUBCASE("flat metric gives a constant signed-permutation J") {
        auto chart = flat_chart();
        auto J = orthogonal_j_from_frame(chart, 7);
        const Mat4 j0 = J.at({0, 0, 0, 0});
        const Mat4 j1 = J.at({0.3, -0.2, 0.5, 0.1});
        CHECK(max_abs_diff(j0, j1) < 1e-12);
        CHECK(J.invariant_residual(chart.metric, {0.1, 0.2, 0.3, 0.4}) < 1e-12);
    }

    SUBCASE("the construction is conformally invariant") {
        auto flat = flat_chart();
        auto conformal = flat_chart();
        conformal.metric = [](const Vec4& p) {
            const double scale = std::exp(0.2 * std::sin(p[0] + p[1]));
            Mat4 g{};
            for (int i = 0; i < 4; ++i) g[i][i] = scale;
            return g;
        };
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            auto jf = orthogonal_j_from_frame(flat, seed);
            auto jc = orthogonal_j_from_frame(conformal, seed);
            for (const auto& p : sample_points(unit_box(), 5, 0.1, seed))
                CHECK(max_abs_diff(jf.at(p), jc.at(p)) < 1e-12);
        }
    }

    SUBCASE("perturbed metrics still satisfy the invariants") {
        auto chart = flat_chart();
        chart.metric = bump_metric();
        for (std::uint64_t seed : {11ULL, 12ULL}) {
            auto J = orthogonal_j_from_frame(chart, seed);
            for (const auto& p : sample_points(unit_box(), 20, 0.1, seed + 100))
                CHECK(J.invariant_residual(chart.metric, p) < 1e-9);
        }
    }

    SUBCASE("J preserves inner products pointwise") {
        auto chart = flat_chart();
        chart.metric = bump_metric();
        auto J = orthogonal_j_from_frame(chart, 5);
        auto inner = [&](const Vec4& p, const Vec4& u, const Vec4& v) {
            const Mat4 g = chart.metric(p);
            double s = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s += u[i] * g[i][j] * v[j];
            return s;
        };
        auto apply = [&](const Vec4& p, const Vec4& v) {
            const Mat4 j = J.at(p);
            Vec4 out{};
            for (int i = 0; i < 4; ++i)
                for (int k = 0; k < 4; ++k) out[i] += j[i][k] * v[k];
            return out;
        };
        const Vec4 u{0.3, -1.2, 0.7, 0.2};
        const Vec4 v{1.1, 0.4, -0.6, 0.9};
        for (const auto& p : sample_points(unit_box(), 10, 0.1, 99))
            CHECK(std::fabs(inner(p, apply(p, u), apply(p, v)) - inner(p, u, v)) < 1e-9);
    }

    SUBCASE("degenerate metrics are rejected") {
        auto chart = flat_chart();
        chart.metric = [](const Vec4&) { return Mat4{}; };
        CHECK_THROWS_AS(orthogonal_j_from_frame(chart, 1), std::domain_error);
    }
}

TEST_CASE("finite-difference Christoffel symbols") {
    SUBCASE("flat metric gives identically zero symbols") {
        auto gamma = christoffel(flat_chart(), {0.2, 0.1, -0.3, 0.4}, 1e-3);
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) CHECK(gamma[k][i][j] == 0.0);
    }

    SUBCASE("warped product matches the closed form") {
        auto chart = flat_chart();
        chart.metric = warped_metric();
        const Vec4 p{0.3, 0.0, 0.0, 0.5};
        const double f = 1 + 0.1 * p[0];
        auto gamma = christoffel(chart, p, 1e-3);
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) {
                    double expected = 0;
                    if (k == 3 && ((i == 0 && j == 3) || (i == 3 && j == 0)))
                        expected = 0.1 / f;
                    if (k == 0 && i == 3 && j == 3) expected = -0.1 * f;
                    CHECK(std::fabs(gamma[k][i][j] - expected) < 1e-10);
                }
    }

    SUBCASE("symbols are symmetric in the lower indices") {
        auto chart = flat_chart();
        chart.metric = bump_metric();
        auto gamma = christoffel(chart, {0.1, -0.2, 0.3, 0.0}, 1e-3);
        for (int k = 0; k < 4; ++k)
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) CHECK(gamma[k][i][j] == gamma[k][j][i]);
    }

    SUBCASE("fourth-order differences beat second-order on trig metrics") {
        auto chart = flat_chart();
        chart.metric = [](const Vec4& p) {
            Mat4 g{};
            g[0][0] = 1 + 0.1 * std::sin(p[1]);
            g[1][1] = g[2][2] = g[3][3] = 1.0;
            return g;
        };
        const Vec4 p{0.0, 0.4, 0.0, 0.0};
        const double exact = 0.05 * std::cos(p[1]) / (1 + 0.1 * std::sin(p[1]));
        const double err2 = std::fabs(christoffel(chart, p, 1e-2, 2)[0][0][1] - exact);
        const double err4 = std::fabs(christoffel(chart, p, 1e-2, 4)[0][0][1] - exact);
        CHECK(err2 < 1e-5);
        CHECK(err4 < err2 / 10);
    }

    SUBCASE("boundary proximity and bad orders are rejected") {
        CHECK_THROWS_AS(christoffel(flat_chart(), {0.9999, 0, 0, 0}, 1e-3), std::domain_error);
        CHECK_THROWS_AS(christoffel(flat_chart(), {0, 0, 0, 0}, 1e-3, 3),
                        std::invalid_argument);
        CHECK_THROWS_AS(christoffel(flat_chart(), {0, 0, 0, 0}, -1e-3),
                        std::invalid_argument);
    }
}

TEST_CASE("fundamental-form identity on flat space") {
    SUBCASE("linear fields: both sides vanish to machine precision") {
        auto chart = flat_chart();
        Mat4 a{};
        a[0][1] = 1;
        a[1][2] = -2;
        a[3][0] = 0.5;
        Mat4 b{};
        b[2][3] = 1.5;
        b[0][0] = -1;
        chart.x = linear_field(a, {0.1, 0.2, -0.3, 0.4});
        chart.z = linear_field(b, {1.0, 0.0, 0.5, -0.2});
        auto J = orthogonal_j_from_frame(chart, 3);
        auto rep = verify_domega(chart, J, {0.2, -0.1, 0.3, 0.0}, 1e-3);
        CHECK(std::fabs(rep.lhs) < 1e-12);
        CHECK(std::fabs(rep.rhs) < 1e-12);
        CHECK(rep.residual < 1e-12);
    }

    SUBCASE("smooth fields: both sides vanish within O(h^2)") {
        auto chart = flat_chart();  // trig x, z
        auto J = orthogonal_j_from_frame(chart, 3);
        auto rep = verify_domega(chart, J, {0.2, -0.1, 0.3, 0.0}, 1e-3);
        CHECK(std::fabs(rep.lhs) < 1e-5);
        CHECK(std::fabs(rep.rhs) < 1e-5);
        CHECK(rep.residual < 1e-5);
    }
}

TEST_CASE("fundamental-form identity on curved metrics") {
    auto chart = flat_chart();
    chart.metric = bump_metric();
    auto J = orthogonal_j_from_frame(chart, 17);

    SUBCASE("residual stays small across 100 interior points") {
        double worst = 0;
        for (const auto& p : sample_points(unit_box(), 100, 0.1, 2026)) {
            auto rep = verify_domega(chart, J, p, 1e-3);
            worst = std::max(worst, rep.residual);
            CHECK(std::fabs(rep.lhs) > 0);  // identity is about equality, not vanishing
        }
        CHECK(worst < 1e-4);
    }

    SUBCASE("residual converges at second order under h-halving") {
        const Vec4 p{0.25, -0.3, 0.4, 0.15};
        const double r1 = verify_domega(chart, J, p, 4e-3).residual;
        const double r2 = verify_domega(chart, J, p, 2e-3).residual;
        const double r3 = verify_domega(chart, J, p, 1e-3).residual;
        CHECK(r1 / r2 > 3.5);
        CHECK(r1 / r2 < 4.5);
        CHECK(r2 / r3 > 3.5);
        CHECK(r2 / r3 < 4.5);
    }

    SUBCASE("non-orthogonal J is rejected") {
        OrthogonalJ bogus([](const Vec4&) {
            Mat4 j{};
            j[0][1] = -2;
            j[1][0] = 2;
            j[2][3] = -2;
            j[3][2] = 2;
            return j;
        });
        CHECK_THROWS_AS(verify_domega(chart, bogus, {0, 0, 0, 0}, 1e-3), std::domain_error);
    }

    SUBCASE("boundary proximity is rejected") {
        CHECK_THROWS_AS(verify_domega(chart, J, {0.9999, 0, 0, 0}, 1e-3), std::domain_error);
    }
}

TEST_CASE("computed 3-form is alternating") {
    auto chart = flat_chart();
    chart.metric = bump_metric();
    auto J = orthogonal_j_from_frame(chart, 9);
    auto a = trig_field_a();
    auto b = trig_field_b();
    auto c = linear_field(Mat4{}, {0.5, -1.0, 0.25, 0.75});
    const Vec4 p{0.2, 0.3, -0.25, 0.1};
    const double h = 1e-3;

    const double abc = domega_covariant(chart, J, a, b, c, p, h);
    const double bac = domega_covariant(chart, J, b, a, c, p, h);
    const double acb = domega_covariant(chart, J, a, c, b, p, h);
    const double cba = domega_covariant(chart, J, c, b, a, p, h);
    CHECK(std::fabs(abc + bac) < 1e-9);
    CHECK(std::fabs(abc + acb) < 1e-9);
    CHECK(std::fabs(abc + cba) < 1e-9);
    CHECK(std::fabs(domega_covariant(chart, J, a, a, c, p, h)) < 1e-9);
}

TEST_CASE("tautness audit on product foliations") {
    auto tau1 = [](const Vec4&) { return Vec4{1, 0, 0, 0}; };
    auto tau2 = [](const Vec4&) { return Vec4{0, 1, 0, 0}; };
    auto points = sample_points(unit_box(), 24, 0.1, 4);

    auto with_mu = [&](MatrixField mu) {
        ChartField f = flat_chart();
        f.mu = std::move(mu);
        return f;
    };
    auto two_form = [](double c01) {
        Mat4 m{};
        m[0][1] = c01;
        m[1][0] = -c01;
        return m;
    };

    SUBCASE("constant positive closed form passes everywhere") {
        auto chart = with_mu([&](const Vec4&) { return two_form(1.0); });
        auto rep = rummler_check(chart, tau1, tau2, points, 1e-3, 1e-6);
        CHECK(rep.points == 24);
        CHECK(rep.positivity_pass == 24);
        CHECK(rep.positivity_fail == 0);
        CHECK(rep.closedness_pass == 24);
        CHECK(rep.max_leafwise_dmu < 1e-9);
        CHECK(rep.min_mu == doctest::Approx(1.0));
        CHECK_FALSE(rep.note.empty());
    }

    SUBCASE("x3-weighted form fails leafwise closedness") {
        auto chart = with_mu([&](const Vec4& p) { return two_form(p[2]); });
        auto rep = rummler_check(chart, tau1, tau2, points, 1e-3, 1e-6);
        CHECK(rep.closedness_fail == rep.points);
        CHECK(rep.max_leafwise_dmu == doctest::Approx(1.0).epsilon(1e-6));
        int positive = 0;
        for (const auto& p : points)
            if (p[2] > 0) ++positive;
        CHECK(rep.positivity_pass == positive);
    }

    SUBCASE("negative form fails positivity everywhere") {
        auto chart = with_mu([&](const Vec4&) { return two_form(-1.0); });
        auto rep = rummler_check(chart, tau1, tau2, points, 1e-3, 1e-6);
        CHECK(rep.positivity_fail == rep.points);
        CHECK(rep.closedness_pass == rep.points);
    }

    SUBCASE("degenerate spanning pairs and missing mu are rejected") {
        auto chart = with_mu([&](const Vec4&) { return two_form(1.0); });
        auto parallel = [](const Vec4&) { return Vec4{2, 0, 0, 0}; };
        CHECK_THROWS_AS(rummler_check(chart, tau1, parallel, points, 1e-3, 1e-6),
                        std::domain_error);
        ChartField bare = flat_chart();
        CHECK_THROWS_AS(rummler_check(bare, tau1, tau2, points, 1e-3, 1e-6),
                        std::invalid_argument);
    }
}

TEST_CASE("expression parser") {
    SUBCASE("arithmetic, precedence, functions") {
        const Vec4 p{3, 2, -1, 0.5};
        CHECK(parse_scalar_field("1 + 2*x1")(p) == doctest::Approx(7));
        CHECK(parse_scalar_field("sin(x2)^2 + cos(x2)^2")(p) == doctest::Approx(1));
        CHECK(parse_scalar_field("x1^x2")(p) == doctest::Approx(9));
        CHECK(parse_scalar_field("2^3^2")(p) == doctest::Approx(512));  // right-assoc
        CHECK(parse_scalar_field("-x1^2")(p) == doctest::Approx(-9));
        CHECK(parse_scalar_field("x1^-1")(p) == doctest::Approx(1.0 / 3));
        CHECK(parse_scalar_field("(1 + 0.1*x1)^2")(p) == doctest::Approx(1.69));
        CHECK(parse_scalar_field("exp(log(x1))")(p) == doctest::Approx(3));
        CHECK(parse_scalar_field("sqrt(x1 + 1)")(p) == doctest::Approx(2));
        CHECK(parse_scalar_field("6/2/3")(p) == doctest::Approx(1));  // left-assoc
        CHECK(parse_scalar_field("1 - 2 - 3")(p) == doctest::Approx(-4));
        CHECK(parse_scalar_field("x4*x3")(p) == doctest::Approx(-0.5));
        CHECK(parse_scalar_field("1e-3 + 2.5E2")(p) == doctest::Approx(250.001));
    }

    SUBCASE("malformed input names a position") {
        CHECK_THROWS_AS(parse_scalar_field("x5"), std::invalid_argument);
        CHECK_THROWS_AS(parse_scalar_field("bogus(1)"), std::invalid_argument);
        CHECK_THROWS_AS(parse_scalar_field("sin 3"), std::invalid_argument);
        CHECK_THROWS_AS(parse_scalar_field("(1 + 2"), std::invalid_argument);
        CHECK_THROWS_AS(parse_scalar_field("1 +"), std::invalid_argument);
        CHECK_THROWS_AS(parse_scalar_field("1) "), std::invalid_argument);
        CHECK_THROWS_AS(parse_scalar_field(""), std::invalid_argument);
        CHECK_THROWS_AS(parse_scalar_field("1 2"), std::invalid_argument);
        try {
            parse_scalar_field("1 + @");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find("position 4") != std::string::npos);
        }
    }

    SUBCASE("vector and metric assembly") {
        auto v = parse_vector_field({"x1", "x2 + 1", "0", "-x4"});
        const Vec4 got = v({1, 2, 3, 4});
        CHECK(got[0] == doctest::Approx(1));
        CHECK(got[1] == doctest::Approx(3));
        CHECK(got[2] == doctest::Approx(0));
        CHECK(got[3] == doctest::Approx(-4));

        auto g = parse_metric_field(
            {"1", "0", "0", "0", "1", "0", "0", "1", "0", "(1 + 0.1*x1)^2"});
        const Mat4 m = g({0.3, 0, 0, 0});
        CHECK(m[0][0] == doctest::Approx(1));
        CHECK(m[3][3] == doctest::Approx(1.0609));
        CHECK(m[0][3] == doctest::Approx(0));
        CHECK(m[3][0] == m[0][3]);
    }
}

TEST_CASE("grid-sampled fields") {
    // A multilinear function is reproduced exactly by multilinear
    // interpolation, so interpolation error checks the plumbing only.
    auto f = [](const Vec4& p) {
        return p[0] + 2 * p[1] * p[2] - p[3] + 0.5 * p[0] * p[3];
    };
    GridData grid;
    grid.dims = {6, 5, 4, 3};
    grid.spacing = 0.25;
    grid.values.resize(6u * 5u * 4u * 3u);
    for (std::uint32_t i1 = 0; i1 < 6; ++i1)
        for (std::uint32_t i2 = 0; i2 < 5; ++i2)
            for (std::uint32_t i3 = 0; i3 < 4; ++i3)
                for (std::uint32_t i4 = 0; i4 < 3; ++i4)
                    grid.values[grid.index(i1, i2, i3, i4)] =
                        f({i1 * 0.25, i2 * 0.25, i3 * 0.25, i4 * 0.25});

    SUBCASE("interpolation is exact on multilinear data") {
        auto field = grid_scalar_field(grid);
        Box box = grid_box(grid);
        CHECK(box.hi[0] == doctest::Approx(1.25));
        CHECK(box.hi[3] == doctest::Approx(0.5));
        for (const auto& p : sample_points(box, 25, 0.01, 42))
            CHECK(field(p) == doctest::Approx(f(p)).epsilon(1e-12));
        CHECK(field({0, 0, 0, 0}) == doctest::Approx(f({0, 0, 0, 0})));
        CHECK_THROWS_AS(field({2.0, 0, 0, 0}), std::domain_error);
        CHECK_THROWS_AS(field({-0.5, 0, 0, 0}), std::domain_error);
    }

    SUBCASE("round trip through the binary format") {
        const std::string path = "/tmp/fol4_grid_roundtrip.bin";
        save_grid(path, grid);
        GridData back = load_grid(path);
        CHECK(back.dims == grid.dims);
        CHECK(back.spacing == grid.spacing);
        CHECK(back.values == grid.values);
        std::remove(path.c_str());
    }

    SUBCASE("corrupt files are reported") {
        const std::string path = "/tmp/fol4_grid_corrupt.bin";
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            const std::uint32_t dims[4] = {2, 2, 2, 2};
            out.write(reinterpret_cast<const char*>(dims), sizeof dims);
        }  // header cut short
        CHECK_THROWS_AS(load_grid(path), std::runtime_error);

        save_grid(path, grid);
        {
            std::ofstream out(path, std::ios::binary | std::ios::app);
            out.put('x');
        }
        CHECK_THROWS_AS(load_grid(path), std::runtime_error);
        std::remove(path.c_str());

        CHECK_THROWS_AS(load_grid("/tmp/definitely_missing_fol4_grid.bin"),
                        std::runtime_error);

        GridData bad = grid;
        bad.values.pop_back();
        CHECK_THROWS_AS(save_grid(path, bad), std::invalid_argument);
        GridData zero = grid;
        zero.dims[2] = 0;
        CHECK_THROWS_AS(save_grid(path, zero), std::invalid_argument);
    }
}

TEST_CASE("interior sampling is deterministic and respects margins") {
    Box b = unit_box();
    auto p1 = sample_points(b, 10, 0.25, 7);
    auto p2 = sample_points(b, 10, 0.25, 7);
    auto p3 = sample_points(b, 10, 0.25, 8);
    CHECK(p1 == p2);
    CHECK(p1 != p3);
    for (const auto& p : p1) CHECK(b.interior(p, 0.2499));
    CHECK_THROWS_AS(sample_points(b, 5, 1.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(sample_points(b, -1, 0.1, 0), std::invalid_argument);
}
