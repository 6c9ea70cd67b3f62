// Command-line front end: manifold catalog, existence verdicts, surface
// criteria, singularity degrees, and the numerical identity checks, with
// optional machine-readable JSON reports.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fol4/catalog.hpp"
#include "fol4/geometry.hpp"
#include "fol4/singularity.hpp"
#include "fol4/surface.hpp"

namespace {

using namespace fol4;

int status_code(Status s) {
    switch (s) {
        case Status::Exists: return 0;
        case Status::Obstructed: return 2;
        case Status::Unknown: return 3;
    }
    return 64;
}

void emit(const Json& report, bool json) {
    if (json) std::cout << report.dump(2) << "\n";
}

std::string class_str(const CohClass& c) { return c.str(); }

void print_manifold(const ManifoldInvariants& inv) {
    std::cout << inv.name << ": b1=" << inv.b1 << " rank=" << inv.form.rank()
              << " chi=" << inv.euler_characteristic() << " sigma=" << inv.signature()
              << " p1=" << inv.p1() << "\n";
}

void print_verdict(const Verdict& v) {
    std::cout << "verdict: " << to_string(v.status) << "\n";
    if (v.witness) {
        std::cout << "witness: tau=" << class_str(v.witness->tau)
                  << " nu=" << class_str(v.witness->nu) << " c=" << class_str(v.witness->c)
                  << " m=" << v.witness->m << " n=" << v.witness->n << "\n";
    }
    if (v.plan) {
        std::cout << "plan: " << v.plan->positive.size() << " positive, "
                  << v.plan->negative.size() << " negative singularities\n";
    }
    if (!v.reason.empty()) std::cout << "reason: " << v.reason << "\n";
    if (!v.citation.empty()) std::cout << "criterion: " << v.citation << "\n";
}

constexpr const char* kComplexClassCitation =
    "complex classes are exactly the characteristic elements c with "
    "c^2 = 2*chi + p1; they are the first Chern classes of almost-complex "
    "structures";

// --- subcommand runners -----------------------------------------------------

struct CommonArgs {
    bool json = false;
    std::uint64_t seed = 0;
};

int run_catalog(const CommonArgs& common) {
    Json report = report_skeleton("catalog", common.seed);
    Json entries = Json::array();
    for (const auto& e : catalog()) {
        const auto& inv = e.invariants;
        Json j;
        j["name"] = e.name;
        j["b1"] = inv.b1;
        j["rank"] = inv.form.rank();
        j["chi"] = inv.euler_characteristic();
        j["sigma"] = inv.signature();
        j["p1"] = inv.p1();
        j["parity"] = inv.form.parity() == Parity::Even ? "even" : "odd";
        j["note"] = e.note;
        entries.push_back(j);
        if (!common.json) {
            print_manifold(inv);
            std::cout << "  " << e.note << "\n";
        }
    }
    report["results"]["entries"] = entries;
    emit(report, common.json);
    return 0;
}

int run_classes(const CommonArgs& common, const std::string& manifold, Int bound) {
    const ManifoldInvariants inv = load_manifold(manifold);
    const auto classes = enumerate_complex_classes(inv, bound);

    Json report = report_skeleton("classes", common.seed);
    report["inputs"]["manifold"] = manifold;
    report["inputs"]["manifold_invariants"] = to_json(inv);
    report["inputs"]["bound"] = bound;
    Json arr = Json::array();
    for (const auto& c : classes) arr.push_back(to_json(c));
    report["results"]["classes"] = arr;
    report["results"]["count"] = classes.size();
    report["citations"].push_back(kComplexClassCitation);

    if (!common.json) {
        print_manifold(inv);
        std::cout << "complex classes within bound " << bound << ": " << classes.size()
                  << "\n";
        for (const auto& c : classes) std::cout << "  " << class_str(c) << "\n";
    }
    emit(report, common.json);
    return classes.empty() ? 2 : 0;
}

int run_splittings(const CommonArgs& common, const std::string& manifold,
                   const std::string& c_text, Int bound) {
    const ManifoldInvariants inv = load_manifold(manifold);
    const CohClass c = parse_class(c_text, inv.form.rank());
    const auto splittings = find_splittings(inv, c, bound);
    const auto witness = infinite_splittings_witness(inv, c);

    Json report = report_skeleton("splittings", common.seed);
    report["inputs"]["manifold"] = manifold;
    report["inputs"]["manifold_invariants"] = to_json(inv);
    report["inputs"]["c"] = c_text;
    report["inputs"]["bound"] = bound;
    Json arr = Json::array();
    for (const auto& s : splittings) arr.push_back(to_json(s));
    report["results"]["splittings"] = arr;
    report["results"]["count"] = splittings.size();
    if (witness) {
        Json w;
        w["alpha"] = to_json(witness->alpha);
        w["k0"] = witness->k0;
        report["results"]["infinite_witness"] = w;
    } else {
        report["results"]["infinite_witness"] = nullptr;
    }
    report["citations"].push_back(kComplexClassCitation);

    if (!common.json) {
        print_manifold(inv);
        std::cout << "admissible splittings of c=" << class_str(c) << " within bound "
                  << bound << ": " << splittings.size() << "\n";
        for (const auto& s : splittings)
            std::cout << "  tau=" << class_str(s.tau) << " nu=" << class_str(s.nu)
                      << " m=" << s.m << " n=" << s.n << "\n";
        if (witness)
            std::cout << "infinitely many admissible splittings: alpha="
                      << class_str(witness->alpha) << ", valid for k >= " << witness->k0
                      << "\n";
        else
            std::cout << "no infinitude witness (b2+ = 0)\n";
    }
    emit(report, common.json);
    return splittings.empty() ? 2 : 0;
}

int run_exists(const CommonArgs& common, const std::string& manifold, const std::string& tau,
               const std::string& nu, const std::string& models) {
    const ManifoldInvariants inv = load_manifold(manifold);
    const int rank = inv.form.rank();
    const CohClass t = parse_class(tau, rank), n = parse_class(nu, rank);
    std::optional<std::vector<SingularityModel>> plan;
    if (!models.empty()) plan = parse_models(models);
    const Verdict v = foliation_exists(inv, t, n, plan);

    Json report = report_skeleton("exists", common.seed);
    report["inputs"]["manifold"] = manifold;
    report["inputs"]["manifold_invariants"] = to_json(inv);
    report["inputs"]["tau"] = tau;
    report["inputs"]["nu"] = nu;
    report["inputs"]["models"] = models;
    report["results"]["verdict"] = to_json(v);
    if (!v.citation.empty()) report["citations"].push_back(v.citation);

    if (!common.json) {
        print_manifold(inv);
        print_verdict(v);
    }
    emit(report, common.json);
    return status_code(v.status);
}

int run_achiral(const CommonArgs& common, const std::string& manifold, const std::string& tau,
                const std::string& nu, const std::string& positive,
                const std::string& negative) {
    const ManifoldInvariants inv = load_manifold(manifold);
    const int rank = inv.form.rank();
    const CohClass t = parse_class(tau, rank), n = parse_class(nu, rank);
    std::optional<std::vector<SingularityModel>> pos, neg;
    if (!positive.empty()) pos = parse_models(positive);
    if (!negative.empty()) {
        auto list = parse_models(negative);
        for (auto& m : list) m = m.with_sign(SingularityModel::Sign::Negative);
        neg = std::move(list);
    }
    const Verdict v = achiral_exists(inv, t, n, pos, neg);

    Json report = report_skeleton("achiral", common.seed);
    report["inputs"]["manifold"] = manifold;
    report["inputs"]["manifold_invariants"] = to_json(inv);
    report["inputs"]["tau"] = tau;
    report["inputs"]["nu"] = nu;
    report["inputs"]["positive"] = positive;
    report["inputs"]["negative"] = negative;
    report["results"]["verdict"] = to_json(v);
    if (!v.citation.empty()) report["citations"].push_back(v.citation);

    if (!common.json) {
        print_manifold(inv);
        print_verdict(v);
    }
    emit(report, common.json);
    return status_code(v.status);
}

int run_surface(const CommonArgs& common, const char* command, const std::string& manifold,
                const std::string& tau, const std::string& nu, const std::string& cls,
                Int genus) {
    const ManifoldInvariants inv = load_manifold(manifold);
    const int rank = inv.form.rank();
    const CohClass t = parse_class(tau, rank), n = parse_class(nu, rank);
    const SurfaceData S{parse_class(cls, rank), genus, true};
    const Splitting sp{t, n, t + n, 0, 0};
    const Verdict v = std::string(command) == "leaf" ? leaf_check(inv, sp, S)
                                                     : transversal_check(inv, sp, S);

    Json report = report_skeleton(command, common.seed);
    report["inputs"]["manifold"] = manifold;
    report["inputs"]["manifold_invariants"] = to_json(inv);
    report["inputs"]["tau"] = tau;
    report["inputs"]["nu"] = nu;
    report["inputs"]["class"] = cls;
    report["inputs"]["genus"] = genus;
    report["results"]["verdict"] = to_json(v);
    report["results"]["surface_square"] = inv.form.square(S.cls);
    report["results"]["surface_chi"] = S.chi();
    if (!v.citation.empty()) report["citations"].push_back(v.citation);

    if (!common.json) {
        print_manifold(inv);
        std::cout << "surface: class=" << class_str(S.cls) << " genus=" << genus
                  << " chi=" << S.chi() << " self-intersection=" << inv.form.square(S.cls)
                  << "\n";
        print_verdict(v);
    }
    emit(report, common.json);
    return status_code(v.status);
}

int run_adjunct(const CommonArgs& common, const std::string& manifold, const std::string& c_text,
                const std::string& cls, Int genus) {
    const ManifoldInvariants inv = load_manifold(manifold);
    const int rank = inv.form.rank();
    const CohClass c = parse_class(c_text, rank);
    const SurfaceData S{parse_class(cls, rank), genus, true};
    const bool representable = jhol_representable(inv, c, S);
    const auto [transversal, leaf] = adjunct_surfaces(inv, c, S);

    Json report = report_skeleton("adjunct", common.seed);
    report["inputs"]["manifold"] = manifold;
    report["inputs"]["manifold_invariants"] = to_json(inv);
    report["inputs"]["c"] = c_text;
    report["inputs"]["class"] = cls;
    report["inputs"]["genus"] = genus;
    report["results"]["adjunction_holds"] = representable;
    report["results"]["transversal"] = to_json(transversal);
    report["results"]["leaf"] = to_json(leaf);
    if (!transversal.citation.empty()) report["citations"].push_back(transversal.citation);
    if (!leaf.citation.empty() && leaf.citation != transversal.citation)
        report["citations"].push_back(leaf.citation);

    if (!common.json) {
        print_manifold(inv);
        std::cout << "adjunction equality chi(S) + S*S = c*S "
                  << (representable ? "holds" : "fails") << "\n";
        std::cout << "-- surface as closed transversal --\n";
        print_verdict(transversal);
        std::cout << "-- surface as leaf --\n";
        print_verdict(leaf);
    }
    emit(report, common.json);
    if (transversal.status == Status::Exists && leaf.status == Status::Exists) return 0;
    return 3;
}

int run_degree(const CommonArgs& common, const std::string& poly_text, bool use_oracle,
               double radius, int trials) {
    const BivarPoly f = BivarPoly::parse(poly_text);
    const Int degree = hopf_degree(f);

    Json report = report_skeleton("degree", common.seed);
    report["inputs"]["polynomial"] = poly_text;
    report["inputs"]["oracle"] = use_oracle;
    report["results"]["degree"] = degree;
    report["citations"].push_back(
        "the degree of an isolated singularity is the local intersection "
        "multiplicity at the origin of the reduced kernel field of Df");

    bool agree = true;
    if (use_oracle) {
        report["inputs"]["radius"] = radius;
        report["inputs"]["trials"] = trials;
        const Int counted = hopf_degree_oracle(f, radius, trials);
        agree = counted == degree;
        report["results"]["oracle_count"] = counted;
        report["results"]["agree"] = agree;
    }

    if (!common.json) {
        std::cout << "degree " << degree << "\n";
        if (use_oracle)
            std::cout << "oracle count " << report["results"]["oracle_count"].get<Int>()
                      << (agree ? " (agrees)" : " (DISAGREES)") << "\n";
    }
    emit(report, common.json);
    return agree ? 0 : 2;
}

int run_ledger(const CommonArgs& common, const std::string& manifold, const std::string& tau,
               const std::string& nu, const std::string& models, const std::string& negative) {
    const ManifoldInvariants inv = load_manifold(manifold);
    const int rank = inv.form.rank();
    FoliationPlan plan{parse_class(tau, rank), parse_class(nu, rank), parse_models(models), {}};
    for (auto& m : parse_models(negative))
        plan.negative.push_back(m.with_sign(SingularityModel::Sign::Negative));
    const bool balanced = ledger_check(inv, plan);

    Json report = report_skeleton("ledger", common.seed);
    report["inputs"]["manifold"] = manifold;
    report["inputs"]["manifold_invariants"] = to_json(inv);
    report["inputs"]["tau"] = tau;
    report["inputs"]["nu"] = nu;
    report["inputs"]["models"] = models;
    report["inputs"]["negative"] = negative;
    report["results"]["balanced"] = balanced;
    report["results"]["plan"] = to_json(plan);
    report["citations"].push_back(
        "a singular foliation satisfies chi(M) = sum of singularity degrees "
        "+ tau*nu, counting degrees of both signs");

    if (!common.json) {
        print_manifold(inv);
        std::cout << "ledger " << (balanced ? "balances" : "does not balance") << ": chi="
                  << inv.euler_characteristic() << "\n";
    }
    emit(report, common.json);
    return balanced ? 0 : 2;
}

int run_genus_bound(const CommonArgs& common, const std::string& manifold,
                    const std::string& epsilon, const std::string& a_text) {
    const ManifoldInvariants inv = load_manifold(manifold);
    const int rank = inv.form.rank();
    const CohClass eps = parse_class(epsilon, rank), a = parse_class(a_text, rank);
    const GenusBound bound = kronheimer_bound(inv, eps, a);

    Json report = report_skeleton("genus-bound", common.seed);
    report["inputs"]["manifold"] = manifold;
    report["inputs"]["manifold_invariants"] = to_json(inv);
    report["inputs"]["epsilon"] = epsilon;
    report["inputs"]["a"] = a_text;
    report["results"]["g_min"] = bound.g_min;
    report["results"]["caveat"] = bound.caveat;
    report["results"]["note"] = bound.note;

    if (!common.json) {
        print_manifold(inv);
        std::cout << "minimum genus of an embedded surface in class " << class_str(a)
                  << ": g >= " << bound.g_min << "\n";
        if (!bound.caveat.empty()) std::cout << "caveat: " << bound.caveat << "\n";
        std::cout << "note: " << bound.note << "\n";
    }
    emit(report, common.json);
    return 0;
}

struct DomegaArgs {
    double h = 1e-3;
    int points = 100;
    int order = 2;
    double tol = 1e-4;
    std::vector<std::string> metric;
    std::vector<std::string> metric_grids;
    std::vector<std::string> x_field;
    std::vector<std::string> z_field;
    std::vector<double> box_lo{-1, -1, -1, -1};
    std::vector<double> box_hi{1, 1, 1, 1};
};

int run_verify_domega(const CommonArgs& common, const DomegaArgs& args) {
    ChartField chart;
    for (int i = 0; i < 4; ++i) {
        chart.box.lo[i] = args.box_lo[i];
        chart.box.hi[i] = args.box_hi[i];
    }

    std::array<std::string, 10> metric_exprs = {
        "1", "0", "0", "0", "1", "0", "0", "1", "0", "(1 + 0.1*x1)^2"};
    if (!args.metric.empty()) {
        if (args.metric.size() != 10)
            throw std::invalid_argument("--metric needs 10 upper-triangle expressions");
        for (int i = 0; i < 10; ++i) metric_exprs[i] = args.metric[i];
    }

    if (!args.metric_grids.empty()) {
        if (args.metric_grids.size() != 10)
            throw std::invalid_argument("--metric-grids needs 10 grid files");
        std::array<ScalarField, 10> cells;
        for (int i = 0; i < 10; ++i) {
            GridData grid = load_grid(args.metric_grids[i]);
            if (i == 0) chart.box = grid_box(grid);
            cells[i] = grid_scalar_field(std::move(grid));
        }
        chart.metric = [cells](const Vec4& p) {
            Mat4 g{};
            int idx = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i; j < 4; ++j) {
                    g[i][j] = cells[idx](p);
                    g[j][i] = g[i][j];
                    ++idx;
                }
            return g;
        };
    } else {
        chart.metric = parse_metric_field(metric_exprs);
    }

    std::array<std::string, 4> x_exprs = {"sin(x2)", "x1*x3", "cos(x4)", "x2 - 0.5*x4"};
    std::array<std::string, 4> z_exprs = {"x3*x3", "cos(x1)", "x4 + 0.25", "sin(x1 + x2)"};
    if (!args.x_field.empty()) {
        if (args.x_field.size() != 4)
            throw std::invalid_argument("--x needs 4 component expressions");
        for (int i = 0; i < 4; ++i) x_exprs[i] = args.x_field[i];
    }
    if (!args.z_field.empty()) {
        if (args.z_field.size() != 4)
            throw std::invalid_argument("--z needs 4 component expressions");
        for (int i = 0; i < 4; ++i) z_exprs[i] = args.z_field[i];
    }
    chart.x = parse_vector_field(x_exprs);
    chart.z = parse_vector_field(z_exprs);

    const OrthogonalJ J = orthogonal_j_from_frame(chart, common.seed);
    const double margin = std::max(0.05, 4 * args.h);
    const auto points = sample_points(chart.box, args.points, margin, common.seed);

    double max_residual = 0;
    double max_lhs = 0;
    for (const auto& p : points) {
        const DomegaReport rep = verify_domega(chart, J, p, args.h, args.order);
        max_residual = std::max(max_residual, rep.residual);
        max_lhs = std::max(max_lhs, std::fabs(rep.lhs));
    }
    const bool pass = max_residual <= args.tol;

    Json report = report_skeleton("verify-domega", common.seed);
    report["inputs"]["h"] = args.h;
    report["inputs"]["points"] = args.points;
    report["inputs"]["order"] = args.order;
    report["inputs"]["tolerance"] = args.tol;
    report["inputs"]["metric"] = metric_exprs;
    report["inputs"]["metric_grids"] = args.metric_grids;
    report["inputs"]["x"] = x_exprs;
    report["inputs"]["z"] = z_exprs;
    report["inputs"]["box_lo"] = args.box_lo;
    report["inputs"]["box_hi"] = args.box_hi;
    report["results"]["max_residual"] = max_residual;
    report["results"]["max_lhs"] = max_lhs;
    report["results"]["pass"] = pass;
    report["citations"].push_back(
        "domega(x, Jx, z) = <[x,Jx], Jz> - <grad_x x + grad_Jx Jx, z> for any "
        "g-orthogonal almost-complex structure J");

    if (!common.json) {
        std::cout << "identity residual over " << points.size() << " interior points (h="
                  << args.h << ", order " << args.order << "): max " << max_residual << "\n"
                  << (pass ? "PASS" : "FAIL") << " (tolerance " << args.tol << ")\n";
    }
    emit(report, common.json);
    return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "existence and obstruction of singular 2-dimensional foliations on "
        "closed oriented 4-manifolds, from algebraic invariants"};
    // The identity checker takes a literal `--h` for the difference step, so
    // help is exposed as `--help` only.
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);

    CommonArgs common;
    app.add_flag("--json", common.json, "emit a machine-readable JSON report");
    app.add_option("--seed", common.seed, "seed for randomized paths")->capture_default_str();

    std::string manifold, tau = "0", nu = "0", c_text = "0", cls = "0";
    std::string models, negative_models, poly_text, epsilon = "0", a_text = "0";
    Int bound = 5, genus = 0;
    bool use_oracle = false;
    double oracle_radius = 0.5;
    int oracle_trials = 9;
    DomegaArgs domega;

    auto* cat = app.add_subcommand("catalog", "list the built-in manifolds");

    auto* classes =
        app.add_subcommand("classes", "enumerate complex classes within a coordinate bound");
    classes->add_option("manifold", manifold, "catalog name or JSON file")->required();
    classes->add_option("--bound", bound, "coordinate bound")->capture_default_str();

    auto* splittings = app.add_subcommand(
        "splittings", "admissible splittings c = tau + nu of a complex class");
    splittings->add_option("manifold", manifold, "catalog name or JSON file")->required();
    splittings->add_option("--c", c_text, "complex class, comma-separated")->required();
    splittings->add_option("--bound", bound, "coordinate bound on tau")->capture_default_str();

    auto* exists = app.add_subcommand(
        "exists", "existence of a singular foliation with splitting (tau, nu)");
    exists->add_option("manifold", manifold, "catalog name or JSON file")->required();
    exists->add_option("--tau", tau, "tangent class, comma-separated")->required();
    exists->add_option("--nu", nu, "normal class, comma-separated")->required();
    exists->add_option("--models", models,
                       "prescribed positive singularities, e.g. pencil,cusp,power:2x3");

    auto* achiral = app.add_subcommand(
        "achiral", "existence of an achiral singular foliation with splitting (tau, nu)");
    achiral->add_option("manifold", manifold, "catalog name or JSON file")->required();
    achiral->add_option("--tau", tau, "tangent class, comma-separated")->required();
    achiral->add_option("--nu", nu, "normal class, comma-separated")->required();
    achiral->add_option("--positive", models, "prescribed positive singularities");
    achiral->add_option("--negative", negative_models, "prescribed negative singularities");

    auto* leaf = app.add_subcommand("leaf", "can the surface be a leaf of the foliation");
    auto* transversal = app.add_subcommand(
        "transversal", "can the surface be a closed transversal of the foliation");
    for (auto* sub : {leaf, transversal}) {
        sub->add_option("manifold", manifold, "catalog name or JSON file")->required();
        sub->add_option("--tau", tau, "tangent class, comma-separated")->required();
        sub->add_option("--nu", nu, "normal class, comma-separated")->required();
        sub->add_option("--class", cls, "surface class, comma-separated")->required();
        sub->add_option("--genus", genus, "surface genus")->capture_default_str();
    }

    auto* adjunct = app.add_subcommand(
        "adjunct", "the two foliations adjunct to a surface satisfying adjunction");
    adjunct->add_option("manifold", manifold, "catalog name or JSON file")->required();
    adjunct->add_option("--c", c_text, "complex class, comma-separated")->required();
    adjunct->add_option("--class", cls, "surface class, comma-separated")->required();
    adjunct->add_option("--genus", genus, "surface genus")->capture_default_str();

    auto* degree =
        app.add_subcommand("degree", "degree of an isolated foliation singularity");
    degree->add_option("polynomial", poly_text, "level polynomial, e.g. \"z1^3 - z2^2\"")
        ->required();
    degree->add_flag("--oracle", use_oracle, "cross-check by perturbed root counting");
    degree->add_option("--radius", oracle_radius, "oracle polydisc radius")
        ->capture_default_str();
    degree->add_option("--trials", oracle_trials, "oracle trials")->capture_default_str();

    auto* ledger = app.add_subcommand(
        "ledger", "audit chi(M) = sum of degrees + tau*nu for a singularity plan");
    ledger->add_option("manifold", manifold, "catalog name or JSON file")->required();
    ledger->add_option("--tau", tau, "tangent class, comma-separated")->required();
    ledger->add_option("--nu", nu, "normal class, comma-separated")->required();
    ledger->add_option("--models", models, "positive singularities")->required();
    ledger->add_option("--negative", negative_models, "negative singularities");

    auto* genus_bound = app.add_subcommand(
        "genus-bound", "minimum-genus lower bound from the adjunction-type inequality");
    genus_bound->add_option("manifold", manifold, "catalog name or JSON file")->required();
    genus_bound->add_option("--epsilon", epsilon, "reference class, comma-separated")
        ->required();
    genus_bound->add_option("--a", a_text, "surface class, comma-separated")->required();

    auto* domega_cmd = app.add_subcommand(
        "verify-domega", "numerically verify the fundamental-form identity on a chart");
    domega_cmd->add_option("--h", domega.h, "difference step")->capture_default_str();
    domega_cmd->add_option("--points", domega.points, "number of sample points")
        ->capture_default_str();
    domega_cmd->add_option("--order", domega.order, "difference order (2 or 4)")
        ->capture_default_str();
    domega_cmd->add_option("--tol", domega.tol, "max residual accepted")
        ->capture_default_str();
    domega_cmd->add_option("--metric", domega.metric,
                           "10 upper-triangle expressions g11,g12,...,g44")
        ->delimiter(',');
    domega_cmd->add_option("--metric-grids", domega.metric_grids,
                           "10 binary grid files for the upper triangle")
        ->delimiter(',');
    domega_cmd->add_option("--x", domega.x_field, "4 component expressions")->delimiter(',');
    domega_cmd->add_option("--z", domega.z_field, "4 component expressions")->delimiter(',');
    domega_cmd->add_option("--box-lo", domega.box_lo, "lower chart corner")
        ->delimiter(',')
        ->expected(4);
    domega_cmd->add_option("--box-hi", domega.box_hi, "upper chart corner")
        ->delimiter(',')
        ->expected(4);

    // Let --json/--seed appear after the subcommand name.
    for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; }))
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    try {
        if (cat->parsed()) return run_catalog(common);
        if (classes->parsed()) return run_classes(common, manifold, bound);
        if (splittings->parsed()) return run_splittings(common, manifold, c_text, bound);
        if (exists->parsed()) return run_exists(common, manifold, tau, nu, models);
        if (achiral->parsed())
            return run_achiral(common, manifold, tau, nu, models, negative_models);
        if (leaf->parsed())
            return run_surface(common, "leaf", manifold, tau, nu, cls, genus);
        if (transversal->parsed())
            return run_surface(common, "transversal", manifold, tau, nu, cls, genus);
        if (adjunct->parsed()) return run_adjunct(common, manifold, c_text, cls, genus);
        if (degree->parsed())
            return run_degree(common, poly_text, use_oracle, oracle_radius, oracle_trials);
        if (ledger->parsed())
            return run_ledger(common, manifold, tau, nu, models, negative_models);
        if (genus_bound->parsed()) return run_genus_bound(common, manifold, epsilon, a_text);
        if (domega_cmd->parsed()) return run_verify_domega(common, domega);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 64;
    }
    std::cerr << "error: no subcommand\n";
    return 64;
}
