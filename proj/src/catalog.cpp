#include "fol4/catalog.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fol4 {

namespace {

using Entries = std::vector<std::vector<Int>>;

IntersectionForm hyperbolic() { return IntersectionForm(Entries{{0, 1}, {1, 0}}); }

IntersectionForm minus_e8() {
    Entries e(8, std::vector<Int>(8, 0));
    for (int i = 0; i < 8; ++i) e[i][i] = -2;
    auto bond = [&](int a, int b) { e[a][b] = e[b][a] = 1; };
    bond(0, 2);
    bond(1, 3);
    bond(2, 3);
    bond(3, 4);
    bond(4, 5);
    bond(5, 6);
    bond(6, 7);
    return IntersectionForm(e);
}

IntersectionForm k3_form() {
    IntersectionForm h = hyperbolic();
    return minus_e8().direct_sum(minus_e8()).direct_sum(h).direct_sum(h).direct_sum(h);
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

ManifoldInvariants base_manifold(const std::string& token) {
    if (token == "S4") return {"S4", 0, IntersectionForm::zero_rank()};
    if (token == "CP2") return {"CP2", 0, IntersectionForm(Entries{{1}})};
    if (token == "CP2bar") return {"CP2bar", 0, IntersectionForm(Entries{{-1}})};
    if (token == "S2xS2") return {"S2xS2", 0, hyperbolic()};
    if (token == "K3") return {"K3", 0, k3_form()};
    if (token == "S3xS1") return {"S3xS1", 1, IntersectionForm::zero_rank()};
    // kS3xS1 with a leading multiplicity, e.g. "3S3xS1".
    std::size_t digits = 0;
    while (digits < token.size() && std::isdigit(static_cast<unsigned char>(token[digits])))
        ++digits;
    if (digits > 0 && digits <= 6 && token.substr(digits) == "S3xS1") {
        const int k = std::stoi(token.substr(0, digits));
        if (k >= 1) return {token, k, IntersectionForm::zero_rank()};
    }
    throw std::invalid_argument("unknown catalog manifold: '" + token + "'");
}

Int parse_int(const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    Int value = 0;
    try {
        value = std::stoll(t, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed integer: '" + text + "'");
    }
    if (used != t.size()) throw std::invalid_argument("malformed integer: '" + text + "'");
    return value;
}

std::pair<int, int> parse_pq(const std::string& text) {
    const auto parts = split(text, 'x');
    if (parts.size() != 2)
        throw std::invalid_argument("expected PxQ exponents, got '" + text + "'");
    const Int p = parse_int(parts[0]);
    const Int q = parse_int(parts[1]);
    if (p < 1 || q < 1 || p > 16 || q > 16)
        throw std::invalid_argument("model exponents must lie in 1..16");
    return {static_cast<int>(p), static_cast<int>(q)};
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = [] {
        std::vector<CatalogEntry> out;
        out.push_back({"S4", base_manifold("S4"), "the 4-sphere; no second cohomology"});
        out.push_back({"CP2", base_manifold("CP2"), "complex projective plane"});
        out.push_back({"CP2bar", base_manifold("CP2bar"),
                       "projective plane with reversed orientation"});
        out.push_back({"S2xS2", base_manifold("S2xS2"), "product of two spheres"});
        out.push_back({"K3", base_manifold("K3"),
                       "quartic surface; even indefinite form of rank 22"});
        out.push_back({"S3xS1", base_manifold("S3xS1"),
                       "product of a 3-sphere and a circle; b1 = 1, no 2-cohomology"});

        // Load-time self-test: the computed invariants must match values
        // recorded independently of the form constructions above.
        struct Expected {
            const char* name;
            Int chi, sigma, p1;
        };
        const Expected table[] = {{"S4", 2, 0, 0},      {"CP2", 3, 1, 3},
                                  {"CP2bar", 3, -1, -3}, {"S2xS2", 4, 0, 0},
                                  {"K3", 24, -16, -48},  {"S3xS1", 0, 0, 0}};
        for (std::size_t i = 0; i < out.size(); ++i) {
            const auto& inv = out[i].invariants;
            const auto& want = table[i];
            if (out[i].name != want.name || inv.euler_characteristic() != want.chi ||
                inv.signature() != want.sigma || inv.p1() != want.p1)
                throw std::logic_error(std::string("catalog self-test failed for ") +
                                       out[i].name);
        }
        return out;
    }();
    return entries;
}

ManifoldInvariants catalog_lookup(const std::string& name) {
    const auto tokens = split(trim(name), '#');
    if (tokens.empty()) throw std::invalid_argument("empty manifold name");
    ManifoldInvariants acc = base_manifold(trim(tokens[0]));
    for (std::size_t i = 1; i < tokens.size(); ++i)
        acc = acc.connected_sum(base_manifold(trim(tokens[i])));
    return acc;
}

ManifoldInvariants manifold_from_json(const Json& doc) {
    if (!doc.is_object()) throw std::invalid_argument("manifold document must be an object");
    if (!doc.contains("name") || !doc["name"].is_string())
        throw std::invalid_argument("manifold document needs a string \"name\"");
    if (!doc.contains("b1") || !doc["b1"].is_number_integer())
        throw std::invalid_argument("manifold document needs an integer \"b1\"");
    if (!doc.contains("Q") || !doc["Q"].is_array())
        throw std::invalid_argument("manifold document needs a matrix \"Q\"");

    const int b1 = doc["b1"].get<int>();
    if (b1 < 0) throw std::invalid_argument("b1 must be nonnegative");

    Entries q;
    for (const auto& row : doc["Q"]) {
        if (!row.is_array()) throw std::invalid_argument("\"Q\" must be a matrix of integers");
        std::vector<Int> r;
        for (const auto& cell : row) {
            if (!cell.is_number_integer())
                throw std::invalid_argument("\"Q\" must be a matrix of integers");
            r.push_back(cell.get<Int>());
        }
        q.push_back(std::move(r));
    }
    IntersectionForm form = q.empty() ? IntersectionForm::zero_rank() : IntersectionForm(q);
    return {doc["name"].get<std::string>(), b1, form};
}

ManifoldInvariants load_manifold(const std::string& name_or_path) {
    try {
        return catalog_lookup(name_or_path);
    } catch (const std::invalid_argument&) {
        // fall through to the file route
    }
    std::ifstream in(name_or_path);
    if (!in)
        throw std::invalid_argument("'" + name_or_path +
                                    "' is neither a catalog manifold nor a readable file");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument("failed to parse manifold file '" + name_or_path +
                                    "': " + e.what());
    }
    return manifold_from_json(doc);
}

CohClass parse_class(const std::string& text, int rank) {
    const std::string t = trim(text);
    if (t == "0") return CohClass::zero(rank);
    const auto parts = split(t, ',');
    std::vector<Int> coords;
    coords.reserve(parts.size());
    for (const auto& p : parts) coords.push_back(parse_int(p));
    if (static_cast<int>(coords.size()) != rank) {
        std::ostringstream os;
        os << "class '" << text << "' has " << coords.size()
           << " coordinates but the intersection form has rank " << rank;
        throw std::invalid_argument(os.str());
    }
    return CohClass(coords);
}

SingularityModel parse_model(const std::string& text) {
    const std::string t = trim(text);
    const auto colon = t.find(':');
    const std::string head = colon == std::string::npos ? t : t.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : t.substr(colon + 1);

    if (head == "pencil" && args.empty()) return SingularityModel::pencil();
    if (head == "quadratic" && args.empty()) return SingularityModel::quadratic();
    if (head == "cusp" && args.empty()) return SingularityModel::cusp();
    if (head == "crossing") {
        if (args.empty()) return SingularityModel::normal_crossing();
        const auto [p, q] = parse_pq(args);
        return SingularityModel::normal_crossing(p, q);
    }
    if (head == "power") {
        if (args.empty())
            throw std::invalid_argument("power model needs exponents, e.g. power:2x3");
        const auto [p, q] = parse_pq(args);
        return SingularityModel::power(p, q);
    }
    if (head == "deg") {
        if (args.empty()) throw std::invalid_argument("deg model needs a value, e.g. deg:4");
        return SingularityModel::explicit_degree(parse_int(args));
    }
    throw std::invalid_argument(
        "unknown singularity model '" + t +
        "' (expected pencil, quadratic, cusp, crossing[:PxQ], power:PxQ, or deg:N)");
}

std::vector<SingularityModel> parse_models(const std::string& comma_list) {
    std::vector<SingularityModel> out;
    const std::string t = trim(comma_list);
    if (t.empty()) return out;
    for (const auto& item : split(t, ',')) out.push_back(parse_model(item));
    return out;
}

Json report_skeleton(const std::string& command, std::uint64_t seed) {
    Json report;
    report["schema"] = 1;
    report["version"] = kToolVersion;
    report["command"] = command;
    report["seed"] = seed;
    report["inputs"] = Json::object();
    report["results"] = Json::object();
    report["citations"] = Json::array();
    return report;
}

Json to_json(const CohClass& c) {
    Json arr = Json::array();
    for (Int v : c.coords()) arr.push_back(v);
    return arr;
}

Json to_json(const Splitting& s) {
    Json out;
    out["tau"] = to_json(s.tau);
    out["nu"] = to_json(s.nu);
    out["c"] = to_json(s.c);
    out["m"] = s.m;
    out["n"] = s.n;
    return out;
}

Json to_json(const SingularityModel& m) {
    Json out;
    out["label"] = m.label();
    out["sign"] = m.positive() ? "+" : "-";
    out["degree"] = m.degree();
    if (m.polynomial()) out["polynomial"] = m.polynomial()->str();
    return out;
}

Json to_json(const FoliationPlan& p) {
    Json out;
    out["tau"] = to_json(p.tau);
    out["nu"] = to_json(p.nu);
    out["positive"] = Json::array();
    for (const auto& m : p.positive) out["positive"].push_back(to_json(m));
    out["negative"] = Json::array();
    for (const auto& m : p.negative) out["negative"].push_back(to_json(m));
    return out;
}

Json to_json(const Verdict& v) {
    Json out;
    out["status"] = to_string(v.status);
    if (v.witness) out["witness"] = to_json(*v.witness);
    if (v.plan) out["plan"] = to_json(*v.plan);
    out["reason"] = v.reason;
    out["citation"] = v.citation;
    return out;
}

Json to_json(const ManifoldInvariants& inv) {
    Json out;
    out["name"] = inv.name;
    out["b1"] = inv.b1;
    Json q = Json::array();
    for (int i = 0; i < inv.form.rank(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < inv.form.rank(); ++j) row.push_back(inv.form.entry(i, j));
        q.push_back(row);
    }
    out["Q"] = q;
    out["chi"] = inv.euler_characteristic();
    out["sigma"] = inv.signature();
    out["p1"] = inv.p1();
    return out;
}

}  // namespace fol4
