#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "fol4/existence.hpp"
#include "fol4/surface.hpp"

namespace fol4 {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// A named manifold with independently recorded invariants.
struct CatalogEntry {
    std::string name;
    ManifoldInvariants invariants;
    std::string note;
};

// The built-in manifolds: S4, CP2, CP2bar, S2xS2, K3, S3xS1. Validated at
// load time by the IntersectionForm constructor.
const std::vector<CatalogEntry>& catalog();

// Resolves catalog grammar: a base name, the kS3xS1 family ("3S3xS1"), and
// connected sums joined with '#'. Throws std::invalid_argument on unknown
// names.
ManifoldInvariants catalog_lookup(const std::string& name);

// Manifold description document: {"name": string, "b1": int, "Q": [[int]]}.
ManifoldInvariants manifold_from_json(const Json& doc);

// Catalog name (tried first) or path to a JSON description file.
ManifoldInvariants load_manifold(const std::string& name_or_path);

// Parses "a1,a2,...,ak" into a class of the given rank; the single token "0"
// is shorthand for the zero class of any rank.
CohClass parse_class(const std::string& text, int rank);

// Parses one singularity model: pencil | quadratic | cusp | crossing[:PxQ] |
// power:PxQ | deg:N.
SingularityModel parse_model(const std::string& text);
std::vector<SingularityModel> parse_models(const std::string& comma_list);

// --- JSON report assembly ---------------------------------------------------
//
// Reports carry {"schema": 1, "version", "command", "seed", "inputs",
// "results", "citations"} in that order; identical inputs and seed produce
// byte-identical documents.
Json report_skeleton(const std::string& command, std::uint64_t seed);

Json to_json(const CohClass& c);
Json to_json(const Splitting& s);
Json to_json(const SingularityModel& m);
Json to_json(const FoliationPlan& p);
Json to_json(const Verdict& v);
Json to_json(const ManifoldInvariants& inv);

}  // namespace fol4
