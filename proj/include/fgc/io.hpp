#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "fgc/morphisms.hpp"
#include "fgc/subclasses.hpp"

namespace fgc {

using Json = nlohmann::ordered_json;

/// Throws ParseError naming the line and column of the first syntax error.
Json parse_document(std::string_view text, const std::string& origin = "<input>");
Json load_document(const std::string& path);

/// A space document: `universe`, `gamma`, `tau` and optionally `family`.
struct LoadedSpace {
    GCSpacePtr gcs;
    std::optional<SubsetFamily> family;
    /// Set when a family is present and the space validates.
    FGCSpacePtr fgcs;
};

LoadedSpace space_from_json(const Json& doc, const Limits& limits = {});
Json space_to_json(const GCSpace& g);
Json space_to_json(const FGCSpace& x);

bool is_poset_document(const Json& doc);
FinPosetPtr poset_from_json(const Json& doc);
Json poset_to_json(const FinPoset& p);

/// `source` and `target` are inline space documents or paths relative to
/// `base_dir`; `pairs` lists [[labels of F], x'].
AMRelation mapping_from_json(const Json& doc, const std::string& base_dir, const Limits& limits = {});
Json mapping_to_json(const AMRelation& t);

Json subset_json(const Subset& s);
Json family_json(const SubsetFamily& f);
Json report_to_json(const Report& r);
/// Inverse of report_to_json; witnesses are parsed in `universe`.
Report report_from_json(const Json& doc, const UniversePtr& universe);
Json flags_to_json(const PosetFlags& f);

/// Plain-text rendering of a report document for terminals.
std::string render_human(const Json& doc);

}  // namespace fgc
