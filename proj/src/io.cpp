#include "fgc/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fgc {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

const Json& field(const Json& doc, const char* key)
{
    if (!doc.is_object() || !doc.contains(key)) bad(std::string("document lacks '") + key + "'");
    return doc.at(key);
}

std::vector<std::string> string_list(const Json& j, const char* what)
{
    if (!j.is_array()) bad(std::string(what) + " must be a list of labels");
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) bad(std::string(what) + " must be a list of labels");
        out.push_back(e.get<std::string>());
    }
    return out;
}

Subset set_from_json(const UniversePtr& u, const Json& j)
{
    if (j.is_string()) return Subset::parse(u, j.get<std::string>());
    return Subset::of(u, string_list(j, "set"));
}

SubsetFamily family_from_json(const UniversePtr& u, const Json& j)
{
    if (!j.is_array()) bad("family must be a list of sets");
    std::vector<Mask> masks;
    for (const auto& e : j) masks.push_back(set_from_json(u, e).bits());
    return SubsetFamily(u, std::move(masks));
}

ClosureSpec gamma_from_json(const UniversePtr& u, const Json& j, const Limits& limits)
{
    if (j.contains("closed_sets")) return ClosureSpec::closed_system(family_from_json(u, j.at("closed_sets")));
    if (j.contains("table")) {
        check_cap(u->size(), limits);
        const Mask full = u->full_mask();
        std::vector<Mask> table(static_cast<std::size_t>(full) + 1, 0);
        std::vector<bool> seen(table.size(), false);
        for (const auto& [k, v] : j.at("table").items()) {
            const Mask a = Subset::parse(u, k).bits();
            table[a] = set_from_json(u, v).bits();
            seen[a] = true;
        }
        for (std::size_t a = 0; a < seen.size(); ++a) {
            if (!seen[a]) bad("gamma table lacks an entry for " + render(*u, a));
        }
        return ClosureSpec::full_table(u, std::move(table));
    }
    if (j.is_string() && j.get<std::string>() == "identity") return ClosureSpec::identity(u);
    bad("gamma must give closed_sets or table");
}

TauSpec tau_from_json(const UniversePtr& u, const Json& j)
{
    if (j.contains("open_sets")) return TauSpec::interior_system(family_from_json(u, j.at("open_sets")));
    if (j.contains("table")) {
        std::map<Mask, Mask> table;
        for (const auto& [k, v] : j.at("table").items()) {
            table[Subset::parse(u, k).bits()] = set_from_json(u, v).bits();
        }
        return TauSpec::partial_table(u, std::move(table));
    }
    if (j.is_string() && j.get<std::string>() == "identity") return TauSpec::identity(u);
    bad("tau must give open_sets or table");
}

Json labels_json(const Subset& s) { return Json(s.labels()); }

Json resolve(const Json& ref, const std::string& base_dir)
{
    if (ref.is_string()) {
        std::filesystem::path p(ref.get<std::string>());
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        return load_document(p.string());
    }
    return ref;
}

FGCSpacePtr require_fgcs(const Json& doc, const Limits& limits, const char* role)
{
    auto loaded = space_from_json(doc, limits);
    if (!loaded.fgcs) {
        throw Error(ErrorCode::NotValidated, std::string(role) + " space is not a valid space with a family");
    }
    return loaded.fgcs;
}

}  // namespace

Json parse_document(std::string_view text, const std::string& origin)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        std::size_t line = 1;
        std::size_t col = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        for (std::size_t i = 0; i < stop; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw Error(ErrorCode::ParseError,
                    origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed document");
    }
}

Json load_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str(), path);
}

LoadedSpace space_from_json(const Json& doc, const Limits& limits)
{
    try {
        auto u = Universe::make(string_list(field(doc, "universe"), "universe"));
        auto gamma = gamma_from_json(u, field(doc, "gamma"), limits);
        auto tau = tau_from_json(u, field(doc, "tau"));
        LoadedSpace out;
        out.gcs = make_gcs(std::move(gamma), std::move(tau), limits);
        if (doc.contains("family")) {
            out.family = family_from_json(u, doc.at("family"));
            if (out.gcs->validated()) out.fgcs = make_fgcs(out.gcs, *out.family, limits);
        }
        return out;
    } catch (const Json::exception& e) {
        bad(std::string("malformed space document: ") + e.what());
    }
}

Json space_to_json(const GCSpace& g)
{
    const auto& u = *g.universe();
    Json doc;
    doc["universe"] = u.labels();
    Json gamma;
    if (g.gamma_spec().kind() == ClosureSpec::Kind::ClosedSystem) {
        gamma["closed_sets"] = family_json(g.gamma_spec().closed_sets());
    } else {
        Json table = Json::object();
        const auto& t = g.gamma_spec().table();
        for (std::size_t a = 0; a < t.size(); ++a) table[render(u, a)] = render(u, t[a]);
        gamma["table"] = table;
    }
    doc["gamma"] = gamma;
    Json tau;
    if (g.tau_spec().kind() == TauSpec::Kind::InteriorSystem) {
        tau["open_sets"] = family_json(g.tau_spec().open_sets());
    } else {
        Json table = Json::object();
        for (const auto& [a, b] : g.tau_spec().table()) table[render(u, a)] = render(u, b);
        tau["table"] = table;
    }
    doc["tau"] = tau;
    return doc;
}

Json space_to_json(const FGCSpace& x)
{
    Json doc = space_to_json(x.space());
    Json fam = Json::array();
    for (const auto& m : x.family().members()) fam.push_back(labels_json(m));
    doc["family"] = fam;
    return doc;
}

bool is_poset_document(const Json& doc) { return doc.is_object() && doc.contains("elements"); }

FinPosetPtr poset_from_json(const Json& doc)
{
    auto labels = string_list(field(doc, "elements"), "elements");
    std::vector<std::pair<std::string, std::string>> leq;
    if (doc.contains("leq")) {
        for (const auto& pair : doc.at("leq")) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
                bad("leq entries must be [x,y] label pairs");
            }
            leq.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
    }
    return FinPoset::from_labels(std::move(labels), leq);
}

Json poset_to_json(const FinPoset& p)
{
    Json doc;
    doc["elements"] = p.elements()->labels();
    Json leq = Json::array();
    for (auto [a, b] : p.cover_pairs()) leq.push_back({p.elements()->label(a), p.elements()->label(b)});
    doc["leq"] = leq;
    return doc;
}

AMRelation mapping_from_json(const Json& doc, const std::string& base_dir, const Limits& limits)
{
    auto source = require_fgcs(resolve(field(doc, "source"), base_dir), limits, "source");
    auto target = require_fgcs(resolve(field(doc, "target"), base_dir), limits, "target");
    std::vector<std::pair<Mask, int>> pairs;
    for (const auto& p : field(doc, "pairs")) {
        if (!p.is_array() || p.size() != 2 || !p[1].is_string()) bad("pairs must be [[labels], label]");
        const Mask f = set_from_json(source->universe(), p[0]).bits();
        auto x = target->universe()->index_of(p[1].get<std::string>());
        if (!x) bad("unknown target element '" + p[1].get<std::string>() + "'");
        pairs.emplace_back(f, *x);
    }
    return AMRelation::from_pairs(source, target, pairs, limits);
}

Json mapping_to_json(const AMRelation& t)
{
    Json doc;
    doc["source"] = space_to_json(*t.source());
    doc["target"] = space_to_json(*t.target());
    Json pairs = Json::array();
    for (auto [f, x] : t.pairs()) {
        pairs.push_back({labels_json(Subset(t.source()->universe(), f)), t.target()->universe()->label(x)});
    }
    doc["pairs"] = pairs;
    return doc;
}

Json subset_json(const Subset& s) { return s.str(); }

Json family_json(const SubsetFamily& f)
{
    Json out = Json::array();
    for (Mask m : f.masks()) out.push_back(render(*f.universe(), m));
    return out;
}

Json report_to_json(const Report& r)
{
    Json doc;
    doc["ok"] = r.ok;
    Json vs = Json::array();
    for (const auto& v : r.violations) {
        Json jv;
        jv["rule"] = v.rule;
        Json w = Json::object();
        for (const auto& wit : v.witnesses) w[wit.role] = wit.value.str();
        jv["witness"] = w;
        jv["message"] = v.message;
        vs.push_back(jv);
    }
    doc["violations"] = vs;
    if (!r.notes.empty()) doc["notes"] = r.notes;
    return doc;
}

Report report_from_json(const Json& doc, const UniversePtr& universe)
{
    try {
        Report r;
        for (const auto& jv : doc.at("violations")) {
            Violation v;
            v.rule = jv.at("rule").get<std::string>();
            v.message = jv.value("message", "");
            for (const auto& [role, text] : jv.at("witness").items()) {
                v.witnesses.push_back({role, Subset::parse(universe, text.get<std::string>())});
            }
            r.add(std::move(v));
        }
        if (doc.contains("notes")) r.notes = doc.at("notes").get<std::vector<std::string>>();
        r.ok = doc.value("ok", r.violations.empty());
        return r;
    } catch (const Json::exception& e) {
        bad(std::string("malformed report: ") + e.what());
    }
}

Json flags_to_json(const PosetFlags& f)
{
    Json doc;
    doc["dcpo"] = f.dcpo;
    doc["continuous"] = f.continuous;
    doc["algebraic"] = f.algebraic;
    doc["complete_lattice"] = f.complete_lattice;
    doc["L_domain"] = f.l_domain;
    doc["bounded_complete"] = f.bounded_complete;
    if (!f.notes.empty()) doc["notes"] = f.notes;
    return doc;
}

namespace {

bool flat(const Json& j)
{
    if (j.is_object()) return false;
    if (!j.is_array()) return true;
    return std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
}

std::string inline_text(const Json& j)
{
    if (j.is_string()) return j.get<std::string>();
    if (!j.is_array()) return j.dump();
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? " " : "") + inline_text(j[i]);
    return out + "]";
}

void render_into(std::ostringstream& out, const Json& j, int depth, const std::string& key)
{
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string head = key.empty() ? pad : pad + key + ":";
    if (j.is_object()) {
        if (!key.empty()) out << head << '\n';
        for (const auto& [k, v] : j.items()) render_into(out, v, key.empty() ? depth : depth + 1, k);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return !flat(e); })) {
        out << head << '\n';
        std::size_t i = 0;
        for (const auto& e : j) render_into(out, e, depth + 1, "[" + std::to_string(i++) + "]");
    } else if (j.is_array()) {
        out << head << ' ';
        if (j.empty()) out << "(none)";
        bool first = true;
        for (const auto& e : j) {
            out << (first ? "" : ", ") << inline_text(e);
            first = false;
        }
        out << '\n';
    } else {
        out << head << ' ' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
}

}  // namespace

std::string render_human(const Json& doc)
{
    std::ostringstream out;
    render_into(out, doc, 0, "");
    return out.str();
}

}  // namespace fgc
