#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fgc/io.hpp"
#include "fgc/miner.hpp"
#include "fgc/rayspace.hpp"

#ifndef FGC_VERSION
#define FGC_VERSION "0.0.0"
#endif

using namespace fgc;

namespace {

struct Globals {
    int cap = 16;
    bool oracle = false;
    std::uint64_t seed = 42;
    bool human = false;
    bool timing = false;
    std::string out;
    std::vector<std::string> argv;
};

Globals g;

Limits limits()
{
    Limits l;
    l.cap = g.cap;
    return l;
}

Mode mode() { return g.oracle ? Mode::Oracle : Mode::Fast; }

struct Emit {
    Json doc;
    bool ok = true;
};

Json header(const std::string& command)
{
    Json doc;
    doc["command"] = g.argv;
    doc["version"] = FGC_VERSION;
    doc["seed"] = g.seed;
    doc["subcommand"] = command;
    return doc;
}

Subset parse_set(const UniversePtr& u, const std::string& text)
{
    if (!text.empty() && text.front() == '{') return Subset::parse(u, text);
    return Subset::parse(u, "{" + text + "}");
}

struct Input {
    Json doc;
    FinPosetPtr poset;
    LoadedSpace loaded;
};

Input read_input(const std::string& path)
{
    Input in;
    in.doc = load_document(path);
    if (is_poset_document(in.doc)) {
        in.poset = poset_from_json(in.doc);
        auto ps = poset_to_fgcs(in.poset, std::nullopt, limits());
        in.loaded.gcs = ps.space->space_ptr();
        in.loaded.family = ps.space->family();
        in.loaded.fgcs = ps.space;
    } else {
        in.loaded = space_from_json(in.doc, limits());
    }
    return in;
}

FGCSpacePtr require_space(const Input& in)
{
    if (!in.loaded.family) throw Error(ErrorCode::InvalidInput, "document has no family");
    if (!in.loaded.fgcs) throw Error(ErrorCode::NotValidated, "space fails validation; run validate");
    return in.loaded.fgcs;
}

FinPosetPtr require_poset(const Input& in)
{
    if (!in.poset) throw Error(ErrorCode::InvalidInput, "expected a poset document with 'elements' and 'leq'");
    return in.poset;
}

Emit cmd_validate(const std::string& path)
{
    auto in = read_input(path);
    Emit e{header("validate")};
    const auto& gcs = *in.loaded.gcs;
    e.doc["gcs"] = report_to_json(gcs.validation());
    e.ok = gcs.validated();
    if (in.loaded.family && gcs.validated()) {
        auto x = make_fgcs(in.loaded.gcs, *in.loaded.family, limits());
        e.doc["fgcs"] = report_to_json(x->validation());
        e.ok = e.ok && x->validated();
    }
    return e;
}

Json regulars_json(const RegularFamily& r)
{
    Json doc;
    doc["count"] = r.size();
    doc["members"] = family_json(r.members);
    if (!r.notes.empty()) doc["notes"] = r.notes;
    return doc;
}

Emit cmd_regulars(const std::string& path)
{
    auto x = require_space(read_input(path));
    Emit e{header("regulars")};
    auto r = enumerate_regulars(x, limits());
    if (g.oracle) {
        std::vector<Mask> members;
        for (const auto& s : enumerate_subsets(x->universe(), {}, limits())) {
            if (is_regular_open(*x, s, Mode::Oracle, limits())) members.push_back(s.bits());
        }
        r.members = SubsetFamily(x->universe(), members);
    }
    e.doc["mode"] = g.oracle ? "oracle" : "fast";
    e.doc["regulars"] = regulars_json(r);
    return e;
}

Emit cmd_basis(const std::string& path)
{
    auto x = require_space(read_input(path));
    Emit e{header("basis")};
    e.doc["basis"] = family_json(basis_of(*x));
    auto rep = verify_continuity(x, {}, limits());
    e.doc["continuity"] = report_to_json(rep);
    e.ok = rep.ok;
    return e;
}

Emit cmd_waybelow(const std::string& path, const std::string& u1, const std::string& u2)
{
    auto x = require_space(read_input(path));
    Emit e{header("waybelow")};
    e.doc["mode"] = g.oracle ? "oracle" : "fast";
    if (!u1.empty() || !u2.empty()) {
        if (u1.empty() || u2.empty()) throw Error(ErrorCode::InvalidInput, "--u1 and --u2 go together");
        const auto a = parse_set(x->universe(), u1);
        const auto b = parse_set(x->universe(), u2);
        e.doc["u1"] = a.str();
        e.doc["u2"] = b.str();
        e.doc["way_below"] = way_below(x, a, b, mode(), {}, limits());
        return e;
    }
    auto r = enumerate_regulars(x, limits());
    auto m = way_below_matrix(r, mode());
    Json pairs = Json::array();
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (m[i][j]) pairs.push_back({r.members.at(i).str(), r.members.at(j).str()});
        }
    }
    e.doc["regulars"] = family_json(r.members);
    e.doc["pairs"] = pairs;
    if (g.human) {
        Json rows = Json::object();
        for (std::size_t i = 0; i < r.size(); ++i) {
            std::string row;
            for (std::size_t j = 0; j < r.size(); ++j) row += m[i][j] ? '1' : '.';
            rows[r.members.at(i).str()] = row;
        }
        e.doc["table"] = rows;
    }
    auto agree = check_mode_agreement(x, {}, limits());
    e.doc["agreement"] = report_to_json(agree);
    e.ok = agree.ok;
    return e;
}

Emit cmd_classify(const std::string& path)
{
    auto p = require_poset(read_input(path));
    Emit e{header("classify")};
    e.doc["elements"] = p->size();
    e.doc["flags"] = flags_to_json(classify_poset(*p, limits()));
    return e;
}

Json classification_json(const FGCSpacePtr& x, Report& theorems)
{
    auto res = verify_subclass_theorems(x, limits());
    Json doc;
    doc["class"] = to_string(res.space_class);
    doc["locally_consistent"] = res.locally_consistent;
    doc["consistent"] = res.consistent;
    doc["regular_count"] = res.regular_count;
    doc["regular_flags"] = flags_to_json(res.regular_flags);
    doc["local_consistency"] = report_to_json(res.lc_report);
    doc["BC"] = report_to_json(res.bc_report);
    doc["theorems"] = report_to_json(res.report);
    theorems = res.report;
    return doc;
}

Emit cmd_classify_space(const std::string& path)
{
    auto x = require_space(read_input(path));
    Emit e{header("classify-space")};
    Report theorems;
    e.doc["classification"] = classification_json(x, theorems);
    e.ok = theorems.ok;
    return e;
}

Emit cmd_represent(const std::string& path)
{
    auto in = read_input(path);
    auto p = require_poset(in);
    Emit e{header("represent")};
    e.doc["space"] = space_to_json(*in.loaded.fgcs);
    e.doc["regulars"] = regulars_json(enumerate_regulars(in.loaded.fgcs, limits()));
    return e;
}

Json roundtrip_json(const FinPoset& p, const RoundTrip& rt)
{
    Json doc;
    doc["report"] = report_to_json(rt.report);
    doc["regular_count"] = rt.regulars.size();
    Json f = Json::object();
    for (int i = 0; i < p.size(); ++i) {
        f[p.elements()->label(i)] = render(*rt.regulars.space->universe(), rt.f[static_cast<std::size_t>(i)]);
    }
    doc["way_below_sets"] = f;
    return doc;
}

Emit cmd_roundtrip(const std::string& path)
{
    auto p = require_poset(read_input(path));
    Emit e{header("roundtrip")};
    auto rt = roundtrip_iso(p, limits());
    e.doc["roundtrip"] = roundtrip_json(*p, rt);
    e.ok = rt.report.ok;
    return e;
}

Json space_pipeline(const FGCSpacePtr& x, bool& ok)
{
    Json doc;
    auto r = enumerate_regulars(x, limits());
    doc["regulars"] = regulars_json(r);
    auto cont = verify_continuity(x, {}, limits());
    doc["continuity"] = report_to_json(cont);
    auto agree = check_mode_agreement(x, {}, limits());
    doc["agreement"] = report_to_json(agree);
    Report theorems;
    doc["classification"] = classification_json(x, theorems);
    ok = cont.ok && agree.ok && theorems.ok;
    return doc;
}

Emit cmd_pipeline(const std::string& path)
{
    auto in = read_input(path);
    Emit e{header("pipeline")};
    bool space_ok = true;
    if (in.poset) {
        e.doc["flags"] = flags_to_json(classify_poset(*in.poset, limits()));
        auto rt = roundtrip_iso(in.poset, limits());
        e.doc["roundtrip"] = roundtrip_json(*in.poset, rt);
        e.doc["space"] = space_pipeline(in.loaded.fgcs, space_ok);
        e.ok = rt.report.ok && space_ok;
    } else {
        e.doc["space"] = space_pipeline(require_space(in), space_ok);
        e.ok = space_ok;
    }
    e.doc["ok"] = e.ok;
    return e;
}

std::string base_dir(const std::string& path)
{
    auto parent = std::filesystem::path(path).parent_path();
    return parent.empty() ? "." : parent.string();
}

AMRelation read_mapping(const std::string& path)
{
    return mapping_from_json(load_document(path), base_dir(path), limits());
}

Emit cmd_am_validate(const std::string& path)
{
    auto t = read_mapping(path);
    Emit e{header("am validate")};
    e.doc["validation"] = report_to_json(t.validation());
    e.ok = t.validated();
    if (e.ok) {
        auto cons = check_am_consequences(t, limits());
        e.doc["consequences"] = report_to_json(cons);
        e.ok = cons.ok;
    }
    return e;
}

Emit cmd_am_apply(const std::string& path, const std::string& u)
{
    auto t = read_mapping(path);
    Emit e{header("am apply")};
    e.doc["validation"] = report_to_json(t.validation());
    e.ok = t.validated();
    const auto s = parse_set(t.source()->universe(), u);
    auto img = am_apply(t, s, limits());
    e.doc["U"] = s.str();
    e.doc["image"] = img.image.str();
    e.doc["regular"] = img.regular;
    return e;
}

Emit cmd_am_compose(const std::string& first, const std::string& second)
{
    auto t1 = read_mapping(first);
    auto t2 = read_mapping(second);
    Emit e{header("am compose")};
    auto t = am_compose(t1, t2);
    e.doc["mapping"] = mapping_to_json(t);
    e.doc["validation"] = report_to_json(t.validation());
    e.ok = t1.validated() && t2.validated() && t.validated();
    return e;
}

Emit cmd_am_convert(const std::string& path)
{
    auto t = read_mapping(path);
    Emit e{header("am convert")};
    if (!t.validated()) {
        e.doc["validation"] = report_to_json(t.validation());
        e.ok = false;
        return e;
    }
    auto phi = am_to_scott(t, limits());
    Json table = Json::object();
    for (std::size_t i = 0; i < phi.source.size(); ++i) {
        table[phi.source.members.at(i).str()] =
            phi.target.members.at(static_cast<std::size_t>(phi.map(static_cast<int>(i)))).str();
    }
    e.doc["regular_map"] = table;
    auto back = scott_to_am(phi, limits());
    e.doc["roundtrip"] = back == t;
    e.ok = back == t;
    return e;
}

std::vector<Rat> parse_rats(const std::vector<std::string>& items)
{
    std::vector<Rat> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ',')) {
            if (!part.empty()) out.push_back(parse_rat(part));
        }
    }
    return out;
}

Json rats_json(const std::vector<Rat>& v)
{
    Json out = Json::array();
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

Emit cmd_ray_hull(const std::vector<std::string>& points)
{
    Emit e{header("ray hull")};
    auto f = parse_rats(points);
    e.doc["F"] = rats_json(f);
    e.doc["hull"] = ray_hull(f).str();
    return e;
}

Emit cmd_ray_wb(const std::string& a, const std::string& b)
{
    Emit e{header("ray wb")};
    const auto u1 = RayOpen::parse(a);
    const auto u2 = RayOpen::parse(b);
    e.doc["u1"] = u1.str();
    e.doc["u2"] = u2.str();
    auto w = ray_way_below_witness(u1, u2);
    e.doc["way_below"] = w.has_value();
    if (w) e.doc["witness"] = rats_json(*w);
    return e;
}

Emit cmd_ray_sigma(const std::vector<std::string>& fs, const std::vector<std::string>& ms)
{
    Emit e{header("ray sigma")};
    auto f = parse_rats(fs);
    auto m = parse_rats(ms);
    e.doc["F"] = rats_json(f);
    e.doc["M"] = rats_json(m);
    auto s = ray_sigma(f, m);
    e.doc["empty"] = s.empty();
    e.doc["sigma"] = s.str();
    return e;
}

Emit cmd_mine(int count, int max_n, const std::vector<std::string>& targets)
{
    MinerConfig cfg;
    cfg.seed = g.seed;
    cfg.count = count;
    cfg.max_n = max_n;
    cfg.limits = limits();
    if (!targets.empty()) {
        cfg.targets.clear();
        for (const auto& t : targets) cfg.targets.push_back(parse_target(t));
    }
    if (count < 0) throw Error(ErrorCode::InvalidInput, "count must be nonnegative");
    auto r = run_miner(cfg);
    Emit e{header("mine")};
    Json c;
    c["count"] = count;
    c["max_n"] = max_n;
    Json ts = Json::array();
    for (Target t : cfg.targets) ts.push_back(to_string(t));
    c["targets"] = ts;
    e.doc["config"] = c;
    Json counts;
    counts["generated"] = r.counts.generated;
    counts["valid"] = r.counts.valid;
    counts["poset_derived"] = r.counts.poset_derived;
    counts["locally_consistent"] = r.counts.locally_consistent;
    counts["consistent"] = r.counts.consistent;
    counts["regular_max"] = r.counts.regular_max;
    counts["oracle_skipped"] = r.counts.oracle_skipped;
    counts["checks"] = r.counts.checks;
    e.doc["counts"] = counts;
    Json findings = Json::array();
    for (const auto& f : r.findings) {
        Report single;
        single.add(f.violation);
        Json jf;
        jf["instance"] = f.instance;
        jf["origin"] = f.origin;
        jf["target"] = to_string(f.target);
        jf["violation"] = report_to_json(single)["violations"][0];
        if (f.shrunk) jf["shrunk"] = space_to_json(*f.shrunk);
        findings.push_back(jf);
    }
    e.doc["findings"] = findings;
    if (!r.notes.empty()) e.doc["notes"] = r.notes;
    e.ok = r.ok();
    return e;
}

int write(Json doc, bool ok, double secs)
{
    doc["ok"] = ok;
    if (g.timing) doc["seconds"] = secs;
    const std::string text = g.human ? render_human(doc) : doc.dump(2) + "\n";
    if (g.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(g.out);
        if (!f) {
            std::cerr << "error: cannot write " << g.out << '\n';
            return 2;
        }
        f << text;
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"F-augmented generalized closure spaces: validation, representation and mining"};
    app.set_version_flag("--version", FGC_VERSION);
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--cap", g.cap, "enumeration cap on universe size")->check(CLI::Range(1, 20));
    app.add_flag("--oracle", g.oracle, "use definition oracles instead of fast criteria");
    app.add_option("--seed", g.seed, "random seed");
    app.add_flag("--human", g.human, "plain-text rendering");
    app.add_flag("--timing", g.timing, "add wall-clock seconds to the report");
    app.add_option("--out", g.out, "write the report to FILE");

    std::function<Emit()> run;
    std::string file;
    std::string u1, u2, set;
    std::string map1, map2;
    std::vector<std::string> points, fs, ms, targets;
    int count = 1000;
    int max_n = 5;

    auto file_cmd = [&](const std::string& name, const std::string& help, auto fn) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("file", file, "space or poset document")->required();
        sub->callback([&, fn] { run = [&, fn] { return fn(file); }; });
        return sub;
    };
    file_cmd("validate", "check the space axioms and the refinement axiom", cmd_validate);
    file_cmd("regulars", "list the regular open sets", cmd_regulars);
    file_cmd("basis", "basis members and continuity checks", cmd_basis);
    auto* wb = file_cmd("waybelow", "way-below relation on regular open sets",
                        [&](const std::string& f) { return cmd_waybelow(f, u1, u2); });
    wb->add_option("--u1", u1, "left regular open set");
    wb->add_option("--u2", u2, "right regular open set");
    file_cmd("classify", "domain-theoretic flags of a poset", cmd_classify);
    file_cmd("classify-space", "subclass of a space and flags of its regular open sets", cmd_classify_space);
    file_cmd("represent", "space built from a poset", cmd_represent);
    file_cmd("roundtrip", "poset to regular open sets and back", cmd_roundtrip);
    file_cmd("pipeline", "every check for a space or poset", cmd_pipeline);

    auto* am = app.add_subcommand("am", "approximable mappings");
    am->require_subcommand(1);
    auto* amv = am->add_subcommand("validate", "check the mapping axioms");
    amv->add_option("mapping", map1)->required();
    amv->callback([&] { run = [&] { return cmd_am_validate(map1); }; });
    auto* ama = am->add_subcommand("apply", "image of a regular open set");
    ama->add_option("mapping", map1)->required();
    ama->add_option("--U", set, "regular open set of the source")->required();
    ama->callback([&] { run = [&] { return cmd_am_apply(map1, set); }; });
    auto* amc = am->add_subcommand("compose", "first mapping followed by second");
    amc->add_option("first", map1)->required();
    amc->add_option("second", map2)->required();
    amc->callback([&] { run = [&] { return cmd_am_compose(map1, map2); }; });
    auto* amx = am->add_subcommand("convert", "tabulate as a map of regular open sets and convert back");
    amx->add_option("mapping", map1)->required();
    amx->callback([&] { run = [&] { return cmd_am_convert(map1); }; });

    auto* ray = app.add_subcommand("ray", "the rational line with open rays");
    ray->require_subcommand(1);
    auto* rh = ray->add_subcommand("hull", "hull of a finite set of rationals");
    rh->add_option("points", points)->required();
    rh->callback([&] { run = [&] { return cmd_ray_hull(points); }; });
    auto* rw = ray->add_subcommand("wb", "way-below between two rays");
    rw->add_option("u1", u1)->required();
    rw->add_option("u2", u2)->required();
    rw->callback([&] { run = [&] { return cmd_ray_wb(u1, u2); }; });
    auto* rs = ray->add_subcommand("sigma", "F-sups of M inside the hull of F");
    rs->add_option("--F", fs, "comma-separated rationals")->required();
    rs->add_option("--M", ms, "comma-separated rationals");
    rs->callback([&] { run = [&] { return cmd_ray_sigma(fs, ms); }; });

    auto* mine = app.add_subcommand("mine", "seeded search for counterexamples");
    mine->add_option("--count", count, "number of candidates")->capture_default_str();
    mine->add_option("--max-n", max_n, "largest universe")->capture_default_str()->check(CLI::Range(1, 8));
    mine->add_option("--target", targets, "restrict to these targets");
    mine->callback([&] { run = [&] { return cmd_mine(count, max_n, targets); }; });

    for (int i = 1; i < argc; ++i) g.argv.emplace_back(argv[i]);
    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        const auto t0 = std::chrono::steady_clock::now();
        Emit e = run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return write(std::move(e.doc), e.ok, secs);
    } catch (const Error& e) {
        Json doc;
        doc["error"] = std::string(to_string(e.code()));
        doc["message"] = e.what();
        std::cerr << doc.dump() << '\n';
        return 2;
    } catch (const std::exception& e) {
        Json doc;
        doc["error"] = "InvalidInput";
        doc["message"] = e.what();
        std::cerr << doc.dump() << '\n';
        return 2;
    }
}
