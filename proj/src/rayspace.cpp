#include "fgc/rayspace.hpp"

#include <algorithm>
#include <cctype>

namespace fgc {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

Rat min_of(const std::vector<Rat>& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace

Rat parse_rat(std::string_view text)
{
    text = trim(text);
    auto is_int = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!is_int(num) || !is_int(den) || (!den.empty() && (den.front() == '-' || den.front() == '+'))) {
        throw Error(ErrorCode::ParseError, "not a rational number: '" + std::string(text) + "'");
    }
    using boost::multiprecision::cpp_int;
    cpp_int n(std::string(num.front() == '+' ? num.substr(1) : num));
    cpp_int d{std::string(den)};
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rat(n, d);
}

std::string to_string(const Rat& r) { return r.str(); }

RayOpen RayOpen::parse(std::string_view text)
{
    text = trim(text);
    if (text == "all" || text == "(-inf,inf)") return all();
    if (text == "{}") return empty();
    if (text.size() >= 2 && (text.front() == '(' || text.front() == '[') && text.back() == ')') {
        const auto comma = text.find(',');
        if (comma != std::string_view::npos && trim(text.substr(comma + 1, text.size() - comma - 2)) == "inf") {
            Rat a = parse_rat(text.substr(1, comma - 1));
            return text.front() == '(' ? open(a) : closed(a);
        }
    }
    throw Error(ErrorCode::ParseError, "not a ray: '" + std::string(text) + "'");
}

bool RayOpen::contains(const Rat& x) const
{
    switch (kind) {
    case Kind::Empty: return false;
    case Kind::Open: return x > a;
    case Kind::Closed: return x >= a;
    case Kind::All: return true;
    }
    return false;
}

std::string RayOpen::str() const
{
    switch (kind) {
    case Kind::Empty: return "{}";
    case Kind::Open: return "(" + to_string(a) + ",inf)";
    case Kind::Closed: return "[" + to_string(a) + ",inf)";
    case Kind::All: return "all";
    }
    return "{}";
}

bool ray_subset(const RayOpen& u, const RayOpen& v)
{
    using K = RayOpen::Kind;
    if (u.kind == K::Empty || v.kind == K::All) return true;
    if (v.kind == K::Empty || u.kind == K::All) return false;
    if (u.kind == K::Closed && v.kind == K::Open) return v.a < u.a;
    return v.a <= u.a;
}

RayOpen ray_union(const std::vector<RayOpen>& rays)
{
    RayOpen out = RayOpen::empty();
    for (const auto& r : rays) {
        if (ray_subset(r, out)) continue;
        if (ray_subset(out, r)) out = r;
    }
    return out;
}

RayOpen ray_gamma(const std::vector<Rat>& a)
{
    if (a.empty()) return RayOpen::empty();
    return RayOpen::closed(min_of(a));
}

RayOpen ray_tau(const RayOpen& a)
{
    if (a.kind == RayOpen::Kind::Closed) return RayOpen::open(a.a);
    return a;
}

RayOpen ray_hull(const std::vector<Rat>& f)
{
    if (f.empty()) throw Error(ErrorCode::EmptyF, "the empty set is not a family member");
    return ray_tau(ray_gamma(f));
}

RayOpen ray_hull_any(const std::vector<Rat>& m) { return ray_tau(ray_gamma(m)); }

std::optional<std::vector<Rat>> ray_regular_witness(const RayOpen& u, const std::vector<Rat>& m)
{
    for (const auto& x : m) {
        if (!u.contains(x)) return std::nullopt;
    }
    std::optional<Rat> lower;
    switch (u.kind) {
    case RayOpen::Kind::Empty: return std::nullopt;
    case RayOpen::Kind::Open:
    case RayOpen::Kind::Closed: lower = u.a; break;
    case RayOpen::Kind::All: break;
    }
    Rat c;
    if (m.empty()) {
        c = lower ? Rat(*lower + 1) : Rat(0);
    } else if (lower) {
        c = (*lower + min_of(m)) / 2;
    } else {
        c = min_of(m) - 1;
    }
    std::vector<Rat> f{c};
    const RayOpen h = ray_hull(f);
    for (const auto& x : m) {
        if (!h.contains(x)) return std::nullopt;
    }
    if (!ray_subset(h, u)) return std::nullopt;
    return f;
}

bool ray_is_regular(const RayOpen& u)
{
    switch (u.kind) {
    case RayOpen::Kind::Empty: return false;
    case RayOpen::Kind::Open:
    case RayOpen::Kind::All: return true;
    case RayOpen::Kind::Closed: return ray_regular_witness(u, {u.a}).has_value();
    }
    return false;
}

std::optional<std::vector<Rat>> ray_way_below_witness(const RayOpen& u1, const RayOpen& u2)
{
    if (!ray_is_regular(u1) || !ray_is_regular(u2)) {
        throw Error(ErrorCode::NotRegular, "way-below is defined on regular open rays only");
    }
    if (u1.kind == RayOpen::Kind::All) return std::nullopt;
    Rat c = u2.kind == RayOpen::Kind::All ? Rat(u1.a - 1) : Rat((u1.a + u2.a) / 2);
    std::vector<Rat> f{c};
    if (!u2.contains(c) || !ray_subset(u1, ray_hull(f))) return std::nullopt;
    return f;
}

bool ray_way_below(const RayOpen& u1, const RayOpen& u2) { return ray_way_below_witness(u1, u2).has_value(); }

bool RaySigma::contains(const std::vector<Rat>& g) const
{
    return min && !g.empty() && min_of(g) == *min;
}

std::string RaySigma::str() const
{
    if (!min) return "{}";
    return "{G : min G = " + to_string(*min) + "}";
}

RaySigma ray_sigma(const std::vector<Rat>& f, const std::vector<Rat>& m)
{
    const RayOpen hf = ray_hull(f);
    for (const auto& x : m) {
        if (!hf.contains(x)) throw Error(ErrorCode::MOutsideHull, to_string(x) + " lies outside " + hf.str());
    }
    if (m.empty()) return {};
    return {min_of(m)};
}

bool ray_is_f_sup(const std::vector<Rat>& f, const std::vector<Rat>& m, const std::vector<Rat>& g)
{
    if (g.empty()) return false;
    const RayOpen hf = ray_hull(f);
    const RayOpen hm = ray_hull_any(m);
    const RayOpen hg = ray_hull(g);
    const bool l1 = ray_subset(hm, hg) && std::all_of(g.begin(), g.end(), [&](const Rat& x) { return hf.contains(x); });
    if (!l1) return false;
    // Endpoints b with hm <= (b,inf) <= hf: b >= min F, and b <= min M when M is nonempty.
    if (m.empty()) return false;
    return min_of(g) >= min_of(m);
}

}  // namespace fgc
