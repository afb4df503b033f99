#include "oracles.hpp"

#include <algorithm>

namespace oracle {

Set to_set(fgc::Mask m)
{
    Set s;
    for (int i = 0; i < 64; ++i) {
        if ((m >> i) & 1U) s.insert(i);
    }
    return s;
}

fgc::Mask to_mask(const Set& s)
{
    fgc::Mask m = 0;
    for (int i : s) m |= fgc::Mask{1} << i;
    return m;
}

std::vector<Set> powerset(const Set& base)
{
    std::vector<Set> out{Set{}};
    for (int e : base) {
        const std::size_t k = out.size();
        for (std::size_t i = 0; i < k; ++i) {
            Set s = out[i];
            s.insert(e);
            out.push_back(s);
        }
    }
    return out;
}

bool includes(const Set& big, const Set& small)
{
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::vector<Relation> all_partial_orders(int n)
{
    std::vector<std::pair<int, int>> cells;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i != j) cells.emplace_back(i, j);
        }
    }
    std::vector<Relation> out;
    for (unsigned long code = 0; code < (1UL << cells.size()); ++code) {
        Relation r(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
        for (int i = 0; i < n; ++i) r[i][i] = true;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if ((code >> c) & 1U) r[cells[c].first][cells[c].second] = true;
        }
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            for (int j = 0; j < n && ok; ++j) {
                if (i != j && r[i][j] && r[j][i]) ok = false;
                for (int k = 0; k < n && ok; ++k) {
                    if (r[i][j] && r[j][k] && !r[i][k]) ok = false;
                }
            }
        }
        if (ok) out.push_back(std::move(r));
    }
    return out;
}

Relation relation_of(const fgc::FinPoset& p)
{
    const int n = p.size();
    Relation r(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) r[i][j] = p.leq(i, j);
    }
    return r;
}

bool directed(const Relation& r, const Set& s)
{
    if (s.empty()) return false;
    for (int a : s) {
        for (int b : s) {
            bool bound = false;
            for (int c : s) bound = bound || (r[a][c] && r[b][c]);
            if (!bound) return false;
        }
    }
    return true;
}

int sup(const Relation& r, const Set& s, const Set& within)
{
    std::vector<int> ubs;
    for (int u : within) {
        if (std::all_of(s.begin(), s.end(), [&](int x) { return r[x][u]; })) ubs.push_back(u);
    }
    for (int u : ubs) {
        if (std::all_of(ubs.begin(), ubs.end(), [&](int v) { return r[u][v]; })) return u;
    }
    return -1;
}

namespace {

Set all_points(const Relation& r)
{
    Set s;
    for (int i = 0; i < static_cast<int>(r.size()); ++i) s.insert(i);
    return s;
}

}  // namespace

bool way_below(const Relation& r, int x, int y)
{
    const Set all = all_points(r);
    for (const Set& d : powerset(all)) {
        if (!directed(r, d)) continue;
        const int s = sup(r, d, all);
        if (s < 0 || !r[y][s]) continue;
        if (std::none_of(d.begin(), d.end(), [&](int e) { return r[x][e]; })) return false;
    }
    return true;
}

Flags flags(const Relation& r)
{
    const Set all = all_points(r);
    Flags f{true, true, true};
    for (const Set& s : powerset(all)) {
        const bool has = sup(r, s, all) >= 0;
        if (!has) f.complete_lattice = false;
        bool bounded = false;
        for (int u : all) {
            bounded = bounded || std::all_of(s.begin(), s.end(), [&](int x) { return r[x][u]; });
        }
        if (bounded && !has) f.bounded_complete = false;
    }
    for (int x : all) {
        Set down;
        for (int y : all) {
            if (r[y][x]) down.insert(y);
        }
        for (const Set& s : powerset(down)) {
            if (sup(r, s, down) < 0) f.l_domain = false;
        }
    }
    return f;
}

bool regular(const fgc::FGCSpace& x, const Set& u)
{
    std::vector<Set> hulls;
    for (fgc::Mask h : x.family_hulls()) hulls.push_back(to_set(h));
    for (const Set& m : powerset(u)) {
        bool covered = false;
        for (const Set& h : hulls) covered = covered || (includes(h, m) && includes(u, h));
        if (!covered) return false;
    }
    return true;
}

std::vector<Set> regulars(const fgc::FGCSpace& x)
{
    Set all;
    for (int i = 0; i < x.size(); ++i) all.insert(i);
    std::vector<Set> out;
    for (const Set& u : powerset(all)) {
        if (regular(x, u)) out.push_back(u);
    }
    return out;
}

bool way_below_sets(const std::vector<Set>& regs, const Set& u1, const Set& u2)
{
    const std::size_t k = regs.size();
    for (unsigned long sel = 1; sel < (1UL << k); ++sel) {
        std::vector<const Set*> chosen;
        for (std::size_t i = 0; i < k; ++i) {
            if ((sel >> i) & 1U) chosen.push_back(&regs[i]);
        }
        bool dir = true;
        for (auto* a : chosen) {
            for (auto* b : chosen) {
                bool bound = false;
                for (auto* c : chosen) bound = bound || (includes(*c, *a) && includes(*c, *b));
                dir = dir && bound;
            }
        }
        if (!dir) continue;
        Set joined;
        for (auto* a : chosen) joined.insert(a->begin(), a->end());
        if (!includes(joined, u2)) continue;
        if (std::none_of(chosen.begin(), chosen.end(), [&](const Set* c) { return includes(*c, u1); })) {
            return false;
        }
    }
    return true;
}

}  // namespace oracle

namespace oracle {

namespace {

Set hull_of(const fgc::FGCSpace& x, const Set& a) { return to_set(x.hull(to_mask(a))); }

}  // namespace

std::vector<Set> f_sups(const fgc::FGCSpace& x, const Set& f, const Set& m)
{
    const Set hf = hull_of(x, f);
    const Set hm = hull_of(x, m);
    std::vector<Set> out;
    for (const auto& g : x.family().members()) {
        const Set gs = to_set(g.bits());
        const Set hg = hull_of(x, gs);
        if (!includes(hg, hm) || !includes(hf, gs)) continue;
        bool least = true;
        for (const auto& g1 : x.family().members()) {
            const Set h1 = hull_of(x, to_set(g1.bits()));
            if (includes(h1, hm) && includes(hf, h1) && !includes(h1, hg)) least = false;
        }
        if (least) out.push_back(gs);
    }
    return out;
}

bool approximable(const fgc::FGCSpace& src, const fgc::FGCSpace& tgt, const std::vector<fgc::Mask>& image)
{
    Set all;
    for (int i = 0; i < tgt.size(); ++i) all.insert(i);
    const auto targets = powerset(all);
    const auto& fam = src.family().masks();
    auto rel = [&](std::size_t i, const Set& m) { return includes(to_set(image[i]), m); };
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (const auto& fp : tgt.family().members()) {
            const Set fs = to_set(fp.bits());
            if (rel(i, fs) && !rel(i, hull_of(tgt, fs))) return false;
        }
        for (std::size_t k = 0; k < fam.size(); ++k) {
            if (!includes(to_set(src.family_hulls()[k]), to_set(fam[i]))) continue;
            for (const Set& m : targets) {
                if (rel(i, m) && !rel(k, m)) return false;
            }
        }
        for (const Set& m : targets) {
            if (!rel(i, m)) continue;
            bool found = false;
            for (std::size_t g = 0; g < fam.size() && !found; ++g) {
                if (!includes(to_set(src.family_hulls()[i]), to_set(fam[g]))) continue;
                for (const auto& gp : tgt.family().members()) {
                    const Set gs = to_set(gp.bits());
                    if (includes(hull_of(tgt, gs), m) && rel(g, gs)) found = true;
                }
            }
            if (!found) return false;
        }
    }
    return true;
}

}  // namespace oracle
