#include "fgc/fixtures.hpp"

namespace fgc::fixtures {

FGCSpacePtr point()
{
    auto u = Universe::make({"a"});
    auto g = make_gcs(ClosureSpec::identity(u), TauSpec::identity(u));
    return make_fgcs(g, SubsetFamily(u, std::vector<Mask>{1}));
}

FGCSpacePtr flat()
{
    auto u = Universe::make({"a", "b"});
    auto g = make_gcs(ClosureSpec::identity(u), TauSpec::identity(u));
    return make_fgcs(g, SubsetFamily(u, std::vector<Mask>{1, 2, 3}));
}

FinPosetPtr chain(int n)
{
    std::vector<std::pair<int, int>> leq;
    for (int i = 0; i + 1 < n; ++i) leq.emplace_back(i, i + 1);
    return std::make_shared<const FinPoset>(Universe::numbered(n), leq);
}

FinPosetPtr v()
{
    return FinPoset::from_labels({"bot", "a", "b"}, {{"bot", "a"}, {"bot", "b"}});
}

FinPosetPtr diamond()
{
    return FinPoset::from_labels({"bot", "a", "b", "top"},
                                 {{"bot", "a"}, {"bot", "b"}, {"a", "top"}, {"b", "top"}});
}

FinPosetPtr m()
{
    return FinPoset::from_labels({"bot", "a", "b", "top1", "top2"},
                                 {{"bot", "a"},
                                  {"bot", "b"},
                                  {"a", "top1"},
                                  {"b", "top1"},
                                  {"a", "top2"},
                                  {"b", "top2"}});
}

FinPosetPtr two_top()
{
    return FinPoset::from_labels({"a", "b", "top1", "top2"},
                                 {{"a", "top1"}, {"b", "top1"}, {"a", "top2"}, {"b", "top2"}});
}

FGCSpacePtr chain2() { return poset_to_fgcs(chain(2)).space; }

GCSpacePtr chain2_patched()
{
    const auto x = chain2();
    const auto& base = x->space();
    std::map<Mask, Mask> tau = base.tau_spec().table();
    tau[3] = 2;
    return make_gcs(base.gamma_spec(), TauSpec::partial_table(base.universe(), tau));
}

FGCSpacePtr refine_failure()
{
    auto u = Universe::make({"a", "b"});
    auto g = make_gcs(ClosureSpec::identity(u),
                      TauSpec::partial_table(u, {{0, 0}, {1, 0}, {2, 2}, {3, 3}}));
    return make_fgcs(g, SubsetFamily(u, std::vector<Mask>{1}));
}

}  // namespace fgc::fixtures
