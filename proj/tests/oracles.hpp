#pragma once

#include <set>
#include <vector>

#include "fgc/finposet.hpp"

namespace oracle {

using Set = std::set<int>;
using Relation = std::vector<std::vector<bool>>;

Set to_set(fgc::Mask m);
fgc::Mask to_mask(const Set& s);
std::vector<Set> powerset(const Set& base);
bool includes(const Set& big, const Set& small);

/// Every partial order on n points, by filtering all relations.
std::vector<Relation> all_partial_orders(int n);
Relation relation_of(const fgc::FinPoset& p);

bool directed(const Relation& r, const Set& s);
/// Least upper bound of s among `within`, or -1.
int sup(const Relation& r, const Set& s, const Set& within);
bool way_below(const Relation& r, int x, int y);

struct Flags {
    bool complete_lattice;
    bool l_domain;
    bool bounded_complete;
};
Flags flags(const Relation& r);

/// Regular open by definition: each finite M inside u lies in a family hull
/// that stays inside u.
bool regular(const fgc::FGCSpace& x, const Set& u);
std::vector<Set> regulars(const fgc::FGCSpace& x);
/// Way-below by definition over directed subfamilies of `regs`.
bool way_below_sets(const std::vector<Set>& regs, const Set& u1, const Set& u2);

}  // namespace oracle

namespace oracle {

/// Sigma(F, M) by the literal definition.
std::vector<Set> f_sups(const fgc::FGCSpace& x, const Set& f, const Set& m);

/// The three axioms of an approximable mapping with M' ranging over every
/// subset of the target, image[i] being the points related to member i.
bool approximable(const fgc::FGCSpace& src, const fgc::FGCSpace& tgt, const std::vector<fgc::Mask>& image);

}  // namespace oracle
