#include "fgc/setcore.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fgc {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::TauUndefined: return "TauUndefined";
    case ErrorCode::NotATopology: return "NotATopology";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::NotInFamily: return "NotInFamily";
    case ErrorCode::MNotInHull: return "MNotInHull";
    case ErrorCode::EmptyPoset: return "EmptyPoset";
    case ErrorCode::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorCode::InvalidBasis: return "InvalidBasis";
    case ErrorCode::NotScottContinuous: return "NotScottContinuous";
    case ErrorCode::NoGreatestElement: return "NoGreatestElement";
    case ErrorCode::SupMissing: return "SupMissing";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::NotValidated: return "NotValidated";
    case ErrorCode::EmptyF: return "EmptyF";
    case ErrorCode::MOutsideHull: return "MOutsideHull";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

void check_cap(int n, const Limits& limits)
{
    if (n > limits.cap || n >= kMaxUniverse) {
        throw Error(ErrorCode::CapExceeded,
                    "universe of size " + std::to_string(n) + " exceeds enumeration cap "
                        + std::to_string(limits.cap));
    }
}

Universe::Universe(std::vector<std::string> labels) : labels_(std::move(labels))
{
    if (labels_.empty()) throw Error(ErrorCode::InvalidInput, "universe must be nonempty");
    if (labels_.size() > static_cast<std::size_t>(kMaxUniverse)) {
        throw Error(ErrorCode::CapExceeded, "universe larger than 64 elements");
    }
    for (std::size_t i = 0; i < labels_.size(); ++i) {
        const auto& l = labels_[i];
        if (l.empty() || l.find_first_of("{},") != std::string::npos) {
            throw Error(ErrorCode::InvalidInput, "invalid element label '" + l + "'");
        }
        if (!index_.emplace(l, static_cast<int>(i)).second) {
            throw Error(ErrorCode::InvalidInput, "duplicate element label '" + l + "'");
        }
    }
}

std::shared_ptr<const Universe> Universe::make(std::vector<std::string> labels)
{
    return std::make_shared<const Universe>(std::move(labels));
}

std::shared_ptr<const Universe> Universe::numbered(int n)
{
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return make(std::move(labels));
}

std::optional<int> Universe::index_of(std::string_view label) const
{
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Mask Universe::full_mask() const noexcept
{
    return size() == 64 ? ~Mask{0} : ((Mask{1} << size()) - 1);
}

Subset::Subset(UniversePtr universe, Mask bits) : universe_(std::move(universe)), bits_(bits)
{
    if (!universe_) throw Error(ErrorCode::InvalidInput, "subset without universe");
    if (!is_subset(bits_, universe_->full_mask())) {
        throw Error(ErrorCode::InvalidInput, "subset bits outside universe");
    }
}

Subset Subset::full(const UniversePtr& universe) { return Subset(universe, universe->full_mask()); }

Subset Subset::of(const UniversePtr& universe, const std::vector<std::string>& labels)
{
    Mask bits = 0;
    for (const auto& l : labels) {
        auto idx = universe->index_of(l);
        if (!idx) throw Error(ErrorCode::InvalidInput, "unknown element '" + l + "'");
        bits |= Mask{1} << *idx;
    }
    return Subset(universe, bits);
}

Subset Subset::parse(const UniversePtr& universe, std::string_view text)
{
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    text = trim(text);
    if (text.size() < 2 || text.front() != '{' || text.back() != '}') {
        throw Error(ErrorCode::InvalidInput, "malformed set '" + std::string(text) + "'");
    }
    text = trim(text.substr(1, text.size() - 2));
    std::vector<std::string> labels;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = trim(text.substr(0, comma));
        if (item.empty()) throw Error(ErrorCode::InvalidInput, "empty element in set");
        labels.emplace_back(item);
        if (comma == std::string_view::npos) break;
        text = text.substr(comma + 1);
    }
    return of(universe, labels);
}

void Subset::require_same(const Subset& other) const
{
    if (universe_ != other.universe_) {
        throw Error(ErrorCode::UniverseMismatch, "subsets belong to different universes");
    }
}

bool Subset::subset_of(const Subset& other) const
{
    require_same(other);
    return is_subset(bits_, other.bits_);
}

std::vector<int> Subset::elements() const
{
    std::vector<int> out;
    for (Mask m = bits_; m; m &= m - 1) out.push_back(__builtin_ctzll(m));
    return out;
}

std::vector<std::string> Subset::labels() const
{
    std::vector<std::string> out;
    for (int e : elements()) out.push_back(universe_->label(e));
    return out;
}

Subset Subset::operator|(const Subset& other) const
{
    require_same(other);
    return Subset(universe_, bits_ | other.bits_);
}

Subset Subset::operator&(const Subset& other) const
{
    require_same(other);
    return Subset(universe_, bits_ & other.bits_);
}

Subset Subset::operator-(const Subset& other) const
{
    require_same(other);
    return Subset(universe_, bits_ & ~other.bits_);
}

Subset Subset::complement() const { return Subset(universe_, universe_->full_mask() & ~bits_); }

std::string Subset::str() const { return universe_ ? render(*universe_, bits_) : "{}"; }

std::string render(const Universe& universe, Mask bits)
{
    std::string out = "{";
    bool first = true;
    for (int i = 0; i < universe.size(); ++i) {
        if (!((bits >> i) & 1U)) continue;
        if (!first) out += ',';
        out += universe.label(i);
        first = false;
    }
    out += '}';
    return out;
}

SubsetFamily::SubsetFamily(UniversePtr universe, std::vector<Mask> masks)
    : universe_(std::move(universe)), masks_(std::move(masks))
{
    const Mask full = universe_->full_mask();
    for (Mask m : masks_) {
        if (!is_subset(m, full)) throw Error(ErrorCode::InvalidInput, "family member outside universe");
    }
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
}

SubsetFamily::SubsetFamily(UniversePtr universe, const std::vector<Subset>& members)
    : universe_(std::move(universe))
{
    for (const auto& s : members) {
        if (s.universe() != universe_) {
            throw Error(ErrorCode::UniverseMismatch, "family member from another universe");
        }
        masks_.push_back(s.bits());
    }
    std::sort(masks_.begin(), masks_.end());
    masks_.erase(std::unique(masks_.begin(), masks_.end()), masks_.end());
}

std::vector<Subset> SubsetFamily::members() const
{
    std::vector<Subset> out;
    out.reserve(masks_.size());
    for (Mask m : masks_) out.emplace_back(universe_, m);
    return out;
}

bool SubsetFamily::contains(Mask m) const
{
    return std::binary_search(masks_.begin(), masks_.end(), m);
}

bool SubsetFamily::contains(const Subset& s) const
{
    return s.universe() == universe_ && contains(s.bits());
}

std::uint64_t canonical_index(const Subset& s, const Limits& limits)
{
    check_cap(s.universe()->size(), limits);
    return s.bits();
}

std::vector<Subset> enumerate_subsets(const UniversePtr& u,
                                      const std::function<bool(const Subset&)>& filter,
                                      const Limits& limits)
{
    check_cap(u->size(), limits);
    std::vector<Subset> out;
    for_each_submask(u->full_mask(), [&](Mask m) {
        Subset s(u, m);
        if (!filter || filter(s)) out.push_back(std::move(s));
    });
    return out;
}

const Subset* Violation::find(std::string_view role) const
{
    for (const auto& w : witnesses) {
        if (w.role == role) return &w.value;
    }
    return nullptr;
}

void Report::merge(const Report& other)
{
    for (const auto& v : other.violations) add(v);
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

}  // namespace fgc
