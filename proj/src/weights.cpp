#include "pou/weights.hpp"

#include "pou/errors.hpp"

#include <algorithm>
#include <cctype>

namespace pou {

bool is_valid_input_label(const VertexLabel& label) {
    if (label.empty()) return false;
    for (const char c : label) {
        if (c == '|') return false;
        if (std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

SubsetKey::SubsetKey(std::vector<VertexLabel> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw DomainError("subset_key_nonempty", "subset key must be nonempty");
    }
    std::sort(labels_.begin(), labels_.end());
    if (std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
        throw DomainError("subset_key_distinct", "subset key has a repeated label");
    }
}

SubsetKey SubsetKey::singleton(VertexLabel label) {
    return SubsetKey(std::vector<VertexLabel>{std::move(label)});
}

bool SubsetKey::contains(const VertexLabel& label) const {
    return std::binary_search(labels_.begin(), labels_.end(), label);
}

bool SubsetKey::subset_of(const SubsetKey& other) const {
    return std::includes(other.labels_.begin(), other.labels_.end(),
                         labels_.begin(), labels_.end());
}

SubsetKey SubsetKey::united_with(const SubsetKey& other) const {
    std::vector<VertexLabel> merged;
    merged.reserve(labels_.size() + other.labels_.size());
    std::set_union(labels_.begin(), labels_.end(),
                   other.labels_.begin(), other.labels_.end(),
                   std::back_inserter(merged));
    return SubsetKey(std::move(merged));
}

WeightVector::WeightVector(std::map<VertexLabel, Rational> entries)
    : entries_(std::move(entries)) {
    for (const auto& [label, value] : entries_) {
        if (value <= 0) {
            throw DomainError("weights_positive",
                              "weight for \"" + label + "\" is not positive");
        }
    }
}

Rational WeightVector::at(const VertexLabel& label) const {
    const auto it = entries_.find(label);
    return it == entries_.end() ? Rational(0) : it->second;
}

std::vector<VertexLabel> WeightVector::support() const {
    std::vector<VertexLabel> out;
    out.reserve(entries_.size());
    for (const auto& [label, value] : entries_) out.push_back(label);
    return out;
}

Rational WeightVector::total_mass() const {
    Rational sum(0);
    for (const auto& [label, value] : entries_) sum += value;
    return sum;
}

Rational WeightVector::max_weight() const {
    Rational best(0);
    for (const auto& [label, value] : entries_) {
        if (value > best) best = value;
    }
    return best;
}

namespace {

// Merge walk over two sorted maps; keys missing on one side count as zero.
template <typename Map>
Rational l1_over_union(const Map& a, const Map& b) {
    Rational sum(0);
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
            sum += ia->second;
            ++ia;
        } else if (ia == a.end() || ib->first < ia->first) {
            sum += ib->second;
            ++ib;
        } else {
            sum += abs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return sum;
}

} // namespace

Rational l1_distance(const WeightVector& a, const WeightVector& b) {
    return l1_over_union(a.entries(), b.entries());
}

ProbVector::ProbVector(WeightVector weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw DomainError("support_nonempty", "probability vector has empty support");
    }
    if (weights_.total_mass() != 1) {
        throw DomainError("unit_mass", "weights sum to " +
                                           format_rational(weights_.total_mass()) +
                                           ", expected 1");
    }
}

ProbVector::ProbVector(std::map<VertexLabel, Rational> entries)
    : ProbVector(WeightVector(std::move(entries))) {}

SubsetKey ProbVector::support() const {
    return SubsetKey(weights_.support());
}

int order(const ProbVector& x) {
    return static_cast<int>(x.entries().size()) - 1;
}

DerivedVector::DerivedVector(std::map<SubsetKey, Rational> entries)
    : entries_(std::move(entries)) {
    for (const auto& [key, value] : entries_) {
        if (value <= 0) {
            throw DomainError("weights_positive", "derived weight is not positive");
        }
    }
    // Chain condition: keys must be totally ordered by inclusion. Sorting by
    // cardinality and checking consecutive containment suffices, because set
    // inclusion is transitive and distinct keys of equal size never nest.
    std::vector<const SubsetKey*> keys;
    keys.reserve(entries_.size());
    for (const auto& [key, value] : entries_) keys.push_back(&key);
    std::sort(keys.begin(), keys.end(), [](const SubsetKey* a, const SubsetKey* b) {
        return a->size() < b->size();
    });
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (!keys[i - 1]->subset_of(*keys[i])) {
            throw DomainError("chain_condition",
                              "derived keys are not totally ordered by inclusion");
        }
    }
}

Rational DerivedVector::at(const SubsetKey& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? Rational(0) : it->second;
}

Rational DerivedVector::total_mass() const {
    Rational sum(0);
    for (const auto& [key, value] : entries_) sum += value;
    return sum;
}

std::size_t DerivedVector::max_key_size() const {
    std::size_t best = 0;
    for (const auto& [key, value] : entries_) best = std::max(best, key.size());
    return best;
}

Rational subset_l1_distance(const DerivedVector& a, const DerivedVector& b) {
    return l1_over_union(a.entries(), b.entries());
}

} // namespace pou
