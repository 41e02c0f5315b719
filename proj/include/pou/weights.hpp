#pragma once

#include "pou/rational.hpp"

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace pou {

using VertexLabel = std::string;

// Labels that may appear in *input* documents: nonempty, no whitespace, and no
// '|' (reserved as the subdivision vertex-name separator). Internally generated
// subdivision names do contain '|'.
bool is_valid_input_label(const VertexLabel& label);

// A finite nonempty set of labels in canonical sorted order. Used both as the
// key of a derived weight vector and as a simplex of an abstract complex.
class SubsetKey {
public:
    // Sorts its argument; rejects empty input and duplicate labels.
    explicit SubsetKey(std::vector<VertexLabel> labels);

    static SubsetKey singleton(VertexLabel label);

    const std::vector<VertexLabel>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return labels_.size(); }

    bool contains(const VertexLabel& label) const;
    bool subset_of(const SubsetKey& other) const;

    // Set union; shared labels collapse. Used by joins of complexes.
    SubsetKey united_with(const SubsetKey& other) const;

    auto operator<=>(const SubsetKey&) const = default;

private:
    std::vector<VertexLabel> labels_;
};

// Finitely supported function S -> Q with strictly positive values on its
// support. Zeroes are never stored: absence of a key *is* the zero value, so
// structural equality of the map coincides with pointwise equality.
class WeightVector {
public:
    WeightVector() = default;

    // Rejects nonpositive values.
    explicit WeightVector(std::map<VertexLabel, Rational> entries);

    const std::map<VertexLabel, Rational>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    // Zero when the label is outside the support.
    Rational at(const VertexLabel& label) const;

    std::vector<VertexLabel> support() const;
    Rational total_mass() const;
    Rational max_weight() const; // zero for the empty vector

    bool operator==(const WeightVector&) const = default;

private:
    std::map<VertexLabel, Rational> entries_;
};

class ProbVector; // below

// Sum of absolute differences of values, over the union of supports.
Rational l1_distance(const WeightVector& a, const WeightVector& b);

// A weight vector with nonempty support and total mass exactly 1. This is a
// single "point" of the calculus; a partition of unity over a finite index set
// assigns one of these to each sample point.
class ProbVector {
public:
    explicit ProbVector(WeightVector weights);
    explicit ProbVector(std::map<VertexLabel, Rational> entries);

    const WeightVector& weights() const noexcept { return weights_; }
    operator const WeightVector&() const noexcept { return weights_; }

    const std::map<VertexLabel, Rational>& entries() const noexcept {
        return weights_.entries();
    }
    Rational at(const VertexLabel& label) const { return weights_.at(label); }
    SubsetKey support() const;

    bool operator==(const ProbVector&) const = default;

private:
    WeightVector weights_;
};

// order(x) = |support(x)| - 1.
int order(const ProbVector& x);

// Result of differentiating a ProbVector: positive weights on subset keys that
// form a chain under inclusion. The constructor enforces both.
class DerivedVector {
public:
    DerivedVector() = default;
    explicit DerivedVector(std::map<SubsetKey, Rational> entries);

    const std::map<SubsetKey, Rational>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    Rational at(const SubsetKey& key) const;
    Rational total_mass() const;
    std::size_t max_key_size() const; // zero for the empty vector

    bool operator==(const DerivedVector&) const = default;

private:
    std::map<SubsetKey, Rational> entries_;
};

// l1 distance between derived vectors, over the union of key sets.
Rational subset_l1_distance(const DerivedVector& a, const DerivedVector& b);

} // namespace pou
