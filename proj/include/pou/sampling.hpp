#pragma once

#include "pou/complexes.hpp"
#include "pou/weights.hpp"

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace pou {

using PointId = std::string;

// A finite pseudometric space given by an explicit distance table. Exact
// rational distances; symmetry, zero diagonal, nonnegativity and the triangle
// inequality are all verified at construction.
class MetricSample {
public:
    // `dense` is the full row-major size*size table.
    MetricSample(std::vector<PointId> ids, std::vector<Rational> dense);

    // Builds the table from unordered pairs; every pair of distinct ids must
    // appear exactly once (either orientation). Diagonal entries may be listed
    // only with value zero.
    static MetricSample from_pairs(
        std::vector<PointId> ids,
        const std::vector<std::tuple<PointId, PointId, Rational>>& pairs);

    std::size_t size() const noexcept { return ids_.size(); }
    const std::vector<PointId>& ids() const noexcept { return ids_; }
    std::size_t index_of(const PointId& id) const; // throws DomainError if absent
    const Rational& distance(std::size_t i, std::size_t j) const;
    Rational diameter() const;

private:
    std::vector<PointId> ids_;
    std::map<PointId, std::size_t> index_;
    std::vector<Rational> dense_;
};

// A cover of the sample indexed by labels: each label names a subset of the
// point ids. Covering (every point in at least one set) is checked against a
// concrete sample by the operations below, not at construction.
class IndexedCover {
public:
    IndexedCover() = default;
    explicit IndexedCover(std::map<VertexLabel, std::set<PointId>> sets);

    const std::map<VertexLabel, std::set<PointId>>& sets() const noexcept {
        return sets_;
    }

    bool operator==(const IndexedCover&) const = default;

private:
    std::map<VertexLabel, std::set<PointId>> sets_;
};

// Surrogate clearance used for a cover set with empty complement, where the
// distance to the complement has no minimum to take: 1 + diameter, strictly
// larger than any actual distance in the sample.
Rational all_covered_surrogate(const MetricSample& sample);

// The distance-to-complement partition of unity: point x gets raw weight
// d(x, X - U_s) on label s (the surrogate above when U_s = X), normalized to
// mass 1. A point with zero raw weight on every label lies on the boundary of
// everything; that degeneracy is an error, not a silent zero vector.
// The OpenMP kernel and the serial reference compute identical results.
std::vector<ProbVector> distance_pou(const MetricSample& sample,
                                     const IndexedCover& cover);
std::vector<ProbVector> distance_pou_serial(const MetricSample& sample,
                                            const IndexedCover& cover);

struct CechResult {
    IndexedCover cover;
    std::vector<ProbVector> partition;
    AbstractComplex nerve;
};

// Open-ball cover of the sample at the given radius (ball of point p is
// labeled "b" + id(p)), its distance partition of unity, and the nerve of the
// resulting family. Deterministic: same input bytes, same output bytes.
CechResult cech_pipeline(const MetricSample& sample, const Rational& radius);

} // namespace pou
