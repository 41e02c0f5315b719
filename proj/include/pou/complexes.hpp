#pragma once

#include "pou/weights.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace pou {

// Guard for the combinatorial operations that enumerate faces or chains. The
// cap bounds both the number of produced objects and (up to a small factor)
// the work spent producing them; exceeding it raises
// DomainError("face_enumeration_cap").
inline constexpr std::size_t kDefaultFaceCap = 1'000'000;

// Separator used to name subdivision vertices after the simplices they encode:
// the simplex {a, c} becomes the vertex "a|c". Input labels must not contain
// it, which keeps the naming injective.
inline constexpr char kSubdivisionSeparator = '|';

// A finite abstract simplicial complex, stored as its label universe plus its
// inclusion-maximal faces. The constructor canonicalizes: vertex list sorted
// and deduplicated, facets sorted, duplicates and dominated facets dropped.
class AbstractComplex {
public:
    AbstractComplex() = default;
    AbstractComplex(std::vector<VertexLabel> vertices, std::vector<SubsetKey> facets);

    // Vertices inferred as the union of the facets.
    static AbstractComplex from_facets(std::vector<SubsetKey> facets);

    const std::vector<VertexLabel>& vertices() const noexcept { return vertices_; }
    const std::vector<SubsetKey>& facets() const noexcept { return facets_; }
    bool has_vertex(const VertexLabel& label) const;

    bool operator==(const AbstractComplex&) const = default;

private:
    // Trusted path for operations whose output facets are pairwise
    // incomparable by construction (subdivision, join); skips the quadratic
    // dominance pruning, which matters when facet counts approach the cap.
    static AbstractComplex from_canonical_facets(std::vector<VertexLabel> vertices,
                                                 std::vector<SubsetKey> facets);

    std::vector<VertexLabel> vertices_;
    std::vector<SubsetKey> facets_;

    friend AbstractComplex barycentric_subdivision(const AbstractComplex&, std::size_t);
    friend AbstractComplex join_complexes(const AbstractComplex&, const AbstractComplex&);
};

// Membership test: T is a simplex iff it is contained in some facet.
bool is_simplex(const AbstractComplex& complex, const SubsetKey& key);

// All simplices (nonempty faces of facets), sorted. Guarded by `cap`.
std::vector<SubsetKey> enumerate_simplices(const AbstractComplex& complex,
                                           std::size_t cap = kDefaultFaceCap);

// Alternating face count: simplices of even cardinality count -1, odd +1.
long long euler_characteristic(const AbstractComplex& complex,
                               std::size_t cap = kDefaultFaceCap);

// "a|c" for {a, c}; members joined by the separator in sorted order.
VertexLabel subdivision_vertex_name(const SubsetKey& simplex);

// Barycentric subdivision: vertices are the simplices of the input, facets are
// its maximal chains (one per permutation of each facet). The facet count is
// the sum of |F|! over facets F, guarded by `cap` before any work is done.
AbstractComplex barycentric_subdivision(const AbstractComplex& complex,
                                        std::size_t cap = kDefaultFaceCap);

// Join of two complexes on disjoint label sets: T is a simplex of the join iff
// its trace on each side is a simplex there or empty.
AbstractComplex join_complexes(const AbstractComplex& k, const AbstractComplex& l);

// Nerve of a family of points: one vertex per label that appears in some
// support, one simplex per subset of a support. Facets are the maximal
// supports. `points` must be nonempty.
AbstractComplex nerve_of_sample(std::span<const ProbVector> points);

// Coordinates of x in the subdivision: the derived weight of each chain key
// becomes the weight of the corresponding subdivision vertex. Requires
// support(x) to be a simplex of `complex`. The result's support is always a
// simplex of the subdivision, and realizing both at matched geometry gives the
// same ambient point.
ProbVector subdivision_coordinates(const ProbVector& x, const AbstractComplex& complex);

// A complex together with rational coordinates for (at least) its vertices,
// all tuples of one shared ambient dimension.
class GeometricRealization {
public:
    GeometricRealization(AbstractComplex complex,
                         std::map<VertexLabel, std::vector<Rational>> coordinates);

    const AbstractComplex& complex() const noexcept { return complex_; }
    const std::map<VertexLabel, std::vector<Rational>>& coordinates() const noexcept {
        return coordinates_;
    }
    std::size_t dimension() const noexcept { return dimension_; }

private:
    AbstractComplex complex_;
    std::map<VertexLabel, std::vector<Rational>> coordinates_;
    std::size_t dimension_ = 0;
};

// Affine combination of vertex coordinates with weights from x. Requires
// support(x) to be a simplex of the realized complex.
std::vector<Rational> realize(const ProbVector& x, const GeometricRealization& geometry);

// Realization of the subdivision compatible with `geometry`: each subdivision
// vertex sits at the barycenter of the simplex it names.
GeometricRealization barycentric_realization(const GeometricRealization& geometry,
                                             std::size_t cap = kDefaultFaceCap);

struct StarRefinementCounterexample {
    std::size_t x_index = 0;
    std::size_t y_index = 0;
    SubsetKey shared_key;
};

// For each point the witness label is the argmax of its weights (ties broken
// toward the smaller label). The star refinement property says: whenever two
// points share a derived key, each point gives positive weight to the other's
// witness. `check` records the first violating pair, if any.
struct StarRefinementResult {
    std::vector<VertexLabel> witnesses; // aligned with the input points
    std::optional<StarRefinementCounterexample> counterexample;

    bool ok() const noexcept { return !counterexample.has_value(); }
};

StarRefinementResult star_refinement_witness(std::span<const ProbVector> points);

// For a fixed cardinality c, each point has at most one derived key of size c.
// `assignments` holds that key (or nothing) per point; a point with two keys
// of the same size would violate the chain condition, so `ok` can only be
// false if the inputs were built outside this library's invariants.
struct LayerDisjointnessResult {
    bool ok = true;
    std::vector<std::optional<SubsetKey>> assignments;
    std::optional<std::size_t> violating_point;
};

LayerDisjointnessResult disjoint_layers_check(std::span<const ProbVector> points,
                                              int cardinality);

// Restriction of a family to the derived keys realized by a subset A of the
// points: every point keeps only those derived keys, is renormalized and
// integrated back. Points that keep no mass are dropped; `kept_indices` maps
// result positions back to input positions. Points indexed by A survive
// unchanged. The nerve of the result equals the nerve of the subfamily A.
struct RestrictResult {
    std::vector<std::size_t> kept_indices;
    std::vector<ProbVector> points;
};

RestrictResult restrict_nerve(std::span<const ProbVector> points,
                              const std::set<std::size_t>& subset);

} // namespace pou
