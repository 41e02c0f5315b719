#include "pou/complexes.hpp"

#include "pou/calculus.hpp"
#include "pou/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

namespace pou {

namespace {

void require_vertices_cover(const std::vector<VertexLabel>& vertices,
                            const std::vector<SubsetKey>& facets) {
    for (const auto& facet : facets) {
        for (const auto& label : facet.labels()) {
            if (!std::binary_search(vertices.begin(), vertices.end(), label)) {
                throw DomainError("facet_vertices",
                                  "facet label \"" + label + "\" is not a vertex");
            }
        }
    }
}

std::vector<SubsetKey> drop_dominated(std::vector<SubsetKey> facets) {
    // Largest first, then keep a facet only if no kept facet contains it.
    std::sort(facets.begin(), facets.end(), [](const SubsetKey& a, const SubsetKey& b) {
        if (a.size() != b.size()) return a.size() > b.size();
        return a < b;
    });
    std::vector<SubsetKey> kept;
    for (auto& facet : facets) {
        const bool dominated =
            std::any_of(kept.begin(), kept.end(), [&facet](const SubsetKey& other) {
                return facet.subset_of(other);
            });
        if (!dominated) kept.push_back(std::move(facet));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

unsigned long long saturating_add(unsigned long long a, unsigned long long b) {
    const auto limit = std::numeric_limits<unsigned long long>::max();
    return (a > limit - b) ? limit : a + b;
}

unsigned long long saturating_factorial(std::size_t n) {
    const auto limit = std::numeric_limits<unsigned long long>::max();
    unsigned long long result = 1;
    for (std::size_t i = 2; i <= n; ++i) {
        if (result > limit / i) return limit;
        result *= i;
    }
    return result;
}

[[noreturn]] void throw_cap(std::size_t cap) {
    throw DomainError("face_enumeration_cap",
                      "face enumeration exceeds the cap of " + std::to_string(cap));
}

} // namespace

AbstractComplex::AbstractComplex(std::vector<VertexLabel> vertices,
                                 std::vector<SubsetKey> facets) {
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    require_vertices_cover(vertices, facets);
    vertices_ = std::move(vertices);
    facets_ = drop_dominated(std::move(facets));
}

AbstractComplex AbstractComplex::from_facets(std::vector<SubsetKey> facets) {
    std::vector<VertexLabel> vertices;
    for (const auto& facet : facets) {
        vertices.insert(vertices.end(), facet.labels().begin(), facet.labels().end());
    }
    return AbstractComplex(std::move(vertices), std::move(facets));
}

AbstractComplex AbstractComplex::from_canonical_facets(std::vector<VertexLabel> vertices,
                                                       std::vector<SubsetKey> facets) {
    AbstractComplex out;
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    out.vertices_ = std::move(vertices);
    out.facets_ = std::move(facets);
    return out;
}

bool AbstractComplex::has_vertex(const VertexLabel& label) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), label);
}

bool is_simplex(const AbstractComplex& complex, const SubsetKey& key) {
    return std::any_of(complex.facets().begin(), complex.facets().end(),
                       [&key](const SubsetKey& facet) { return key.subset_of(facet); });
}

std::vector<SubsetKey> enumerate_simplices(const AbstractComplex& complex,
                                           std::size_t cap) {
    const std::size_t attempt_cap =
        cap > std::numeric_limits<std::size_t>::max() / 16
            ? std::numeric_limits<std::size_t>::max()
            : cap * 16;
    std::set<SubsetKey> acc;
    std::size_t attempts = 0;

    std::vector<VertexLabel> current;
    // Depth-first include/exclude over the facet's labels; every visited node
    // counts as an attempt so oversized facets bail out early even when the
    // distinct-face set stays small.
    auto walk = [&](auto&& self, const std::vector<VertexLabel>& labels,
                    std::size_t next) -> void {
        if (++attempts > attempt_cap) throw_cap(cap);
        if (next == labels.size()) {
            if (!current.empty()) {
                acc.insert(SubsetKey(current));
                if (acc.size() > cap) throw_cap(cap);
            }
            return;
        }
        current.push_back(labels[next]);
        self(self, labels, next + 1);
        current.pop_back();
        self(self, labels, next + 1);
    };
    for (const auto& facet : complex.facets()) {
        walk(walk, facet.labels(), 0);
    }
    return {acc.begin(), acc.end()};
}

long long euler_characteristic(const AbstractComplex& complex, std::size_t cap) {
    long long chi = 0;
    for (const auto& simplex : enumerate_simplices(complex, cap)) {
        chi += (simplex.size() % 2 == 1) ? 1 : -1;
    }
    return chi;
}

VertexLabel subdivision_vertex_name(const SubsetKey& simplex) {
    VertexLabel name;
    for (const auto& label : simplex.labels()) {
        if (!name.empty()) name.push_back(kSubdivisionSeparator);
        name += label;
    }
    return name;
}

AbstractComplex barycentric_subdivision(const AbstractComplex& complex, std::size_t cap) {
    unsigned long long facet_count = 0;
    for (const auto& facet : complex.facets()) {
        facet_count = saturating_add(facet_count, saturating_factorial(facet.size()));
        if (facet_count > cap) throw_cap(cap);
    }

    std::vector<VertexLabel> vertices;
    for (const auto& simplex : enumerate_simplices(complex, cap)) {
        vertices.push_back(subdivision_vertex_name(simplex));
    }

    std::vector<SubsetKey> facets;
    facets.reserve(static_cast<std::size_t>(facet_count));
    for (const auto& facet : complex.facets()) {
        std::vector<VertexLabel> perm = facet.labels();
        // One maximal chain per permutation: prefixes of the permutation.
        do {
            std::vector<VertexLabel> chain_names;
            chain_names.reserve(perm.size());
            std::vector<VertexLabel> prefix;
            prefix.reserve(perm.size());
            for (const auto& label : perm) {
                prefix.push_back(label);
                chain_names.push_back(subdivision_vertex_name(SubsetKey(prefix)));
            }
            facets.emplace_back(std::move(chain_names));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return AbstractComplex::from_canonical_facets(std::move(vertices), std::move(facets));
}

AbstractComplex join_complexes(const AbstractComplex& k, const AbstractComplex& l) {
    for (const auto& label : k.vertices()) {
        if (l.has_vertex(label)) {
            throw DomainError("join_disjoint_vertices",
                              "label \"" + label + "\" appears on both sides");
        }
    }
    std::vector<VertexLabel> vertices = k.vertices();
    vertices.insert(vertices.end(), l.vertices().begin(), l.vertices().end());

    std::vector<SubsetKey> facets;
    if (k.facets().empty()) {
        facets = l.facets();
    } else if (l.facets().empty()) {
        facets = k.facets();
    } else {
        facets.reserve(k.facets().size() * l.facets().size());
        for (const auto& fk : k.facets()) {
            for (const auto& fl : l.facets()) {
                facets.push_back(fk.united_with(fl));
            }
        }
    }
    return AbstractComplex::from_canonical_facets(std::move(vertices), std::move(facets));
}

AbstractComplex nerve_of_sample(std::span<const ProbVector> points) {
    if (points.empty()) {
        throw DomainError("points_nonempty", "nerve of an empty family");
    }
    std::vector<SubsetKey> supports;
    supports.reserve(points.size());
    for (const auto& point : points) supports.push_back(point.support());
    std::vector<VertexLabel> vertices;
    for (const auto& support : supports) {
        vertices.insert(vertices.end(), support.labels().begin(), support.labels().end());
    }
    return AbstractComplex(std::move(vertices), std::move(supports));
}

ProbVector subdivision_coordinates(const ProbVector& x, const AbstractComplex& complex) {
    if (!is_simplex(complex, x.support())) {
        throw DomainError("support_simplex",
                          "support of the point is not a simplex of the complex");
    }
    const DerivedVector derivative = derive(x);
    std::map<VertexLabel, Rational> out;
    for (const auto& [key, value] : derivative.entries()) {
        out.emplace(subdivision_vertex_name(key), value);
    }
    return ProbVector(WeightVector(std::move(out)));
}

GeometricRealization::GeometricRealization(
    AbstractComplex complex, std::map<VertexLabel, std::vector<Rational>> coordinates)
    : complex_(std::move(complex)), coordinates_(std::move(coordinates)) {
    if (!coordinates_.empty()) {
        dimension_ = coordinates_.begin()->second.size();
    }
    for (const auto& [label, tuple] : coordinates_) {
        if (tuple.size() != dimension_) {
            throw DomainError("coordinate_dimension",
                              "coordinate tuples have mixed dimensions");
        }
    }
    for (const auto& label : complex_.vertices()) {
        if (!coordinates_.count(label)) {
            throw DomainError("realization_domain",
                              "vertex \"" + label + "\" has no coordinates");
        }
    }
}

std::vector<Rational> realize(const ProbVector& x, const GeometricRealization& geometry) {
    if (!is_simplex(geometry.complex(), x.support())) {
        throw DomainError("support_simplex",
                          "support of the point is not a simplex of the complex");
    }
    std::vector<Rational> acc(geometry.dimension(), Rational(0));
    for (const auto& [label, value] : x.entries()) {
        const auto& tuple = geometry.coordinates().at(label);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += value * tuple[i];
        }
    }
    return acc;
}

GeometricRealization barycentric_realization(const GeometricRealization& geometry,
                                             std::size_t cap) {
    std::map<VertexLabel, std::vector<Rational>> coords;
    for (const auto& simplex : enumerate_simplices(geometry.complex(), cap)) {
        std::vector<Rational> center(geometry.dimension(), Rational(0));
        for (const auto& label : simplex.labels()) {
            const auto& tuple = geometry.coordinates().at(label);
            for (std::size_t i = 0; i < center.size(); ++i) {
                center[i] += tuple[i];
            }
        }
        const Rational count(static_cast<unsigned long>(simplex.size()));
        for (auto& c : center) c /= count;
        coords.emplace(subdivision_vertex_name(simplex), std::move(center));
    }
    return GeometricRealization(barycentric_subdivision(geometry.complex(), cap),
                                std::move(coords));
}

StarRefinementResult star_refinement_witness(std::span<const ProbVector> points) {
    if (points.empty()) {
        throw DomainError("points_nonempty", "star refinement of an empty family");
    }
    StarRefinementResult result;
    result.witnesses.reserve(points.size());
    std::vector<DerivedVector> derivatives;
    derivatives.reserve(points.size());
    for (const auto& point : points) {
        // First strict maximum in sorted order = smallest label among the tied.
        const auto& entries = point.entries();
        auto best = entries.begin();
        for (auto it = std::next(entries.begin()); it != entries.end(); ++it) {
            if (it->second > best->second) best = it;
        }
        result.witnesses.push_back(best->first);
        derivatives.push_back(derive(point));
    }

    for (std::size_t i = 0; i < points.size() && result.ok(); ++i) {
        for (std::size_t j = 0; j < points.size() && result.ok(); ++j) {
            if (i == j) continue;
            for (const auto& [key, value] : derivatives[i].entries()) {
                if (derivatives[j].entries().count(key) &&
                    points[j].at(result.witnesses[i]) <= 0) {
                    result.counterexample = StarRefinementCounterexample{i, j, key};
                    break;
                }
            }
        }
    }
    return result;
}

LayerDisjointnessResult disjoint_layers_check(std::span<const ProbVector> points,
                                              int cardinality) {
    if (cardinality < 1) {
        throw DomainError("cardinality_positive", "cardinality must be >= 1");
    }
    const auto wanted = static_cast<std::size_t>(cardinality);
    LayerDisjointnessResult result;
    result.assignments.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::optional<SubsetKey> found;
        const DerivedVector derivative = derive(points[i]);
        for (const auto& [key, value] : derivative.entries()) {
            if (key.size() != wanted) continue;
            if (found.has_value()) {
                result.ok = false;
                result.violating_point = i;
                break;
            }
            found = key;
        }
        result.assignments.push_back(std::move(found));
        if (!result.ok) break;
    }
    return result;
}

RestrictResult restrict_nerve(std::span<const ProbVector> points,
                              const std::set<std::size_t>& subset) {
    if (subset.empty()) {
        throw DomainError("subset_nonempty", "restriction subset is empty");
    }
    for (const std::size_t index : subset) {
        if (index >= points.size()) {
            throw DomainError("subset_indices_range",
                              "subset index " + std::to_string(index) +
                                  " out of range for " + std::to_string(points.size()) +
                                  " points");
        }
    }

    std::vector<DerivedVector> derivatives;
    derivatives.reserve(points.size());
    for (const auto& point : points) derivatives.push_back(derive(point));

    std::set<SubsetKey> realized;
    for (const std::size_t index : subset) {
        for (const auto& [key, value] : derivatives[index].entries()) {
            realized.insert(key);
        }
    }

    RestrictResult result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::map<SubsetKey, Rational> kept;
        Rational kept_mass(0);
        for (const auto& [key, value] : derivatives[i].entries()) {
            if (realized.count(key)) {
                kept.emplace(key, value);
                kept_mass += value;
            }
        }
        if (kept_mass == 0) continue;
        for (auto& [key, value] : kept) value /= kept_mass;
        result.kept_indices.push_back(i);
        result.points.push_back(integrate(DerivedVector(std::move(kept))));
    }
    return result;
}

} // namespace pou
