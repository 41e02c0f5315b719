#include "pou/calculus.hpp"
#include "pou/complexes.hpp"
#include "pou/errors.hpp"
#include "pou/suites.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

using namespace pou;

namespace {

SubsetKey key(std::vector<VertexLabel> labels) { return SubsetKey(std::move(labels)); }

ProbVector pv(std::map<VertexLabel, Rational> entries) {
    return ProbVector(std::move(entries));
}

AbstractComplex full_triangle() {
    return AbstractComplex::from_facets({key({"a", "b", "c"})});
}

AbstractComplex hollow_triangle() {
    return AbstractComplex::from_facets(
        {key({"a", "b"}), key({"b", "c"}), key({"a", "c"})});
}

AbstractComplex hollow_tetrahedron() {
    return AbstractComplex::from_facets({key({"a", "b", "c"}), key({"a", "b", "d"}),
                                         key({"a", "c", "d"}), key({"b", "c", "d"})});
}

// Chain counter used as an independent oracle for subdivision facet counts:
// the facets of the subdivision are the maximal chains of the face poset, and
// for a complex whose facets all have size m there are (number of facets) * m!
// of them only when no chain extends across two facets, which is exactly the
// maximal-chain count computed here by downward recursion.
long long count_maximal_chains(const AbstractComplex& complex) {
    std::vector<SubsetKey> simplices = enumerate_simplices(complex);
    // Process by increasing cardinality so every sub-simplex is ready first;
    // the enumeration order is lexicographic, which is not the same thing.
    std::stable_sort(simplices.begin(), simplices.end(),
                     [](const SubsetKey& a, const SubsetKey& b) {
                         return a.size() < b.size();
                     });
    // chains_ending_at[s] = number of maximal-length chains descending from s
    // through all cardinalities down to 1.
    std::map<SubsetKey, long long> chains_ending_at;
    for (const auto& simplex : simplices) {
        if (simplex.size() == 1) {
            chains_ending_at[simplex] = 1;
            continue;
        }
        long long total = 0;
        for (const auto& candidate : simplices) {
            if (candidate.size() + 1 == simplex.size() &&
                candidate.subset_of(simplex)) {
                total += chains_ending_at.at(candidate);
            }
        }
        chains_ending_at[simplex] = total;
    }
    long long maximal = 0;
    for (const auto& facet : complex.facets()) {
        maximal += chains_ending_at.at(facet);
    }
    return maximal;
}

} // namespace

TEST_CASE("complexes canonicalize their presentation") {
    const AbstractComplex k({"c", "b", "a", "a"},
                            {key({"b", "a"}), key({"a"}), key({"b", "a"})});
    CHECK(k.vertices() == std::vector<VertexLabel>{"a", "b", "c"});
    CHECK(k.facets() == std::vector<SubsetKey>{key({"a", "b"})});
    CHECK(k.has_vertex("c"));
    CHECK_FALSE(k.has_vertex("d"));

    // Facet members must be declared vertices.
    CHECK_THROWS_AS(AbstractComplex({"a"}, {key({"a", "b"})}), DomainError);

    CHECK(AbstractComplex{} == AbstractComplex::from_facets({}));
    CHECK(AbstractComplex{}.vertices().empty());
}

TEST_CASE("simplex membership is containment in a facet") {
    const AbstractComplex k = hollow_triangle();
    CHECK(is_simplex(k, key({"a"})));
    CHECK(is_simplex(k, key({"a", "b"})));
    CHECK_FALSE(is_simplex(k, key({"a", "b", "c"})));
    CHECK_FALSE(is_simplex(k, key({"d"})));
}

TEST_CASE("simplex enumeration is sorted, complete, and capped") {
    const std::vector<SubsetKey> faces = enumerate_simplices(full_triangle());
    CHECK(faces.size() == 7);
    CHECK(std::is_sorted(faces.begin(), faces.end()));
    for (const auto& face : faces) CHECK(is_simplex(full_triangle(), face));

    CHECK(enumerate_simplices(hollow_triangle()).size() == 6);

    try {
        enumerate_simplices(full_triangle(), 3);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(e.precondition() == "face_enumeration_cap");
    }
}

TEST_CASE("euler characteristic of the standard examples") {
    CHECK(euler_characteristic(AbstractComplex::from_facets({key({"a"})})) == 1);
    CHECK(euler_characteristic(full_triangle()) == 1);
    CHECK(euler_characteristic(hollow_triangle()) == 0);  // circle
    CHECK(euler_characteristic(hollow_tetrahedron()) == 2);  // sphere
    CHECK(euler_characteristic(AbstractComplex{}) == 0);
}

TEST_CASE("subdivision vertex names join sorted members") {
    CHECK(subdivision_vertex_name(key({"b", "a"})) == "a|b");
    CHECK(subdivision_vertex_name(key({"c"})) == "c");
}

TEST_CASE("barycentric subdivision of the full triangle") {
    const AbstractComplex sd = barycentric_subdivision(full_triangle());
    CHECK(sd.vertices().size() == 7);  // one per simplex
    CHECK(sd.facets().size() == 6);    // one per permutation of the facet
    CHECK(sd.has_vertex("a|b|c"));
    CHECK(sd.has_vertex("a|c"));
    CHECK(sd.has_vertex("b"));

    // Every facet is a full flag: sizes 1, 2, 3 nested by inclusion, which
    // the '|'-split names make directly visible.
    for (const auto& facet : sd.facets()) {
        CHECK(facet.size() == 3);
        CHECK(is_simplex(sd, facet));
    }
    CHECK(is_simplex(sd, key({"a", "a|b", "a|b|c"})));
    CHECK_FALSE(is_simplex(sd, key({"a", "b"})));  // old edge is subdivided away

    // A subdivision preserves the euler characteristic.
    CHECK(euler_characteristic(sd) == 1);
}

TEST_CASE("barycentric subdivision of small fixtures") {
    const AbstractComplex point = AbstractComplex::from_facets({key({"a"})});
    CHECK(barycentric_subdivision(point) == point);

    const AbstractComplex edge = AbstractComplex::from_facets({key({"a", "b"})});
    const AbstractComplex sd_edge = barycentric_subdivision(edge);
    CHECK(sd_edge.vertices() == std::vector<VertexLabel>{"a", "a|b", "b"});
    CHECK(sd_edge.facets() ==
          std::vector<SubsetKey>{key({"a", "a|b"}), key({"a|b", "b"})});

    CHECK(barycentric_subdivision(AbstractComplex{}) == AbstractComplex{});

    const AbstractComplex sd_hollow = barycentric_subdivision(hollow_triangle());
    CHECK(sd_hollow.vertices().size() == 6);
    CHECK(sd_hollow.facets().size() == 6);
    CHECK(euler_characteristic(sd_hollow) == 0);
}

TEST_CASE("subdivision facet counts match the chain-counting oracle") {
    using suites::CaseRng;
    for (std::uint64_t i = 0; i < 40; ++i) {
        CaseRng rng(21, i);
        // Random small complex: up to 4 facets over up to 6 labels.
        std::vector<SubsetKey> facets;
        const std::vector<VertexLabel> labels = suites::alphabet_labels(6);
        const std::size_t facet_count = 1 + rng.below(4);
        for (std::size_t f = 0; f < facet_count; ++f) {
            std::set<VertexLabel> members;
            const std::size_t size = 1 + rng.below(4);
            while (members.size() < size) {
                members.insert(labels[rng.below(labels.size())]);
            }
            facets.emplace_back(
                std::vector<VertexLabel>(members.begin(), members.end()));
        }
        const AbstractComplex complex = AbstractComplex::from_facets(std::move(facets));
        const AbstractComplex sd = barycentric_subdivision(complex);
        CHECK(sd.vertices().size() == enumerate_simplices(complex).size());
        CHECK(static_cast<long long>(sd.facets().size()) ==
              count_maximal_chains(complex));
        CHECK(euler_characteristic(sd) == euler_characteristic(complex));
    }
}

TEST_CASE("iterated subdivision keeps the euler characteristic") {
    AbstractComplex sphere = hollow_tetrahedron();
    for (int round = 0; round < 3; ++round) {
        sphere = barycentric_subdivision(sphere);
        CHECK(euler_characteristic(sphere) == 2);
    }
    // Round by round: 14, then 74, then 74 + 216 + 144 vertices.
    CHECK(sphere.vertices().size() == 434);
}

TEST_CASE("subdivision respects its cap") {
    // One facet with 10 vertices has 10! = 3628800 chains, over the cap.
    std::vector<VertexLabel> many;
    for (char c = 'a'; c < 'a' + 10; ++c) many.emplace_back(1, c);
    const AbstractComplex big = AbstractComplex::from_facets({SubsetKey(many)});
    try {
        barycentric_subdivision(big);
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(e.precondition() == "face_enumeration_cap");
    }
}

TEST_CASE("join of complexes on small fixtures") {
    const AbstractComplex p = AbstractComplex::from_facets({key({"p"})});
    const AbstractComplex q = AbstractComplex::from_facets({key({"q"})});
    CHECK(join_complexes(p, q) == AbstractComplex::from_facets({key({"p", "q"})}));

    const AbstractComplex edge = AbstractComplex::from_facets({key({"a", "b"})});
    CHECK(join_complexes(edge, p) ==
          AbstractComplex::from_facets({key({"a", "b", "p"})}));

    // Cone over the hollow triangle: three filled triangles through the apex.
    const AbstractComplex cone = join_complexes(hollow_triangle(), p);
    CHECK(cone.facets() == std::vector<SubsetKey>{key({"a", "b", "p"}),
                                                  key({"a", "c", "p"}),
                                                  key({"b", "c", "p"})});
    CHECK(euler_characteristic(cone) == 1);

    CHECK(join_complexes(AbstractComplex{}, edge) == edge);
    CHECK(join_complexes(edge, AbstractComplex{}) == edge);

    try {
        join_complexes(edge, AbstractComplex::from_facets({key({"b"})}));
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(e.precondition() == "join_disjoint_vertices");
    }
}

TEST_CASE("join membership follows the disjoint-trace law") {
    const AbstractComplex k = hollow_triangle();
    const AbstractComplex l =
        AbstractComplex::from_facets({key({"x", "y"}), key({"z"})});
    const AbstractComplex joined = join_complexes(k, l);

    // Brute force over every nonempty subset of the six labels.
    const std::vector<VertexLabel> universe = {"a", "b", "c", "x", "y", "z"};
    for (unsigned mask = 1; mask < 64; ++mask) {
        std::vector<VertexLabel> left, right, all;
        for (unsigned i = 0; i < 6; ++i) {
            if (!(mask & (1u << i))) continue;
            all.push_back(universe[i]);
            (i < 3 ? left : right).push_back(universe[i]);
        }
        const bool left_ok = left.empty() || is_simplex(k, SubsetKey(left));
        const bool right_ok = right.empty() || is_simplex(l, SubsetKey(right));
        CHECK(is_simplex(joined, SubsetKey(all)) == (left_ok && right_ok));
    }

    // Euler characteristic obeys the join product rule
    // 1 - chi(K*L) = (1 - chi(K)) * (1 - chi(L)).
    const long long ck = euler_characteristic(k);
    const long long cl = euler_characteristic(l);
    CHECK(1 - euler_characteristic(joined) == (1 - ck) * (1 - cl));
}

TEST_CASE("nerve of a family of points") {
    const std::vector<ProbVector> points = {
        pv({{"a", Rational(1)}}),
        pv({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}),
        pv({{"b", Rational(2, 3)}, {"c", Rational(1, 3)}}),
    };
    const AbstractComplex nerve = nerve_of_sample(points);
    CHECK(nerve.vertices() == std::vector<VertexLabel>{"a", "b", "c"});
    CHECK(nerve.facets() ==
          std::vector<SubsetKey>{key({"a", "b"}), key({"b", "c"})});

    try {
        nerve_of_sample(std::vector<ProbVector>{});
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(e.precondition() == "points_nonempty");
    }
}

TEST_CASE("subdivision coordinates of the worked example") {
    const ProbVector x = pv(
        {{"a", Rational(1, 2)}, {"b", Rational(1, 3)}, {"c", Rational(1, 6)}});
    const ProbVector moved = subdivision_coordinates(x, full_triangle());
    CHECK(moved == pv({{"a", Rational(1, 6)},
                       {"a|b", Rational(1, 3)},
                       {"a|b|c", Rational(1, 2)}}));
    CHECK(is_simplex(barycentric_subdivision(full_triangle()), moved.support()));

    // The support must be a simplex of the complex being subdivided.
    try {
        subdivision_coordinates(x, hollow_triangle());
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(e.precondition() == "support_simplex");
    }
}

TEST_CASE("geometric realization validates its input") {
    const std::map<VertexLabel, std::vector<Rational>> plane = {
        {"a", {Rational(0), Rational(0)}},
        {"b", {Rational(1), Rational(0)}},
        {"c", {Rational(0), Rational(1)}},
    };
    const GeometricRealization geometry(full_triangle(), plane);
    CHECK(geometry.dimension() == 2);

    // Missing vertex coordinates.
    CHECK_THROWS_AS(GeometricRealization(
                        full_triangle(),
                        {{"a", {Rational(0)}}, {"b", {Rational(1)}}}),
                    DomainError);
    // Mixed ambient dimensions.
    CHECK_THROWS_AS(GeometricRealization(
                        AbstractComplex::from_facets({key({"a", "b"})}),
                        {{"a", {Rational(0)}}, {"b", {Rational(1), Rational(0)}}}),
                    DomainError);

    const ProbVector x = pv(
        {{"a", Rational(1, 2)}, {"b", Rational(1, 3)}, {"c", Rational(1, 6)}});
    CHECK(realize(x, geometry) ==
          std::vector<Rational>{Rational(1, 3), Rational(1, 6)});

    const GeometricRealization hollow(hollow_triangle(), plane);
    CHECK_THROWS_AS(realize(x, hollow), DomainError);
}

TEST_CASE("barycentric realization places vertices at barycenters") {
    const GeometricRealization geometry(
        full_triangle(), {{"a", {Rational(0), Rational(0)}},
                          {"b", {Rational(1), Rational(0)}},
                          {"c", {Rational(0), Rational(1)}}});
    const GeometricRealization sub = barycentric_realization(geometry);
    CHECK(sub.complex() == barycentric_subdivision(full_triangle()));
    CHECK(sub.coordinates().at("a|b") ==
          std::vector<Rational>{Rational(1, 2), Rational(0)});
    CHECK(sub.coordinates().at("a|b|c") ==
          std::vector<Rational>{Rational(1, 3), Rational(1, 3)});
    CHECK(sub.coordinates().at("c") == std::vector<Rational>{Rational(0), Rational(1)});
}

TEST_CASE("subdivision coordinates realize to the same ambient point") {
    using suites::CaseRng;
    const GeometricRealization triangle(
        full_triangle(), {{"a", {Rational(0), Rational(0)}},
                          {"b", {Rational(1), Rational(0)}},
                          {"c", {Rational(0), Rational(1)}}});
    const GeometricRealization tetra(
        AbstractComplex::from_facets({key({"a", "b", "c", "d"})}),
        {{"a", {Rational(0), Rational(0), Rational(0)}},
         {"b", {Rational(1), Rational(0), Rational(0)}},
         {"c", {Rational(0), Rational(1), Rational(0)}},
         {"d", {Rational(0), Rational(0), Rational(1)}}});

    for (const GeometricRealization& geometry : {triangle, tetra}) {
        const GeometricRealization sub = barycentric_realization(geometry);
        const std::vector<VertexLabel> labels = geometry.complex().vertices();
        for (std::uint64_t i = 0; i < 200; ++i) {
            CaseRng rng(22, i);
            // Random point on a random face, not only interior points.
            std::map<VertexLabel, Rational> entries;
            const std::size_t size = 1 + rng.below(labels.size());
            Rational total(0);
            std::vector<VertexLabel> chosen = labels;
            for (std::size_t k = chosen.size(); k > 1; --k) {
                std::swap(chosen[k - 1], chosen[rng.below(k)]);
            }
            chosen.resize(size);
            for (const auto& label : chosen) {
                const Rational w(static_cast<long>(1 + rng.below(1000)));
                entries[label] = w;
                total += w;
            }
            for (auto& [label, value] : entries) value /= total;
            const ProbVector x = pv(entries);
            const ProbVector moved = subdivision_coordinates(x, geometry.complex());
            CHECK(realize(x, geometry) == realize(moved, sub));
        }
    }
}

TEST_CASE("star refinement witnesses on fixed points") {
    const std::vector<ProbVector> points = {
        pv({{"a", Rational(3, 5)}, {"b", Rational(2, 5)}}),
        pv({{"a", Rational(2, 5)}, {"b", Rational(3, 5)}}),
        pv({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}),
        pv({{"c", Rational(1)}}),
    };
    const StarRefinementResult result = star_refinement_witness(points);
    REQUIRE(result.witnesses.size() == 4);
    CHECK(result.witnesses[0] == "a");
    CHECK(result.witnesses[1] == "b");
    CHECK(result.witnesses[2] == "a");  // tie broken toward the smaller label
    CHECK(result.witnesses[3] == "c");
    CHECK(result.ok());
}

TEST_CASE("star refinement holds on random families") {
    using suites::CaseRng;
    for (std::uint64_t i = 0; i < 50; ++i) {
        CaseRng rng(23, i);
        std::vector<ProbVector> points;
        const std::size_t count = 2 + rng.below(19);
        points.reserve(count);
        for (std::size_t p = 0; p < count; ++p) {
            points.push_back(suites::random_prob_vector(rng, 5, 5));
        }
        const StarRefinementResult result = star_refinement_witness(points);
        CHECK(result.ok());
        REQUIRE(result.witnesses.size() == points.size());
        for (std::size_t p = 0; p < points.size(); ++p) {
            // The witness attains the maximum weight.
            CHECK(points[p].at(result.witnesses[p]) ==
                  points[p].weights().max_weight());
        }
        // Re-verify the property the checker claims, straight from the
        // definition: shared derived key implies mutual positive weight on
        // each other's witness.
        for (std::size_t a = 0; a < points.size(); ++a) {
            for (std::size_t b = a + 1; b < points.size(); ++b) {
                if (!common_simplex(points[a], points[b])) continue;
                CHECK(points[a].at(result.witnesses[b]) > 0);
                CHECK(points[b].at(result.witnesses[a]) > 0);
            }
        }
    }
}

TEST_CASE("layer disjointness assigns at most one key per cardinality") {
    const std::vector<ProbVector> points = {
        pv({{"a", Rational(1, 2)}, {"b", Rational(1, 3)}, {"c", Rational(1, 6)}}),
        pv({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}),
        pv({{"c", Rational(1)}}),
    };
    const LayerDisjointnessResult ones = disjoint_layers_check(points, 1);
    CHECK(ones.ok);
    REQUIRE(ones.assignments.size() == 3);
    CHECK(ones.assignments[0] == key({"a"}));
    CHECK_FALSE(ones.assignments[1].has_value());
    CHECK(ones.assignments[2] == key({"c"}));

    const LayerDisjointnessResult twos = disjoint_layers_check(points, 2);
    CHECK(twos.assignments[0] == key({"a", "b"}));
    CHECK(twos.assignments[1] == key({"a", "b"}));
    CHECK_FALSE(twos.assignments[2].has_value());

    CHECK_THROWS_AS(disjoint_layers_check(points, 0), DomainError);
    CHECK_THROWS_AS(disjoint_layers_check(points, -2), DomainError);
}

TEST_CASE("restriction keeps the subfamily and renormalizes the rest") {
    const std::vector<ProbVector> points = {
        pv({{"a", Rational(1)}}),
        pv({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}),
        pv({{"b", Rational(1)}}),
    };
    const RestrictResult result = restrict_nerve(points, {1});
    CHECK(result.kept_indices == std::vector<std::size_t>{1});
    REQUIRE(result.points.size() == 1);
    CHECK(result.points[0] == points[1]);

    // A point sharing only part of its chain gets renormalized onto it.
    const std::vector<ProbVector> richer = {
        pv({{"a", Rational(1, 2)}, {"b", Rational(1, 3)}, {"c", Rational(1, 6)}}),
        pv({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}),
    };
    const RestrictResult partial = restrict_nerve(richer, {1});
    CHECK(partial.kept_indices == (std::vector<std::size_t>{0, 1}));
    CHECK(partial.points[0] == pv({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}}));
    CHECK(partial.points[1] == richer[1]);

    CHECK_THROWS_AS(restrict_nerve(points, {}), DomainError);
    CHECK_THROWS_AS(restrict_nerve(points, {7}), DomainError);
}

TEST_CASE("restriction preserves the nerve of the subfamily") {
    using suites::CaseRng;
    for (std::uint64_t i = 0; i < 100; ++i) {
        CaseRng rng(24, i);
        std::vector<ProbVector> points;
        const std::size_t count = 2 + rng.below(9);
        for (std::size_t p = 0; p < count; ++p) {
            points.push_back(suites::random_prob_vector(rng, 5, 4));
        }
        std::set<std::size_t> subset;
        const std::size_t wanted = 1 + rng.below(count);
        while (subset.size() < wanted) subset.insert(rng.below(count));

        const RestrictResult result = restrict_nerve(points, subset);

        // Points of the chosen subfamily survive verbatim.
        std::vector<ProbVector> subfamily;
        for (std::size_t index : subset) {
            subfamily.push_back(points[index]);
            const auto where = std::find(result.kept_indices.begin(),
                                         result.kept_indices.end(), index);
            REQUIRE(where != result.kept_indices.end());
            CHECK(result.points[where - result.kept_indices.begin()] ==
                  points[index]);
        }
        CHECK(nerve_of_sample(result.points) == nerve_of_sample(subfamily));
        CHECK(std::is_sorted(result.kept_indices.begin(), result.kept_indices.end()));
    }
}
