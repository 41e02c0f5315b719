#include "pou/suites.hpp"

#include "pou/batch.hpp"
#include "pou/calculus.hpp"
#include "pou/complexes.hpp"
#include "pou/detail/parallel.hpp"
#include "pou/errors.hpp"
#include "pou/json_io.hpp"
#include "pou/sampling.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

namespace pou::suites {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

CaseRng::CaseRng(std::uint64_t seed, std::uint64_t index)
    : state_(mix64(seed ^ (kGolden * (index + 1)))) {}

std::uint64_t CaseRng::next() {
    state_ += kGolden;
    return mix64(state_);
}

std::uint64_t CaseRng::below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    return next() % bound;
}

std::vector<VertexLabel> alphabet_labels(int n) {
    std::vector<VertexLabel> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n && i < 26; ++i) {
        out.emplace_back(1, static_cast<char>('a' + i));
    }
    return out;
}

namespace {

// A draw of `count` distinct indices from [0, alphabet), in draw order.
std::vector<int> draw_indices(CaseRng& rng, int alphabet, int count) {
    std::vector<int> idx(static_cast<std::size_t>(alphabet));
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < count; ++i) {
        const auto j = i + static_cast<int>(rng.below(
                               static_cast<std::uint64_t>(alphabet - i)));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    idx.resize(static_cast<std::size_t>(count));
    return idx;
}

std::vector<unsigned> draw_weights(CaseRng& rng, std::size_t count) {
    std::vector<unsigned> w(count);
    for (auto& v : w) v = 1 + static_cast<unsigned>(rng.below(1000));
    return w;
}

} // namespace

ProbVector random_prob_vector(CaseRng& rng, int alphabet, int max_support) {
    const auto labels = alphabet_labels(alphabet);
    const int support = 1 + static_cast<int>(rng.below(
                                static_cast<std::uint64_t>(max_support)));
    const auto idx = draw_indices(rng, alphabet, support);
    const auto w = draw_weights(rng, idx.size());
    const unsigned total = std::accumulate(w.begin(), w.end(), 0u);
    std::map<VertexLabel, Rational> entries;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        entries.emplace(labels[static_cast<std::size_t>(idx[i])],
                        Rational(BigInt(w[i]), BigInt(total)));
    }
    return ProbVector(WeightVector(std::move(entries)));
}

DerivedVector random_chain_vector(CaseRng& rng, int alphabet, int max_chain) {
    const auto labels = alphabet_labels(alphabet);
    const int length = 1 + static_cast<int>(rng.below(
                               static_cast<std::uint64_t>(max_chain)));
    // Distinct cut sizes in [1, alphabet], then prefixes of one permutation.
    std::vector<int> size_pool = draw_indices(rng, alphabet, length);
    for (auto& s : size_pool) s += 1;
    std::sort(size_pool.begin(), size_pool.end());
    const auto perm = draw_indices(rng, alphabet, alphabet);

    const auto w = draw_weights(rng, size_pool.size());
    const unsigned total = std::accumulate(w.begin(), w.end(), 0u);
    std::map<SubsetKey, Rational> entries;
    for (std::size_t k = 0; k < size_pool.size(); ++k) {
        std::vector<VertexLabel> members;
        members.reserve(static_cast<std::size_t>(size_pool[k]));
        for (int i = 0; i < size_pool[k]; ++i) {
            members.push_back(labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
        }
        entries.emplace(SubsetKey(std::move(members)),
                        Rational(BigInt(w[k]), BigInt(total)));
    }
    return DerivedVector(std::move(entries));
}

namespace {

struct CaseOutcome {
    bool pass = true;
    std::string counterexample;
    std::string note;
};

std::string show(const ProbVector& x) {
    io::Json obj = io::Json::object();
    for (const auto& [label, value] : x.entries()) obj[label] = format_rational(value);
    return obj.dump();
}

std::string show(const DerivedVector& d) {
    io::Json arr = io::Json::array();
    for (const auto& [key, value] : d.entries()) {
        io::Json entry = io::Json::object();
        io::Json members = io::Json::array();
        for (const auto& label : key.labels()) members.push_back(label);
        entry["key"] = std::move(members);
        entry["weight"] = format_rational(value);
        arr.push_back(std::move(entry));
    }
    return arr.dump();
}

CaseOutcome fail(std::string why) { return CaseOutcome{false, std::move(why), ""}; }

template <typename PerCase>
SuiteReport run_cases(const std::string& name, std::uint64_t seed, long long cases,
                      bool parallel, PerCase&& per_case) {
    SuiteReport report;
    report.suite = name;
    report.seed = seed;
    report.cases = cases;

    std::vector<CaseOutcome> outcomes(static_cast<std::size_t>(cases));
    detail::indexed_loop(static_cast<std::size_t>(cases), parallel, [&](std::size_t i) {
        CaseRng rng(seed, i);
        try {
            outcomes[i] = per_case(rng, i);
        } catch (const std::exception& e) {
            outcomes[i] = fail(std::string("unexpected error: ") + e.what());
        }
    });

    std::map<std::string, long long> note_tally;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].pass) {
            ++report.passes;
        } else {
            ++report.failures;
            if (report.counterexamples.size() <
                static_cast<std::size_t>(kMaxCounterexamples)) {
                report.counterexamples.push_back("case " + std::to_string(i) + ": " +
                                                 outcomes[i].counterexample);
            }
        }
        if (!outcomes[i].note.empty()) ++note_tally[outcomes[i].note];
    }
    for (const auto& [note, count] : note_tally) {
        report.notes.push_back(note + " (" + std::to_string(count) + " cases)");
    }
    return report;
}

// Independent derivative oracle straight from the defining formula: for every
// nonempty subset T of the universe, weight |T| * max(0, min inside - max
// outside). Exponential in the universe size; used only at small scale to
// cross-check the grouped implementation.
std::map<SubsetKey, Rational> oracle_derive(const ProbVector& x,
                                            const std::vector<VertexLabel>& universe) {
    std::map<SubsetKey, Rational> out;
    const std::size_t n = universe.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        std::optional<Rational> inside_min;
        Rational outside_max(0);
        std::vector<VertexLabel> members;
        for (std::size_t i = 0; i < n; ++i) {
            const Rational value = x.at(universe[i]);
            if (mask >> i & 1) {
                if (!inside_min || value < *inside_min) inside_min = value;
                members.push_back(universe[i]);
            } else if (value > outside_max) {
                outside_max = value;
            }
        }
        const Rational gap = *inside_min - outside_max;
        if (gap > 0) {
            out.emplace(SubsetKey(std::move(members)),
                        Rational(BigInt(members.size())) * gap);
        }
    }
    return out;
}

bool chain_holds(const DerivedVector& d) {
    std::vector<const SubsetKey*> keys;
    keys.reserve(d.entries().size());
    for (const auto& [key, value] : d.entries()) keys.push_back(&key);
    std::sort(keys.begin(), keys.end(), [](const SubsetKey* a, const SubsetKey* b) {
        return a->size() < b->size();
    });
    for (std::size_t i = 1; i < keys.size(); ++i) {
        if (!keys[i - 1]->subset_of(*keys[i])) return false;
    }
    return true;
}

// ---------------------------------------------------------------- suites --

SuiteReport suite_roundtrip(std::uint64_t seed, long long cases, bool parallel) {
    return run_cases("roundtrip", seed, cases, parallel,
                     [](CaseRng& rng, std::size_t) -> CaseOutcome {
                         const ProbVector x = random_prob_vector(rng, 8, 6);
                         if (integrate(derive(x)) != x) {
                             return fail("integrate(derive(x)) != x for x=" + show(x));
                         }
                         return {};
                     });
}

SuiteReport suite_inverse_roundtrip(std::uint64_t seed, long long cases, bool parallel) {
    return run_cases("inverse-roundtrip", seed, cases, parallel,
                     [](CaseRng& rng, std::size_t) -> CaseOutcome {
                         const DerivedVector d = random_chain_vector(rng, 8, 4);
                         if (derive(integrate(d)) != d) {
                             return fail("derive(integrate(d)) != d for d=" + show(d));
                         }
                         return {};
                     });
}

SuiteReport suite_chain_mass(std::uint64_t seed, long long cases, bool parallel) {
    return run_cases(
        "chain-mass", seed, cases, parallel,
        [](CaseRng& rng, std::size_t) -> CaseOutcome {
            const ProbVector x = random_prob_vector(rng, 8, 6);
            const DerivedVector d = derive(x);
            for (const auto& [key, value] : d.entries()) {
                if (value <= 0) {
                    return fail("nonpositive derived weight for x=" + show(x));
                }
            }
            if (d.total_mass() != 1) {
                return fail("derived mass " + format_rational(d.total_mass()) +
                            " != 1 for x=" + show(x));
            }
            if (!chain_holds(d)) {
                return fail("derived keys not a chain for x=" + show(x));
            }

            // Fully tied values must collapse to the single key = support.
            const auto labels = alphabet_labels(8);
            const int m = 1 + static_cast<int>(rng.below(6));
            std::map<VertexLabel, Rational> uniform;
            for (const int i : draw_indices(rng, 8, m)) {
                uniform.emplace(labels[static_cast<std::size_t>(i)],
                                Rational(1, static_cast<unsigned>(m)));
            }
            const ProbVector tied(WeightVector(std::move(uniform)));
            const DerivedVector dt = derive(tied);
            if (dt.entries().size() != 1 ||
                dt.entries().begin()->first != tied.support() ||
                dt.entries().begin()->second != 1) {
                return fail("tied input did not collapse to one key: x=" + show(tied) +
                            " derived=" + show(dt));
            }
            return {};
        });
}

SuiteReport suite_order_law(std::uint64_t seed, long long cases, bool parallel) {
    static const std::vector<std::vector<unsigned>> tie_patterns = {
        {1, 1},          {2, 1, 1},       {3, 3, 2}, {1, 1, 1, 1},
        {5, 2, 2, 1},    {4, 4, 4, 3, 3, 1}, {2, 2, 2, 2, 2, 2}};
    return run_cases(
        "order-law", seed, cases, parallel,
        [](CaseRng& rng, std::size_t i) -> CaseOutcome {
            const auto check = [](const ProbVector& x) {
                return order(x) == static_cast<int>(derive(x).max_key_size()) - 1;
            };
            const ProbVector x = random_prob_vector(rng, 8, 6);
            if (!check(x)) {
                return fail("order law fails for x=" + show(x));
            }
            const auto& pattern = tie_patterns[i % tie_patterns.size()];
            const auto labels = alphabet_labels(static_cast<int>(pattern.size()));
            const unsigned total =
                std::accumulate(pattern.begin(), pattern.end(), 0u);
            std::map<VertexLabel, Rational> entries;
            for (std::size_t k = 0; k < pattern.size(); ++k) {
                entries.emplace(labels[k], Rational(BigInt(pattern[k]), BigInt(total)));
            }
            const ProbVector tied(WeightVector(std::move(entries)));
            if (!check(tied)) {
                return fail("order law fails for tie pattern x=" + show(tied));
            }
            return {};
        });
}

struct GeometryFixture {
    AbstractComplex complex;
    GeometricRealization geometry;
    GeometricRealization subdivided_geometry;
};

GeometryFixture make_unit_simplex_fixture(int vertex_count) {
    const auto labels = alphabet_labels(vertex_count);
    AbstractComplex complex = AbstractComplex::from_facets({SubsetKey(labels)});
    // Standard embedding: first vertex at the origin, vertex i at e_{i-1}.
    std::map<VertexLabel, std::vector<Rational>> coords;
    const std::size_t dim = labels.size() - 1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        std::vector<Rational> tuple(dim, Rational(0));
        if (i > 0) tuple[i - 1] = 1;
        coords.emplace(labels[i], std::move(tuple));
    }
    GeometricRealization geometry(complex, std::move(coords));
    GeometricRealization subdivided = barycentric_realization(geometry);
    return GeometryFixture{std::move(complex), std::move(geometry), std::move(subdivided)};
}

SuiteReport suite_subdivision_geometry(std::uint64_t seed, long long cases,
                                       bool parallel) {
    const GeometryFixture triangle = make_unit_simplex_fixture(3);
    const GeometryFixture tetrahedron = make_unit_simplex_fixture(4);
    return run_cases(
        "subdivision-geometry", seed, cases, parallel,
        [&](CaseRng& rng, std::size_t) -> CaseOutcome {
            for (const GeometryFixture* fix : {&triangle, &tetrahedron}) {
                // Interior point: strictly positive on every vertex.
                const auto& labels = fix->complex.vertices();
                const auto w = draw_weights(rng, labels.size());
                const unsigned total = std::accumulate(w.begin(), w.end(), 0u);
                std::map<VertexLabel, Rational> entries;
                for (std::size_t i = 0; i < labels.size(); ++i) {
                    entries.emplace(labels[i], Rational(BigInt(w[i]), BigInt(total)));
                }
                const ProbVector x(WeightVector(std::move(entries)));

                const ProbVector in_subdivision =
                    subdivision_coordinates(x, fix->complex);
                if (!is_simplex(fix->subdivided_geometry.complex(),
                                in_subdivision.support())) {
                    return fail("subdivision support is not a simplex, x=" + show(x));
                }
                if (realize(x, fix->geometry) !=
                    realize(in_subdivision, fix->subdivided_geometry)) {
                    return fail("subdivision moved the realized point, x=" + show(x));
                }
            }
            return {};
        });
}

// Counts chains (totally ordered subsets) of the given simplices by length,
// by brute force over all subsets. The subdivision facet/face counts must
// match these numbers exactly.
std::map<std::size_t, long long> chain_counts(const std::vector<SubsetKey>& simplices) {
    std::map<std::size_t, long long> counts;
    const std::size_t n = simplices.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << n); ++mask) {
        std::vector<const SubsetKey*> chosen;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask >> i & 1) chosen.push_back(&simplices[i]);
        }
        std::sort(chosen.begin(), chosen.end(),
                  [](const SubsetKey* a, const SubsetKey* b) {
                      return a->size() < b->size();
                  });
        bool chain = true;
        for (std::size_t i = 1; i < chosen.size() && chain; ++i) {
            chain = chosen[i - 1]->subset_of(*chosen[i]);
        }
        if (chain) ++counts[chosen.size()];
    }
    return counts;
}

SuiteReport suite_subdivision_counts(std::uint64_t seed, long long cases,
                                     bool parallel) {
    return run_cases(
        "subdivision-counts", seed, cases, parallel,
        [](CaseRng&, std::size_t) -> CaseOutcome {
            const auto abc = alphabet_labels(3);
            const AbstractComplex triangle =
                AbstractComplex::from_facets({SubsetKey(abc)});

            // Independent oracle: count chains among the 7 simplices.
            const auto simplices = enumerate_simplices(triangle);
            if (simplices.size() != 7) {
                return fail("triangle has " + std::to_string(simplices.size()) +
                            " faces, expected 7");
            }
            const auto chains = chain_counts(simplices);
            const AbstractComplex subdivided = barycentric_subdivision(triangle);
            std::map<std::size_t, long long> actual;
            for (const auto& face : enumerate_simplices(subdivided)) {
                ++actual[face.size()];
            }
            if (chains != actual) {
                return fail("subdivision face counts disagree with chain counts");
            }
            if (actual[1] != 7 || actual[2] != 12 || actual[3] != 6) {
                return fail("triangle subdivision counts are " +
                            std::to_string(actual[1]) + "/" + std::to_string(actual[2]) +
                            "/" + std::to_string(actual[3]) + ", expected 7/12/6");
            }
            if (subdivided.vertices().size() != 7 || subdivided.facets().size() != 6) {
                return fail("triangle subdivision has wrong vertex/facet counts");
            }

            // Alternating face-count characteristic is a subdivision invariant;
            // check it through three iterations on three small complexes.
            const AbstractComplex hollow_triangle = AbstractComplex::from_facets(
                {SubsetKey({"a", "b"}), SubsetKey({"b", "c"}), SubsetKey({"a", "c"})});
            const AbstractComplex hollow_tetrahedron = AbstractComplex::from_facets(
                {SubsetKey({"a", "b", "c"}), SubsetKey({"a", "b", "d"}),
                 SubsetKey({"a", "c", "d"}), SubsetKey({"b", "c", "d"})});
            for (const AbstractComplex* base :
                 {&triangle, &hollow_triangle, &hollow_tetrahedron}) {
                const long long expected = euler_characteristic(*base);
                AbstractComplex current = *base;
                for (int step = 1; step <= 3; ++step) {
                    current = barycentric_subdivision(current);
                    const long long chi = euler_characteristic(current);
                    if (chi != expected) {
                        return fail("characteristic drifted from " +
                                    std::to_string(expected) + " to " +
                                    std::to_string(chi) + " at iteration " +
                                    std::to_string(step));
                    }
                }
            }
            return {};
        });
}

SuiteReport suite_join_laws(std::uint64_t seed, long long cases, bool parallel) {
    const auto make_families = [](const std::vector<VertexLabel>& v) {
        return std::vector<AbstractComplex>{
            AbstractComplex::from_facets({SubsetKey({v[0]})}),
            AbstractComplex::from_facets({SubsetKey({v[0], v[1]})}),
            AbstractComplex::from_facets({SubsetKey({v[0], v[1]}),
                                          SubsetKey({v[1], v[2]}),
                                          SubsetKey({v[0], v[2]})})};
    };
    const std::vector<AbstractComplex> left = make_families({"a", "b", "c"});
    const std::vector<AbstractComplex> right = make_families({"p", "q", "r"});

    return run_cases(
        "join-laws", seed, cases, parallel,
        [&](CaseRng& rng, std::size_t) -> CaseOutcome {
            const AbstractComplex& k = left[rng.below(left.size())];
            const AbstractComplex& l = right[rng.below(right.size())];
            const AbstractComplex joined = join_complexes(k, l);

            // Membership law, brute force over every nonempty subset of the
            // combined vertex set.
            std::vector<VertexLabel> all = k.vertices();
            all.insert(all.end(), l.vertices().begin(), l.vertices().end());
            const std::size_t nk = k.vertices().size();
            for (std::uint64_t mask = 1; mask < (std::uint64_t(1) << all.size());
                 ++mask) {
                std::vector<VertexLabel> trace_k;
                std::vector<VertexLabel> trace_l;
                for (std::size_t i = 0; i < all.size(); ++i) {
                    if (!(mask >> i & 1)) continue;
                    (i < nk ? trace_k : trace_l).push_back(all[i]);
                }
                std::vector<VertexLabel> whole = trace_k;
                whole.insert(whole.end(), trace_l.begin(), trace_l.end());
                const bool in_join = is_simplex(joined, SubsetKey(whole));
                const bool k_ok =
                    trace_k.empty() || is_simplex(k, SubsetKey(trace_k));
                const bool l_ok =
                    trace_l.empty() || is_simplex(l, SubsetKey(trace_l));
                if (in_join != (k_ok && l_ok)) {
                    return fail("join membership law fails on mask " +
                                std::to_string(mask));
                }
            }

            // Pointwise law: the join of points is the convex combination, and
            // its support is a simplex of the complex join.
            const auto random_point_on = [&rng](const AbstractComplex& c) {
                const SubsetKey& facet = c.facets()[rng.below(c.facets().size())];
                const std::uint64_t submask =
                    1 + rng.below((std::uint64_t(1) << facet.size()) - 1);
                std::vector<VertexLabel> members;
                for (std::size_t i = 0; i < facet.size(); ++i) {
                    if (submask >> i & 1) members.push_back(facet.labels()[i]);
                }
                const auto w = draw_weights(rng, members.size());
                const unsigned total = std::accumulate(w.begin(), w.end(), 0u);
                std::map<VertexLabel, Rational> entries;
                for (std::size_t i = 0; i < members.size(); ++i) {
                    entries.emplace(members[i], Rational(BigInt(w[i]), BigInt(total)));
                }
                return ProbVector(WeightVector(std::move(entries)));
            };
            const ProbVector f = random_point_on(k);
            const ProbVector g = random_point_on(l);
            const Rational alpha(BigInt(rng.below(65)), BigInt(64));
            const ProbVector h = join_points(f, g, alpha);
            const SubsetKey h_support = h.support();
            for (const auto& label : h_support.labels()) {
                const Rational expected =
                    alpha * f.at(label) + (Rational(1) - alpha) * g.at(label);
                if (h.at(label) != expected) {
                    return fail("join of points is not the convex combination at \"" +
                                label + "\"");
                }
            }
            // Support can only shrink at the endpoints, never grow.
            for (const auto& [label, value] : f.entries()) {
                if (alpha > 0 && h.at(label) <= 0) {
                    return fail("join dropped a left label with alpha > 0");
                }
            }
            for (const auto& [label, value] : g.entries()) {
                if (alpha < 1 && h.at(label) <= 0) {
                    return fail("join dropped a right label with alpha < 1");
                }
            }
            if (!is_simplex(joined, h.support())) {
                return fail("join point support " + show(h) +
                            " is not a simplex of the join");
            }
            return {};
        });
}

SuiteReport suite_star_refinement(std::uint64_t seed, long long cases, bool parallel) {
    return run_cases(
        "star-refinement", seed, cases, parallel,
        [](CaseRng& rng, std::size_t) -> CaseOutcome {
            const auto universe = alphabet_labels(5);
            std::vector<ProbVector> points;
            points.reserve(100);
            for (int i = 0; i < 100; ++i) {
                points.push_back(random_prob_vector(rng, 5, 5));
            }
            const StarRefinementResult result = star_refinement_witness(points);
            if (!result.ok()) {
                const auto& c = *result.counterexample;
                return fail("library found a counterexample at pair (" +
                            std::to_string(c.x_index) + ", " +
                            std::to_string(c.y_index) + ")");
            }

            // Independent verification from the defining formula.
            std::vector<std::map<SubsetKey, Rational>> oracle;
            std::vector<VertexLabel> witnesses;
            oracle.reserve(points.size());
            for (std::size_t i = 0; i < points.size(); ++i) {
                oracle.push_back(oracle_derive(points[i], universe));
                const auto& entries = points[i].entries();
                auto best = entries.begin();
                for (auto it = std::next(entries.begin()); it != entries.end(); ++it) {
                    if (it->second > best->second) best = it;
                }
                witnesses.push_back(best->first);
                if (witnesses[i] != result.witnesses[i]) {
                    return fail("witness mismatch at point " + std::to_string(i));
                }
                // The grouped derivative must agree with the brute-force one.
                const DerivedVector lib = derive(points[i]);
                if (std::map<SubsetKey, Rational>(lib.entries()) != oracle[i]) {
                    return fail("derivative disagrees with the defining formula for " +
                                show(points[i]));
                }
            }
            for (std::size_t i = 0; i < points.size(); ++i) {
                for (std::size_t j = i + 1; j < points.size(); ++j) {
                    bool shared = false;
                    for (const auto& [key, value] : oracle[i]) {
                        if (oracle[j].count(key)) {
                            shared = true;
                            break;
                        }
                    }
                    if (!shared) continue;
                    if (points[i].at(witnesses[j]) <= 0 ||
                        points[j].at(witnesses[i]) <= 0) {
                        return fail("witness property fails on pair (" +
                                    std::to_string(i) + ", " + std::to_string(j) +
                                    "): " + show(points[i]) + " vs " +
                                    show(points[j]));
                    }
                }
            }
            return {};
        });
}

SuiteReport suite_layer_disjointness(std::uint64_t seed, long long cases,
                                     bool parallel) {
    return run_cases(
        "layer-disjointness", seed, cases, parallel,
        [](CaseRng& rng, std::size_t) -> CaseOutcome {
            std::vector<ProbVector> family;
            family.reserve(4);
            for (int i = 0; i < 4; ++i) {
                family.push_back(random_prob_vector(rng, 8, 6));
            }
            for (int cardinality = 1; cardinality <= 6; ++cardinality) {
                const LayerDisjointnessResult result =
                    disjoint_layers_check(family, cardinality);
                if (!result.ok) {
                    return fail("two same-size keys at point " +
                                std::to_string(*result.violating_point) +
                                ", cardinality " + std::to_string(cardinality));
                }
                for (std::size_t i = 0; i < family.size(); ++i) {
                    // Recount directly from the derivative.
                    std::optional<SubsetKey> direct;
                    int count = 0;
                    const DerivedVector derivative = derive(family[i]);
                    for (const auto& [key, value] : derivative.entries()) {
                        if (key.size() == static_cast<std::size_t>(cardinality)) {
                            ++count;
                            direct = key;
                        }
                    }
                    if (count > 1) {
                        return fail("direct recount found " + std::to_string(count) +
                                    " keys of size " + std::to_string(cardinality) +
                                    " for " + show(family[i]));
                    }
                    if (result.assignments[i] != direct) {
                        return fail("assignment mismatch at point " + std::to_string(i));
                    }
                }
            }
            return {};
        });
}

SuiteReport suite_kernel_transforms(std::uint64_t seed, long long cases,
                                    bool parallel) {
    return run_cases(
        "kernel-transforms", seed, cases, parallel,
        [](CaseRng& rng, std::size_t) -> CaseOutcome {
            const ProbVector x = random_prob_vector(rng, 8, 6);
            const Rational top = x.weights().max_weight();

            // Shrinking along the label order of the support.
            const WeightVector shrunk = shrink_wellordered(x, x.weights().support());
            const Rational mass = shrunk.total_mass();
            if (mass <= 0 || mass > top) {
                return fail("shrink mass " + format_rational(mass) +
                            " outside (0, max] for x=" + show(x));
            }
            for (const auto& [label, value] : shrunk.entries()) {
                if (x.at(label) <= 0) {
                    return fail("shrink invented label \"" + label + "\"");
                }
            }

            // Dyadic splitting at depth 3: exact sup halving plus resummation.
            const auto layers = dyadic_layers(x, 3);
            if (layers.size() != 4) {
                return fail("expected 4 layers, got " + std::to_string(layers.size()));
            }
            // Layer sups halve at each step; the residual repeats the last sup.
            Rational expected_sup = top;
            for (std::size_t k = 0; k < layers.size(); ++k) {
                if (k + 1 < layers.size()) expected_sup /= 2;
                if (layers[k].max_weight() != expected_sup) {
                    return fail("layer sup at index " + std::to_string(k) + " is " +
                                format_rational(layers[k].max_weight()) +
                                ", expected " + format_rational(expected_sup) +
                                " for x=" + show(x));
                }
            }
            std::map<VertexLabel, Rational> resummed;
            for (const auto& layer : layers) {
                for (const auto& [label, value] : layer.entries()) {
                    resummed[label] += value;
                }
            }
            if (WeightVector(std::move(resummed)) != x.weights()) {
                return fail("layers do not resum to the input for x=" + show(x));
            }

            // Half-max approximation keeps its support inside the input's.
            if (!approximates(half_max_approx(x), x)) {
                return fail("half-max result does not approximate x=" + show(x));
            }

            // Order truncation at n = 0, 1, 2.
            std::string note;
            for (int n = 0; n <= 2; ++n) {
                try {
                    const ProbVector truncated = truncate_order(x, n);
                    if (!approximates(truncated, x)) {
                        return fail("truncation at " + std::to_string(n) +
                                    " does not approximate x=" + show(x));
                    }
                    if (order(truncated) > n) {
                        return fail("truncation at " + std::to_string(n) +
                                    " left order " + std::to_string(order(truncated)) +
                                    " for x=" + show(x));
                    }
                } catch (const DomainError& e) {
                    if (e.precondition() != "truncation_mass_zero") throw;
                    // Legitimate only when every derived key is too large.
                    std::size_t smallest = x.entries().size() + 1;
                    const DerivedVector derivative = derive(x);
                    for (const auto& [key, value] : derivative.entries()) {
                        smallest = std::min(smallest, key.size());
                    }
                    if (smallest <= static_cast<std::size_t>(n) + 1) {
                        return fail("spurious truncation error at order " +
                                    std::to_string(n) + " for x=" + show(x));
                    }
                    note = "truncation correctly reported zero kept mass";
                }
            }
            CaseOutcome outcome;
            outcome.note = std::move(note);
            return outcome;
        });
}

SuiteReport suite_homotopy_criterion(std::uint64_t seed, long long cases,
                                     bool parallel) {
    return run_cases(
        "homotopy-criterion", seed, cases, parallel,
        [](CaseRng& rng, std::size_t i) -> CaseOutcome {
            if (i == 0) {
                // The boundary pair: distance exactly 2, no shared key.
                const ProbVector f(std::map<VertexLabel, Rational>{{"a", 1}});
                const ProbVector g(std::map<VertexLabel, Rational>{{"b", 1}});
                if (subset_l1_distance(derive(f), derive(g)) != 2) {
                    return fail("disjoint singletons are not at derivative distance 2");
                }
                if (common_simplex(f, g).has_value()) {
                    return fail("disjoint singletons report a common simplex");
                }
            }
            const ProbVector f = random_prob_vector(rng, 8, 6);
            const ProbVector g = random_prob_vector(rng, 8, 6);
            const DerivedVector df = derive(f);
            const DerivedVector dg = derive(g);
            const Rational distance = subset_l1_distance(df, dg);
            const auto shared = common_simplex(f, g);
            if (shared.has_value() != (distance < 2)) {
                return fail("shared-key presence disagrees with distance " +
                            format_rational(distance) + " for f=" + show(f) +
                            " g=" + show(g));
            }
            if (shared.has_value()) {
                if (df.at(*shared) <= 0 || dg.at(*shared) <= 0) {
                    return fail("returned key is not shared, f=" + show(f) +
                                " g=" + show(g));
                }
                for (const auto& [key, value] : df.entries()) {
                    if (key.size() > shared->size() && dg.entries().count(key)) {
                        return fail("returned shared key is not the largest one");
                    }
                }
            }
            return {};
        });
}

SuiteReport suite_pipeline_determinism(std::uint64_t seed, long long cases,
                                       bool parallel) {
    return run_cases(
        "pipeline-determinism", seed, cases, parallel,
        [](CaseRng&, std::size_t) -> CaseOutcome {
            const auto build_sample = [] {
                return MetricSample::from_pairs(
                    {"0", "1", "2"},
                    {{"0", "1", Rational(1)}, {"1", "2", Rational(1)},
                     {"0", "2", Rational(2)}});
            };
            const Rational radius(3, 2);
            const auto render = [&](const CechResult& result,
                                    const MetricSample& sample) {
                return io::dump(io::emit_cech_result(
                    result, {{"all_covered_surrogate",
                              format_rational(all_covered_surrogate(sample))}}));
            };
            const MetricSample first_sample = build_sample();
            const MetricSample second_sample = build_sample();
            const CechResult first = cech_pipeline(first_sample, radius);
            const CechResult second = cech_pipeline(second_sample, radius);
            const std::string text_a = render(first, first_sample);
            const std::string text_b = render(second, second_sample);
            if (text_a != text_b) {
                return fail("two identical runs rendered different bytes");
            }

            const std::map<VertexLabel, std::set<PointId>> expected_cover = {
                {"b0", {"0", "1"}}, {"b1", {"0", "1", "2"}}, {"b2", {"1", "2"}}};
            if (first.cover.sets() != expected_cover) {
                return fail("open-ball cover does not match the expected sets");
            }

            const std::vector<ProbVector> expected_partition = {
                ProbVector(std::map<VertexLabel, Rational>{{"b0", Rational(2, 5)},
                                                           {"b1", Rational(3, 5)}}),
                ProbVector(std::map<VertexLabel, Rational>{{"b0", Rational(1, 5)},
                                                           {"b1", Rational(3, 5)},
                                                           {"b2", Rational(1, 5)}}),
                ProbVector(std::map<VertexLabel, Rational>{{"b1", Rational(3, 5)},
                                                           {"b2", Rational(2, 5)}})};
            if (first.partition != expected_partition) {
                return fail("partition of unity does not match the expected values");
            }

            const AbstractComplex expected_nerve = AbstractComplex::from_facets(
                {SubsetKey({"b0", "b1", "b2"})});
            if (first.nerve != expected_nerve) {
                return fail("nerve does not match the expected single facet");
            }
            if (all_covered_surrogate(first_sample) != 3) {
                return fail("surrogate clearance is not 1 + diameter");
            }
            // Serial and parallel kernels must agree point for point.
            if (distance_pou_serial(first_sample, first.cover) != first.partition) {
                return fail("serial and parallel kernels disagree");
            }
            return {};
        });
}

struct SuiteInfo {
    const char* name;
    long long default_cases;
    bool fixed;
    SuiteReport (*runner)(std::uint64_t, long long, bool);
};

constexpr SuiteInfo kSuites[] = {
    {"roundtrip", 10000, false, suite_roundtrip},
    {"inverse-roundtrip", 10000, false, suite_inverse_roundtrip},
    {"chain-mass", 10000, false, suite_chain_mass},
    {"order-law", 10000, false, suite_order_law},
    {"subdivision-geometry", 1000, false, suite_subdivision_geometry},
    {"subdivision-counts", 1, true, suite_subdivision_counts},
    {"join-laws", 1000, false, suite_join_laws},
    {"star-refinement", 100, false, suite_star_refinement},
    {"layer-disjointness", 10000, false, suite_layer_disjointness},
    {"kernel-transforms", 10000, false, suite_kernel_transforms},
    {"homotopy-criterion", 10000, false, suite_homotopy_criterion},
    {"pipeline-determinism", 1, true, suite_pipeline_determinism},
};

const SuiteInfo& suite_info(const std::string& name) {
    for (const auto& info : kSuites) {
        if (name == info.name) return info;
    }
    throw DomainError("unknown_suite", "unknown suite \"" + name + "\"");
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& info : kSuites) out.emplace_back(info.name);
        return out;
    }();
    return names;
}

bool is_suite_name(const std::string& name) {
    return std::any_of(std::begin(kSuites), std::end(kSuites),
                       [&name](const SuiteInfo& info) { return name == info.name; });
}

long long default_cases(const std::string& name) {
    return suite_info(name).default_cases;
}

SuiteReport run_suite(const std::string& name, std::uint64_t seed, long long cases,
                      bool parallel) {
    const SuiteInfo& info = suite_info(name);
    if (cases < 1) {
        throw DomainError("cases_positive", "cases must be >= 1");
    }
    long long effective = cases;
    std::string note;
    if (info.fixed && cases != 1) {
        effective = 1;
        note = "fixed suite; runs once regardless of the requested case count";
    }
    SuiteReport report = info.runner(seed, effective, parallel);
    if (!note.empty()) report.notes.push_back(std::move(note));
    return report;
}

} // namespace pou::suites
