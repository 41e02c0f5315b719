#include "pou/errors.hpp"
#include "pou/suites.hpp"
#include "pou/weights.hpp"

#include <doctest.h>

#include <set>
#include <vector>

using namespace pou;

namespace {

// Naive reference for the l1 metrics: collect the union of keys, then sum
// absolute differences via plain lookups. Deliberately independent of the
// merge-walk implementation in the library.
template <typename Vec, typename Key>
Rational naive_l1(const Vec& a, const Vec& b) {
    std::set<Key> keys;
    for (const auto& [key, value] : a.entries()) keys.insert(key);
    for (const auto& [key, value] : b.entries()) keys.insert(key);
    Rational sum(0);
    for (const auto& key : keys) {
        const Rational diff = a.at(key) - b.at(key);
        sum += diff < 0 ? -diff : diff;
    }
    return sum;
}

ProbVector pv(std::map<VertexLabel, Rational> entries) {
    return ProbVector(WeightVector(std::move(entries)));
}

} // namespace

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3/4") == Rational(3, 4));
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("-2/5") == Rational(-2, 5));
    CHECK(format_rational(Rational(3, 2)) == "3/2");
    CHECK(format_rational(Rational(4, 2)) == "2");
    CHECK(format_rational(Rational(0)) == "0");
    CHECK(format_rational(Rational(-1, 3)) == "-1/3");
    CHECK(format_rational(parse_rational("123456789012345678901234567891/7")) ==
          "123456789012345678901234567891/7");
    // ...and reduction happens when possible (this numerator is 7 * 17636...).
    CHECK(format_rational(parse_rational("123456789012345678901234567890/7")) ==
          "17636684144620811271604938270");

    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("a"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/2/3"), ParseError);
    CHECK_THROWS_AS(parse_rational(" 1"), ParseError);
}

TEST_CASE("input label validation") {
    CHECK(is_valid_input_label("a"));
    CHECK(is_valid_input_label("b12"));
    CHECK(is_valid_input_label("x_y-z.0"));
    CHECK_FALSE(is_valid_input_label(""));
    CHECK_FALSE(is_valid_input_label("a b"));
    CHECK_FALSE(is_valid_input_label("a\tb"));
    CHECK_FALSE(is_valid_input_label("a|b"));
    CHECK_FALSE(is_valid_input_label("|"));
}

TEST_CASE("subset keys canonicalize and compare") {
    const SubsetKey key({"c", "a", "b"});
    CHECK(key.labels() == std::vector<VertexLabel>{"a", "b", "c"});
    CHECK(key.size() == 3);
    CHECK(key.contains("b"));
    CHECK_FALSE(key.contains("d"));

    CHECK_THROWS_AS(SubsetKey(std::vector<VertexLabel>{}), DomainError);
    CHECK_THROWS_AS(SubsetKey({"a", "a"}), DomainError);

    const SubsetKey ab({"a", "b"});
    CHECK(ab.subset_of(key));
    CHECK_FALSE(key.subset_of(ab));
    CHECK(SubsetKey::singleton("a").subset_of(ab));
    CHECK(ab.united_with(SubsetKey({"b", "d"})) == SubsetKey({"a", "b", "d"}));

    // Lexicographic order on the sorted label vectors.
    CHECK(SubsetKey({"a"}) < SubsetKey({"a", "b"}));
    CHECK(SubsetKey({"a", "b"}) < SubsetKey({"b"}));
}

TEST_CASE("weight vectors store no zeros and reject nonpositive values") {
    const WeightVector w(std::map<VertexLabel, Rational>{{"a", Rational(1, 2)},
                                                         {"b", Rational(1, 4)}});
    CHECK(w.at("a") == Rational(1, 2));
    CHECK(w.at("missing") == 0);
    CHECK(w.total_mass() == Rational(3, 4));
    CHECK(w.max_weight() == Rational(1, 2));
    CHECK(w.support() == std::vector<VertexLabel>{"a", "b"});
    CHECK(WeightVector{}.max_weight() == 0);

    CHECK_THROWS_AS(WeightVector(std::map<VertexLabel, Rational>{{"a", Rational(0)}}),
                    DomainError);
    CHECK_THROWS_AS(
        WeightVector(std::map<VertexLabel, Rational>{{"a", Rational(-1, 2)}}),
        DomainError);
}

TEST_CASE("probability vectors require unit mass and nonempty support") {
    const ProbVector x = pv({{"a", Rational(2, 3)}, {"b", Rational(1, 3)}});
    CHECK(x.at("a") == Rational(2, 3));
    CHECK(x.support() == SubsetKey({"a", "b"}));
    CHECK(order(x) == 1);

    CHECK_THROWS_WITH_AS(pv({}), doctest::Contains("empty support"), DomainError);
    CHECK_THROWS_AS(pv({{"a", Rational(1, 2)}}), DomainError);
    CHECK_THROWS_AS(pv({{"a", Rational(1, 2)}, {"b", Rational(2, 3)}}), DomainError);

    try {
        pv({{"a", Rational(1, 2)}});
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(e.precondition() == "unit_mass");
    }
}

TEST_CASE("order counts the support minus one") {
    CHECK(order(pv({{"a", Rational(1)}})) == 0);
    CHECK(order(pv({{"a", Rational(2, 3)}, {"b", Rational(1, 3)}})) == 1);
    CHECK(order(pv({{"a", Rational(1, 2)},
                    {"b", Rational(1, 3)},
                    {"c", Rational(1, 6)}})) == 2);
}

TEST_CASE("derived vectors enforce the chain condition") {
    const DerivedVector d(std::map<SubsetKey, Rational>{
        {SubsetKey({"a"}), Rational(1, 6)},
        {SubsetKey({"a", "b"}), Rational(1, 3)},
        {SubsetKey({"a", "b", "c"}), Rational(1, 2)}});
    CHECK(d.total_mass() == 1);
    CHECK(d.max_key_size() == 3);
    CHECK(d.at(SubsetKey({"a", "b"})) == Rational(1, 3));
    CHECK(d.at(SubsetKey({"b"})) == 0);

    CHECK_THROWS_AS(DerivedVector(std::map<SubsetKey, Rational>{
                        {SubsetKey({"a"}), Rational(1, 2)},
                        {SubsetKey({"b"}), Rational(1, 2)}}),
                    DomainError);
    CHECK_THROWS_AS(DerivedVector(std::map<SubsetKey, Rational>{
                        {SubsetKey({"a", "b"}), Rational(1, 2)},
                        {SubsetKey({"a", "c"}), Rational(1, 2)}}),
                    DomainError);
    CHECK_THROWS_AS(DerivedVector(std::map<SubsetKey, Rational>{
                        {SubsetKey({"a"}), Rational(0)}}),
                    DomainError);
    CHECK(DerivedVector{}.total_mass() == 0);
    CHECK(DerivedVector{}.max_key_size() == 0);
}

TEST_CASE("l1 distance matches hand-computed values") {
    const ProbVector x = pv({{"a", Rational(1, 2)}, {"b", Rational(1, 2)}});
    CHECK(l1_distance(x, x) == 0);
    CHECK(l1_distance(pv({{"a", Rational(1)}}), pv({{"b", Rational(1)}})) == 2);
    CHECK(l1_distance(x, pv({{"a", Rational(1, 4)}, {"b", Rational(3, 4)}})) ==
          Rational(1, 2));
    CHECK(l1_distance(x, pv({{"a", Rational(3, 4)}, {"c", Rational(1, 4)}})) == 1);
}

TEST_CASE("subset l1 distance matches hand-computed values") {
    const DerivedVector d1(std::map<SubsetKey, Rational>{
        {SubsetKey({"a"}), Rational(1, 5)}, {SubsetKey({"a", "b"}), Rational(4, 5)}});
    const DerivedVector d2(std::map<SubsetKey, Rational>{
        {SubsetKey({"b"}), Rational(1, 5)}, {SubsetKey({"a", "b"}), Rational(4, 5)}});
    CHECK(subset_l1_distance(d1, d1) == 0);
    CHECK(subset_l1_distance(d1, d2) == Rational(2, 5));
    const DerivedVector e1(
        std::map<SubsetKey, Rational>{{SubsetKey({"a"}), Rational(1)}});
    const DerivedVector e2(
        std::map<SubsetKey, Rational>{{SubsetKey({"b"}), Rational(1)}});
    CHECK(subset_l1_distance(e1, e2) == 2);
}

TEST_CASE("l1 metrics agree with the naive reference on random inputs") {
    using suites::CaseRng;
    for (std::uint64_t i = 0; i < 300; ++i) {
        CaseRng rng(2024, i);
        const ProbVector a = suites::random_prob_vector(rng, 8, 6);
        const ProbVector b = suites::random_prob_vector(rng, 8, 6);
        const Rational direct = l1_distance(a, b);
        CHECK(direct == (naive_l1<WeightVector, VertexLabel>(a, b)));
        CHECK(direct == l1_distance(b, a));
        CHECK(direct >= 0);
        CHECK(direct <= 2);

        const ProbVector c = suites::random_prob_vector(rng, 8, 6);
        CHECK(l1_distance(a, c) <= l1_distance(a, b) + l1_distance(b, c));
    }
}

TEST_CASE("distance 2 characterizes disjoint supports") {
    using suites::CaseRng;
    for (std::uint64_t i = 0; i < 300; ++i) {
        CaseRng rng(77, i);
        const ProbVector a = suites::random_prob_vector(rng, 6, 3);
        const ProbVector b = suites::random_prob_vector(rng, 6, 3);
        bool disjoint = true;
        for (const auto& [label, value] : a.entries()) {
            if (b.at(label) > 0) disjoint = false;
        }
        CHECK((l1_distance(a, b) == 2) == disjoint);
    }
}
