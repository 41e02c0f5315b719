#include "pou/calculus.hpp"

#include "pou/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>

namespace pou {

DerivedVector derive(const ProbVector& x) {
    // Group the support by value, descending. The k-th cumulative group is the
    // only subset of its cardinality with a positive derived weight, and that
    // weight is |group| * (value_k - value_{k+1}) with value 0 after the last.
    std::map<Rational, std::vector<VertexLabel>, std::greater<Rational>> groups;
    for (const auto& [label, value] : x.entries()) {
        groups[value].push_back(label);
    }

    std::map<SubsetKey, Rational> out;
    std::vector<VertexLabel> cumulative;
    for (auto it = groups.begin(); it != groups.end(); ++it) {
        cumulative.insert(cumulative.end(), it->second.begin(), it->second.end());
        const Rational& value = it->first;
        const auto next = std::next(it);
        const Rational drop = (next == groups.end()) ? value : value - next->first;
        out.emplace(SubsetKey(cumulative),
                    Rational(static_cast<unsigned long>(cumulative.size())) * drop);
    }
    return DerivedVector(std::move(out));
}

ProbVector integrate(const DerivedVector& d) {
    if (d.total_mass() != 1) {
        throw DomainError("unit_mass", "derived vector has total mass " +
                                           format_rational(d.total_mass()) +
                                           ", expected 1");
    }
    std::map<VertexLabel, Rational> acc;
    for (const auto& [key, value] : d.entries()) {
        const Rational share = value / Rational(static_cast<unsigned long>(key.size()));
        for (const auto& label : key.labels()) {
            acc[label] += share;
        }
    }
    return ProbVector(WeightVector(std::move(acc)));
}

ProbVector join_points(const std::optional<ProbVector>& f,
                       const std::optional<ProbVector>& g,
                       const Rational& alpha) {
    if (alpha < 0 || alpha > 1) {
        throw DomainError("alpha_range",
                          "alpha = " + format_rational(alpha) + " is outside [0, 1]");
    }
    if (alpha > 0 && !f.has_value()) {
        throw DomainError("join_operand_missing",
                          "first operand absent but alpha > 0");
    }
    if (alpha < 1 && !g.has_value()) {
        throw DomainError("join_operand_missing",
                          "second operand absent but alpha < 1");
    }
    if (alpha == 1) return *f;
    if (alpha == 0) return *g;

    std::map<VertexLabel, Rational> out;
    const Rational beta = Rational(1) - alpha;
    for (const auto& [label, value] : f->entries()) out[label] += alpha * value;
    for (const auto& [label, value] : g->entries()) out[label] += beta * value;
    return ProbVector(WeightVector(std::move(out)));
}

WeightVector shrink_wellordered(const ProbVector& x,
                                const std::vector<VertexLabel>& ordering) {
    std::set<VertexLabel> seen;
    for (const auto& label : ordering) {
        if (!seen.insert(label).second) {
            throw DomainError("ordering_distinct",
                              "ordering repeats label \"" + label + "\"");
        }
    }
    for (const auto& [label, value] : x.entries()) {
        if (!seen.count(label)) {
            throw DomainError("ordering_covers_support",
                              "ordering misses support label \"" + label + "\"");
        }
    }

    std::map<VertexLabel, Rational> out;
    Rational running_max(0);
    for (const auto& label : ordering) {
        const Rational value = x.at(label);
        const Rational kept = value - running_max;
        if (kept > 0) out.emplace(label, kept);
        if (value > running_max) running_max = value;
    }
    return WeightVector(std::move(out));
}

ProbVector half_max_approx(const ProbVector& x) {
    const Rational half = x.weights().max_weight() / 2;
    std::map<VertexLabel, Rational> clipped;
    Rational total(0);
    for (const auto& [label, value] : x.entries()) {
        const Rational excess = value - half;
        if (excess > 0) {
            clipped.emplace(label, excess);
            total += excess;
        }
    }
    for (auto& [label, value] : clipped) value /= total;
    return ProbVector(WeightVector(std::move(clipped)));
}

std::vector<WeightVector> dyadic_layers(const ProbVector& x, int depth) {
    if (depth < 1) {
        throw DomainError("depth_positive", "depth must be >= 1");
    }
    std::vector<WeightVector> out;
    out.reserve(static_cast<std::size_t>(depth) + 1);

    std::map<VertexLabel, Rational> residual = x.entries();
    Rational threshold = x.weights().max_weight();
    for (int k = 1; k <= depth; ++k) {
        threshold /= 2;
        std::map<VertexLabel, Rational> layer;
        for (auto& [label, value] : residual) {
            const Rational excess = value - threshold;
            if (excess > 0) {
                layer.emplace(label, excess);
                value -= excess; // residual value becomes min(value, threshold)
            }
        }
        out.emplace_back(std::move(layer));
    }
    out.emplace_back(std::move(residual));
    return out;
}

ProbVector truncate_order(const ProbVector& x, int max_order) {
    if (max_order < 0) {
        throw DomainError("order_nonnegative", "max_order must be >= 0");
    }
    const std::size_t max_size = static_cast<std::size_t>(max_order) + 1;
    const DerivedVector derivative = derive(x);
    std::map<SubsetKey, Rational> kept;
    Rational kept_mass(0);
    for (const auto& [key, value] : derivative.entries()) {
        if (key.size() <= max_size) {
            kept.emplace(key, value);
            kept_mass += value;
        }
    }
    if (kept_mass == 0) {
        throw DomainError("truncation_mass_zero",
                          "every derived key has cardinality > " +
                              std::to_string(max_size));
    }
    for (auto& [key, value] : kept) value /= kept_mass;
    return integrate(DerivedVector(std::move(kept)));
}

bool approximates(const ProbVector& g, const ProbVector& f) {
    return g.support().subset_of(f.support());
}

std::optional<SubsetKey> common_simplex(const ProbVector& f, const ProbVector& g) {
    const DerivedVector df = derive(f);
    const DerivedVector dg = derive(g);
    std::optional<SubsetKey> largest;
    for (const auto& [key, value] : df.entries()) {
        if (dg.entries().count(key) &&
            (!largest.has_value() || key.size() > largest->size())) {
            largest = key;
        }
    }
    return largest;
}

} // namespace pou
