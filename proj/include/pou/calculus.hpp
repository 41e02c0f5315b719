#pragma once

#include "pou/weights.hpp"

#include <optional>
#include <vector>

namespace pou {

// Pointwise derivative. The derived weight of a subset T of the support is
// |T| * max(0, min over T - max outside T), which is nonzero exactly for the
// "top slices" of the value profile: sort the distinct values descending, and
// the k-th slice is the set of labels with the k largest distinct values. The
// result always satisfies the chain condition and has total mass 1.
DerivedVector derive(const ProbVector& x);

// Pointwise integral: each key spreads its weight uniformly over its members.
// Requires total mass exactly 1 (the result must be a ProbVector). Inverse to
// derive on chain-supported unit-mass inputs.
ProbVector integrate(const DerivedVector& d);

// Convex combination h = alpha*f + (1-alpha)*g, exact. alpha must lie in
// [0,1]; a side with nonzero coefficient must be present. One-sided callers
// pass std::nullopt for the unused side (only legal when its coefficient is
// zero, i.e. alpha=1 with g absent or alpha=0 with f absent).
ProbVector join_points(const std::optional<ProbVector>& f,
                       const std::optional<ProbVector>& g,
                       const Rational& alpha);

// Shrinking along a caller-supplied ordering of labels: each label keeps the
// part of its value that exceeds the running maximum of all earlier labels.
// The ordering must cover the support and contain no duplicates. The result
// may have smaller support and total mass in (0, 1].
WeightVector shrink_wellordered(const ProbVector& x,
                                const std::vector<VertexLabel>& ordering);

// The half-maximum approximation: clip values at half the maximum, keep the
// positive parts, renormalize. The result's support is contained in the
// input's, so it approximates the input (see `approximates`).
ProbVector half_max_approx(const ProbVector& x);

// Splits x into depth+1 weight vectors that sum back to x pointwise. Layer k
// (1-based, k <= depth) has maximum value exactly max(x)/2^k, as does the
// final residual layer. depth must be >= 1.
std::vector<WeightVector> dyadic_layers(const ProbVector& x, int depth);

// Kills the derived keys of cardinality > max_order+1, renormalizes what is
// left, and integrates back. The result approximates x and has order at most
// max_order. If no derived key is small enough the kept mass is zero and the
// operation raises DomainError("truncation_mass_zero").
ProbVector truncate_order(const ProbVector& x, int max_order);

// g approximates f when support(g) is contained in support(f).
bool approximates(const ProbVector& g, const ProbVector& f);

// A shared key of the two derivatives witnesses that the supports of f and g
// span a common simplex in any nerve containing both. Shared keys form a
// chain, so the inclusion-largest one is unique; that one is returned.
// Present if and only if subset_l1_distance(derive(f), derive(g)) < 2.
std::optional<SubsetKey> common_simplex(const ProbVector& f, const ProbVector& g);

} // namespace pou
