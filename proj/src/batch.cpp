#include "pou/batch.hpp"

#include "pou/calculus.hpp"
#include "pou/detail/parallel.hpp"

#include <optional>
#include <utility>

namespace pou::batch {

namespace {

std::vector<DerivedVector> derive_all_impl(std::span<const ProbVector> points,
                                           bool parallel) {
    std::vector<DerivedVector> out(points.size());
    detail::indexed_loop(points.size(), parallel,
                         [&](std::size_t i) { out[i] = derive(points[i]); });
    return out;
}

std::vector<ProbVector> integrate_all_impl(std::span<const DerivedVector> vectors,
                                           bool parallel) {
    std::vector<std::optional<ProbVector>> slots(vectors.size());
    detail::indexed_loop(vectors.size(), parallel,
                         [&](std::size_t i) { slots[i] = integrate(vectors[i]); });
    std::vector<ProbVector> out;
    out.reserve(vectors.size());
    for (auto& slot : slots) out.push_back(std::move(*slot));
    return out;
}

std::vector<Rational> pairwise_impl(std::span<const ProbVector> points, bool parallel) {
    const std::size_t n = points.size();
    const std::vector<DerivedVector> derivatives = derive_all_impl(points, parallel);
    std::vector<Rational> out(n < 2 ? 0 : n * (n - 1) / 2);
    detail::indexed_loop(n, parallel, [&](std::size_t i) {
        // Row i owns the slots for all j > i.
        std::size_t slot = i * (2 * n - i - 1) / 2;
        for (std::size_t j = i + 1; j < n; ++j, ++slot) {
            out[slot] = subset_l1_distance(derivatives[i], derivatives[j]);
        }
    });
    return out;
}

} // namespace

std::vector<DerivedVector> derive_all(std::span<const ProbVector> points) {
    return derive_all_impl(points, true);
}

std::vector<DerivedVector> derive_all_serial(std::span<const ProbVector> points) {
    return derive_all_impl(points, false);
}

std::vector<ProbVector> integrate_all(std::span<const DerivedVector> vectors) {
    return integrate_all_impl(vectors, true);
}

std::vector<ProbVector> integrate_all_serial(std::span<const DerivedVector> vectors) {
    return integrate_all_impl(vectors, false);
}

std::vector<Rational> pairwise_derivative_distances(std::span<const ProbVector> points) {
    return pairwise_impl(points, true);
}

std::vector<Rational> pairwise_derivative_distances_serial(
    std::span<const ProbVector> points) {
    return pairwise_impl(points, false);
}

} // namespace pou::batch
