#pragma once

#include "pou/weights.hpp"

#include <span>
#include <vector>

namespace pou::batch {

// Corpus-level kernels. Each has an OpenMP version and a serial reference
// that must produce identical results; the test suite and the benchmark
// target compare them. All of them are deterministic regardless of thread
// count because every output slot is owned by exactly one index.

std::vector<DerivedVector> derive_all(std::span<const ProbVector> points);
std::vector<DerivedVector> derive_all_serial(std::span<const ProbVector> points);

std::vector<ProbVector> integrate_all(std::span<const DerivedVector> vectors);
std::vector<ProbVector> integrate_all_serial(std::span<const DerivedVector> vectors);

// Flattened strict upper triangle, row-major: entry for (i, j), i < j, sits at
// i*(2n-i-1)/2 + (j-i-1). Distances are between the points' derivatives.
std::vector<Rational> pairwise_derivative_distances(std::span<const ProbVector> points);
std::vector<Rational> pairwise_derivative_distances_serial(
    std::span<const ProbVector> points);

} // namespace pou::batch
