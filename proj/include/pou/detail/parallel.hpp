#pragma once

#include <cstddef>
#include <exception>

namespace pou::detail {

// OpenMP loop over [0, count) with deterministic error propagation: when
// several iterations throw, the exception from the smallest index is rethrown
// after the region, matching what the serial loop would have raised first.
// Falls back to a plain loop when built without OpenMP or when parallel=false.
template <typename Body>
void indexed_loop(std::size_t count, bool parallel, Body&& body) {
#ifndef _OPENMP
    parallel = false;
#endif
    if (!parallel) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr first_error = nullptr;
    std::size_t first_index = count;
    const long long n = static_cast<long long>(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < n; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(pou_indexed_loop_error)
            {
                if (static_cast<std::size_t>(i) < first_index) {
                    first_index = static_cast<std::size_t>(i);
                    first_error = std::current_exception();
                }
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
#endif
}

} // namespace pou::detail
