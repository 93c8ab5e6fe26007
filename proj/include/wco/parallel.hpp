#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "wco/expr.hpp"

namespace wco {

/// Worker cap: WCO_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs body(begin, end) over [0, n) in contiguous chunks on up to
/// worker_count() threads. The first exception thrown is rethrown.
void parallel_chunks(std::size_t n, std::size_t min_chunk,
                     const std::function<void(std::size_t, std::size_t)>& body);

/// f evaluated at every point, chunked across workers.
std::vector<Complex> parallel_eval(const AnalyticFn& f, std::span<const Complex> points);

}  // namespace wco
