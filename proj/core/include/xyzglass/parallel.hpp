#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace xyzglass {

/// Worker count: explicit request if > 0, else XYZGLASS_THREADS, else the
/// hardware concurrency (at least 1).
int resolve_threads(int requested = 0);

/// Runs body(chunk) for chunk in [0, n_chunks) on up to `threads` workers.
/// Chunks are handed out dynamically; callers write into per-chunk slots and
/// reduce afterwards in chunk order, so results do not depend on scheduling.
void parallel_for(std::size_t n_chunks, int threads, const std::function<void(std::size_t)>& body);

/// Pairwise (cascade) summation in index order.
double pairwise_sum(std::span<const double> values);

}  // namespace xyzglass
