#pragma once

#include <cstddef>
#include <functional>

namespace robens {

/// Worker cap: min(hardware threads, ROBUST_ENSEMBLES_THREADS when set).
unsigned effective_threads();

/// Run body(i) for i in [0, n). Work is split into contiguous chunks over at
/// most effective_threads() workers; callers get determinism by writing
/// result i into a preallocated slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace robens
