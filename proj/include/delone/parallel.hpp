#pragma once

#include <cstddef>
#include <functional>

namespace delone {

/// Process-wide cap on worker threads (the CLI's --threads flag). 1 means
/// serial execution. Results never depend on the value.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(i) for i in [0, n). Indices are split into contiguous chunks; each
/// body call must write only to its own output slot.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace delone
