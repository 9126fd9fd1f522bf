#pragma once

#include <cstddef>
#include <functional>

namespace dilatest {

/// Worker count used by parallel_for; 0 or 1 runs inline.
void set_threads(int n);
int threads();

/// Calls body(i) for i in [0, n), split into contiguous blocks across workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dilatest
