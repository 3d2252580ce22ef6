#pragma once

#include <cstddef>
#include <functional>

namespace graphondyn {

/// Worker count used by node-parallel loops. Defaults to the value of the
/// GRAPHONDYN_THREADS environment variable, else 1.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Calls body(begin, end) on contiguous chunks covering [0, n). Chunks are
/// independent; results must not depend on how the range is split.
void parallel_for(std::size_t n, std::size_t min_chunk,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace graphondyn
