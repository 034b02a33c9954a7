#pragma once

#include <cstddef>
#include <functional>

namespace molent {

/// Calls fn(i) for i in [0, n) on up to `jobs` threads (the caller included).
/// Every index runs even if some throw; the exception of the lowest failing
/// index is rethrown afterwards.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace molent
