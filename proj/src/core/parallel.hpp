#pragma once

#include <cstddef>
#include <functional>

namespace lrb {

// Effective worker count: LRB_THREADS caps it, 0 or unset means hardware auto.
int max_threads();

// Runs f(i) for i in [0, n). Work is split into contiguous blocks whose count
// does not depend on the thread cap, so results are identical for any cap.
// Exceptions from workers are rethrown on the caller thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

} // namespace lrb
