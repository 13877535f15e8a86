#pragma once

#include <cstddef>
#include <functional>

namespace lomo {

/// Worker count: LOMO_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Runs body(begin, end) over a static partition of [0, n). Each index is
/// visited by exactly one worker, so results written per index do not depend
/// on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace lomo
