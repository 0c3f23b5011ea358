#ifndef MODRECON_PARALLEL_HPP
#define MODRECON_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace modrecon {

// Process-wide worker cap; 0 means hardware concurrency. Set once by the CLI
// from --threads, read by the per-scalar loops.
void set_max_threads(int n);
int max_threads();

// Runs fn(begin, end) over disjoint chunks of [0, count). Workers write to
// disjoint indices and all randomness is counter-based, so results do not
// depend on the schedule.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t, std::int64_t)>& fn);

}  // namespace modrecon

#endif
