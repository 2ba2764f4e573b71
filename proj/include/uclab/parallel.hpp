#ifndef UCLAB_PARALLEL_HPP
#define UCLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace uclab {

// Worker count used when a caller passes 0; starts at the hardware concurrency.
void set_default_threads(unsigned threads);
unsigned default_threads();

// Runs body(begin, end) over disjoint chunks of [0, n). Results must be written to
// per-index slots so the outcome does not depend on the thread count.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)> &body);

} // namespace uclab

#endif
