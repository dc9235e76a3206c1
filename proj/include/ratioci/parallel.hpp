#pragma once

#include <cstddef>
#include <functional>

namespace ratioci {

// Upper bound on worker threads; 0 means "all hardware threads".
void set_max_threads(std::size_t n) noexcept;
std::size_t max_threads() noexcept;

// Calls body(i) for every i in [0, count). Indices are handed out dynamically,
// so body must write its result to slot i only. The first exception thrown by
// any body is rethrown after all workers have joined.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace ratioci
