#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace minres {

/// Worker count: MINRES_THREADS if set to a positive integer, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on worker_count() threads. The exception of the
/// smallest failing index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Rethrows the active minres exception with `prefix` prepended to its message.
[[noreturn]] void rethrow_with_context(const std::string& prefix);

}  // namespace minres
