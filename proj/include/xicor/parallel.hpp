#pragma once

#include <cstddef>
#include <cstdint>
#include <exception>
#include <vector>

namespace xicor {

/// Runs independent work items on an OpenMP team. Items must derive any
/// randomness from their own index, never from the executing thread, which
/// makes results independent of the worker count.
class WorkerPool {
public:
    explicit WorkerPool(std::size_t workers) : workers_(workers < 1 ? 1 : workers) {}

    std::size_t workers() const noexcept { return workers_; }

    /// Calls fn(i) for i in [0, count). If any item throws, the exception of
    /// the lowest failing index is rethrown after the loop completes.
    template <class F>
    void for_each(std::size_t count, F&& fn) const {
        std::vector<std::exception_ptr> errors(count);
        const auto total = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1) num_threads(static_cast<int>(workers_))
        for (std::int64_t i = 0; i < total; ++i) {
            try {
                fn(static_cast<std::size_t>(i));
            } catch (...) {
                errors[static_cast<std::size_t>(i)] = std::current_exception();
            }
        }
        for (const auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

private:
    std::size_t workers_;
};

} // namespace xicor
