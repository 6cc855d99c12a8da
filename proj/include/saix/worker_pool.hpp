#pragma once

#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace saix {

/// Fixed set of worker threads executing bulk-synchronous phases.
///
/// run() is one phase: tasks are handed out dynamically, the caller works
/// too, and the call returns only after every task has finished, so state
/// written in one phase is visible to every task of the next. Tasks of a
/// phase must write disjoint data. Threads start on the first phase that
/// has more than one task.
class WorkerPool {
public:
    explicit WorkerPool(unsigned workers);
    ~WorkerPool();

    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    unsigned size() const noexcept { return workers_; }

    /// Runs fn(task) for every task in [0, tasks). Rethrows the first exception.
    void run(std::size_t tasks, const std::function<void(std::size_t)>& fn);

    /// Splits [0, n) into at most size() contiguous ranges of at least `grain`
    /// elements and runs fn(begin, end) on each as one phase.
    void for_ranges(std::size_t n, std::size_t grain,
                    const std::function<void(std::size_t, std::size_t)>& fn);

private:
    void start();
    void worker_loop();
    void drain();

    unsigned workers_;
    std::vector<std::thread> threads_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;
    const std::function<void(std::size_t)>* job_ = nullptr;
    std::size_t tasks_ = 0;
    std::atomic<std::size_t> next_{0};
    std::size_t generation_ = 0;
    std::size_t busy_ = 0;
    bool stop_ = false;
    std::exception_ptr error_;
};

/// std::thread::hardware_concurrency(), or 1 when unknown.
unsigned default_workers();

}  // namespace saix
