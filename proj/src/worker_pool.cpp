#include "saix/worker_pool.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace saix {

unsigned default_workers() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

WorkerPool::WorkerPool(unsigned workers) : workers_(workers) {
    if (workers == 0) {
        throw std::invalid_argument("worker count must be at least 1");
    }
}

WorkerPool::~WorkerPool() {
    {
        std::lock_guard lock(mutex_);
        stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : threads_) {
        t.join();
    }
}

void WorkerPool::start() {
    threads_.reserve(workers_ - 1);
    for (unsigned w = 1; w < workers_; ++w) {
        threads_.emplace_back([this] { worker_loop(); });
    }
}

void WorkerPool::drain() {
    for (;;) {
        std::size_t t = next_.fetch_add(1, std::memory_order_relaxed);
        if (t >= tasks_) {
            return;
        }
        try {
            (*job_)(t);
        } catch (...) {
            std::lock_guard lock(mutex_);
            if (!error_) {
                error_ = std::current_exception();
            }
            next_.store(tasks_, std::memory_order_relaxed);
        }
    }
}

void WorkerPool::worker_loop() {
    std::size_t seen = 0;
    for (;;) {
        {
            std::unique_lock lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) {
                return;
            }
            seen = generation_;
        }
        drain();
        {
            std::lock_guard lock(mutex_);
            if (--busy_ == 0) {
                done_.notify_one();
            }
        }
    }
}

void WorkerPool::run(std::size_t tasks, const std::function<void(std::size_t)>& fn) {
    if (tasks == 0) {
        return;
    }
    if (workers_ == 1 || tasks == 1) {
        for (std::size_t t = 0; t < tasks; ++t) {
            fn(t);
        }
        return;
    }
    if (threads_.empty()) {
        start();
    }
    {
        std::lock_guard lock(mutex_);
        job_ = &fn;
        tasks_ = tasks;
        next_.store(0, std::memory_order_relaxed);
        busy_ = threads_.size();
        error_ = nullptr;
        ++generation_;
    }
    wake_.notify_all();
    drain();
    std::exception_ptr error;
    {
        std::unique_lock lock(mutex_);
        done_.wait(lock, [&] { return busy_ == 0; });
        job_ = nullptr;
        error = std::exchange(error_, nullptr);
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

void WorkerPool::for_ranges(std::size_t n, std::size_t grain,
                            const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) {
        return;
    }
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t parts = std::clamp<std::size_t>(n / grain, 1, workers_);
    run(parts, [&](std::size_t part) {
        std::size_t begin = n * part / parts;
        std::size_t end = n * (part + 1) / parts;
        fn(begin, end);
    });
}

}  // namespace saix
