// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#include <kgval/sources.hpp>

#include <kgval/errors.hpp>

#include <cmath>
#include <thread>

namespace kgval {

namespace {

class SteadyClock final : public Clock {
public:
    TimePoint now() override { return std::chrono::steady_clock::now(); }
    void sleepUntil(TimePoint t) override { std::this_thread::sleep_until(t); }
};

} // namespace

std::shared_ptr<Clock> systemClock() {
    static auto clock = std::make_shared<SteadyClock>();
    return clock;
}

RateLimiter::RateLimiter(double perSecond, std::shared_ptr<Clock> clock)
    : clock_(std::move(clock)) {
    if (!(perSecond > 0.0) || !std::isfinite(perSecond)) {
        throw PreconditionError("rate limit must be positive");
    }
    if (perSecond >= 1.0) {
        window_ = std::chrono::seconds(1);
        capacity_ = static_cast<std::size_t>(std::floor(perSecond));
    } else {
        window_ = std::chrono::nanoseconds(static_cast<long long>(std::ceil(1e9 / perSecond)));
        capacity_ = 1;
    }
}

void RateLimiter::acquire() {
    std::lock_guard lock(mutex_);
    for (;;) {
        const auto now = clock_->now();
        while (!issued_.empty() && issued_.front() + window_ <= now) {
            issued_.pop_front();
        }
        if (issued_.size() < capacity_) {
            issued_.push_back(now);
            return;
        }
        clock_->sleepUntil(issued_.front() + window_);
    }
}

} // namespace kgval
