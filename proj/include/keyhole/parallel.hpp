// SPDX-License-Identifier: Apache-2.0
//
// keyhole-emi: ergodic mutual information of keyhole MIMO channels with
// finite-alphabet inputs
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#ifndef KEYHOLE_PARALLEL_HPP
#define KEYHOLE_PARALLEL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <thread>
#include <utility>
#include <vector>

namespace keyhole {

inline unsigned default_workers() {
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs body(i) for i in [0, n). Work items must be independent; results that
// feed a reduction go into per-index slots so the outcome does not depend on
// the worker count.
template <typename F>
void parallel_for(std::size_t n, unsigned workers, F &&body) {
    if (workers == 0) workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = n * w / workers;
        const std::size_t hi = n * (w + 1) / workers;
        pool.emplace_back([lo, hi, &body] {
            for (std::size_t i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto &t : pool) t.join();
}

// Order-independent reduction: pairwise summation over a fixed index order.
// Bit-identical no matter how many workers produced the inputs.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t mid = v.size() / 2;
    return pairwise_sum(v.first(mid)) + pairwise_sum(v.subspan(mid));
}

// Sample mean and standard error of the mean.
inline std::pair<double, double> mean_stderr(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n == 0) return {0.0, 0.0};
    const double mean = pairwise_sum(v) / static_cast<double>(n);
    if (n == 1) return {mean, 0.0};
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double d = v[i] - mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

// Welford running statistics; combinable so block results merge exactly the
// same way regardless of which worker produced them.
struct RunningStat {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    void combine(const RunningStat &o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double d = o.mean - mean;
        const double nn = static_cast<double>(n + o.n);
        mean += d * static_cast<double>(o.n) / nn;
        m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / nn;
        n += o.n;
    }
    double stderr_of_mean() const {
        if (n < 2) return 0.0;
        return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
    }
};

// Monte Carlo reduction over realizations [0, n) with `pts` outputs each.
// Realizations are grouped into fixed index blocks; workers fill whole
// blocks and the block statistics merge in index order, so mean and stderr
// are bit-identical for any worker count, at O(blocks) memory.
template <typename F>
void chunked_mc_stats(std::size_t n, std::size_t pts, unsigned workers, F &&fill,
                      std::vector<double> &mean_out, std::vector<double> &stderr_out) {
    constexpr std::size_t kBlock = 4096;
    const std::size_t nblocks = (n + kBlock - 1) / kBlock;
    std::vector<RunningStat> stats(nblocks * pts);
    parallel_for(nblocks, workers, [&](std::size_t blk) {
        std::vector<double> v(pts);
        RunningStat *s = stats.data() + blk * pts;
        const std::size_t lo = blk * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        for (std::size_t i = lo; i < hi; ++i) {
            fill(i, v.data());
            for (std::size_t p = 0; p < pts; ++p) s[p].push(v[p]);
        }
    });
    mean_out.resize(pts);
    stderr_out.resize(pts);
    for (std::size_t p = 0; p < pts; ++p) {
        RunningStat total;
        for (std::size_t blk = 0; blk < nblocks; ++blk) total.combine(stats[blk * pts + p]);
        mean_out[p] = total.mean;
        stderr_out[p] = total.stderr_of_mean();
    }
}

// Kahan-compensated accumulator for long alternating sums.
class CompensatedSum {
  public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

} // namespace keyhole

#endif
