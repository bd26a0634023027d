// Licensed under the Apache License, Version 2.0.
// http://www.apache.org/licenses/LICENSE-2.0
//
// Microbenchmark for the kernel backends: ns/element for each op at a few
// array lengths, per available backend.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include "ampd/kernels.hpp"

using ampd::kernels::Backend;
using ampd::kernels::Ops;

namespace {

volatile double g_sink;

double bench(const char* what, std::size_t n, std::size_t reps,
             const std::function<double()>& fn) {
    // warmup
    for (int i = 0; i < 3; ++i) g_sink = fn();
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t r = 0; r < reps; ++r) g_sink = fn();
    const auto t1 = std::chrono::steady_clock::now();
    const double ns =
        std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count() /
        static_cast<double>(reps) / static_cast<double>(n);
    std::printf("  %-22s n=%-6zu %8.3f ns/elem\n", what, n, ns);
    return ns;
}

}  // namespace

int main() {
    std::mt19937 gen(99);
    std::uniform_real_distribution<double> dist(0.01, 4.0);

    for (Backend b : ampd::kernels::available_backends()) {
        const Ops& ops = *ampd::kernels::ops_for(b);
        std::printf("backend %s\n", ops.name);
        for (std::size_t n : {std::size_t(32), std::size_t(256), std::size_t(4096)}) {
            std::vector<double> x(n), y(n), out(n);
            for (auto& v : x) v = dist(gen);
            for (auto& v : y) v = dist(gen);
            const std::size_t reps = 4 * 1000 * 1000 / n;

            bench("sum", n, reps, [&] { return ops.sum(x.data(), n); });
            bench("dot", n, reps, [&] { return ops.dot(x.data(), y.data(), n); });
            bench("sum_abs_pow p=2", n, reps,
                  [&] { return ops.sum_abs_pow(x.data(), n, 2.0); });
            bench("sum_abs_pow p=0.7", n, reps,
                  [&] { return ops.sum_abs_pow(x.data(), n, 0.7); });
            bench("sum_abs_diff_pow p=3.7", n, reps,
                  [&] { return ops.sum_abs_diff_pow(x.data(), y.data(), n, 3.7); });
            bench("abs_pow_sum p=1.3", n, reps,
                  [&] { return ops.abs_pow_sum(x.data(), out.data(), n, 1.3); });
        }
    }
    return 0;
}
