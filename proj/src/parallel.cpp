#include "klr/parallel.hpp"

#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "klr/scalar.hpp"

namespace klr {

int default_width() {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t n, int width, const std::function<void(std::size_t)>& fn) {
    if (width <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(width)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        fn(static_cast<std::size_t>(i));
    }
#else
    for (std::size_t i = 0; i < n; ++i) fn(i);
#endif
}

VerificationReport run_checks(const std::vector<std::function<CheckRecord()>>& items, int width,
                              const std::string& plan) {
    std::vector<CheckRecord> slots(items.size());
    parallel_for(items.size(), width, [&](std::size_t i) {
        try {
            slots[i] = items[i]();
        } catch (const std::exception& e) {
            slots[i] = CheckRecord{"exception", "check item raised", std::to_string(i),
                                   CheckStatus::Error, e.what()};
        }
    });
    VerificationReport report(plan);
    for (auto& r : slots) report.add(std::move(r));
    return report;
}

}  // namespace klr
