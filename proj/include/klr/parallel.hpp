#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "klr/report.hpp"

namespace klr {

// Number of worker threads used when a plan does not pin one.
int default_width();

// Runs fn(i) for i in [0,n).  width <= 1 takes the serial reference path;
// width > 1 fans out with OpenMP.  Results must be written into per-index
// slots, which keeps the merged output identical on both paths.
void parallel_for(std::size_t n, int width, const std::function<void(std::size_t)>& fn);

// Evaluates independent check items and merges the records in item order.
VerificationReport run_checks(const std::vector<std::function<CheckRecord()>>& items, int width,
                              const std::string& plan = "");

}  // namespace klr
