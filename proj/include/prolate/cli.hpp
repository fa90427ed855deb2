#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace prolate::cli {

enum ExitCode : int {
  kSuccess = 0,
  kNumericalFailure = 1,
  kUsageError = 2,
  kAccuracyUnmet = 3,
};

/// Runs the prolate-quad command line; argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

struct IndexRange {
  int start = 0;
  int stop = 0;  // inclusive
  int step = 1;
  std::vector<int> values() const;
};

/// "start:stop:step" (step optional, default 1). Throws std::invalid_argument.
IndexRange parse_index_range(const std::string& text);

/// Accepts plain reals and the shorthand "e-50" for exp(-50).
double parse_eps(const std::string& text);

/// Comma-separated list of positive values.
std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

/// Worker count: THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
int worker_count();

/// Calls task(i) for i in [0, count) on worker_count() threads. The first
/// exception by index is rethrown after all workers finish.
void parallel_for(int count, const std::function<void(int)>& task);

}  // namespace prolate::cli
