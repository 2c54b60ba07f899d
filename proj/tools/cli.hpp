#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "genprob/harness.hpp"

namespace genprob::cli {

enum ExitCode : int { ok = 0, failure = 1, infeasible = 2, capacity = 3 };

/// Runs the genprob command line; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string estimate_csv_header();
std::string estimate_csv_row(const EstimateResult& r);

}  // namespace genprob::cli
