#pragma once

// The gor command line: realize, montecarlo and gendata subcommands.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "gor/datagen.hpp"

namespace gor::cli {

enum ExitCode : int { kSuccess = 0, kNoRealSolution = 2, kInputError = 3 };

/// Runs the tool on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Key-value Monte Carlo configuration: one "key = value" per line, '#'
/// comments. Keys: N, sigmas, trials, seed, poles, fixed, C, x0, T, sgor.
/// Lists are comma separated except pole lists, which use ';'. Throws
/// InputError on unknown keys and malformed values.
MonteCarloConfig parse_montecarlo_config(std::istream& in);

/// sigma,trial,method,misfit_sq,true_err_sq,poles,wall_time_s. wall_time_s is
/// written as 0 unless with_timings, so reruns are byte-identical.
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& rows, bool with_timings);

/// sigma,method,metric,count,min,q1,median,q3,max
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

}  // namespace gor::cli
