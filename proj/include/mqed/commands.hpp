#pragma once

#include "mqed/runconfig.hpp"
#include "mqed/table.hpp"

namespace mqed::cli {

/// Exit statuses of the command-line tool.
enum Exit : int { ok = 0, config_error = 2, numerical_error = 3, io_error = 4 };

/// Loads every referenced file, runs the command and returns the table.
/// Errors surface as the library's exception types.
SweepResult run_command(const RunConfig& config);

/// Serializes in the configured format to config.out (atomically) or stdout.
void emit(const RunConfig& config, const SweepResult& table);

/// Full pipeline with exceptions mapped onto exit statuses; messages go to stderr.
int run(const RunConfig& config);

}  // namespace mqed::cli
