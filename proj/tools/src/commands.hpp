#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "cavicool/csv.hpp"
#include "run_config.hpp"

namespace cavicool::cli {

struct CommandContext {
  RunConfig cfg;
  std::string out_dir = "out";
  std::uint64_t seed = 12345;
  std::size_t workers = 1;
};

// Opens out_dir/name for writing, creating the directory first.
std::ofstream open_output(const CommandContext& ctx, const std::string& name);

// Version comment, then seed and the full effective config, so every file
// documents the run that produced it. Byte-stable for fixed (config, seed).
void write_preamble(CsvWriter& w, const CommandContext& ctx);

void cmd_oracle(const CommandContext& ctx);
void cmd_rate(const CommandContext& ctx);
void cmd_displacement(const CommandContext& ctx);
void cmd_protocol(const CommandContext& ctx);
void cmd_sweep(const CommandContext& ctx);
void cmd_verify(const CommandContext& ctx);

}  // namespace cavicool::cli
