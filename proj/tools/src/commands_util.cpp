#include <filesystem>
#include <system_error>

#include "cavicool/errors.hpp"
#include "cavicool/version.hpp"
#include "commands.hpp"

namespace cavicool::cli {

std::ofstream open_output(const CommandContext& ctx, const std::string& name) {
  std::error_code ec;
  std::filesystem::create_directories(ctx.out_dir, ec);
  if (ec) {
    throw config_error("cannot create output directory '" + ctx.out_dir +
                       "': " + ec.message());
  }
  const std::string path =
      (std::filesystem::path(ctx.out_dir) / name).string();
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    throw config_error("cannot open output file '" + path + "'");
  }
  return os;
}

void write_preamble(CsvWriter& w, const CommandContext& ctx) {
  w.comment(std::string("cavicool ") + version_string);
  w.comment("seed = " + std::to_string(ctx.seed));
  for (const auto& line : dump_config(ctx.cfg)) {
    w.comment(line);
  }
}

}  // namespace cavicool::cli
