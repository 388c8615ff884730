#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "charsum/jobs.hpp"

using charsum::JobOptions;
using charsum::JobOutcome;
using nlohmann::json;

int main(int argc, char** argv) {
  CLI::App app{"Exact character-sum identity verifier"};
  std::string job_file, suite;
  JobOptions opts;
  bool timing = false;
  app.add_option("--job", job_file, "JSON job file, '-' for stdin");
  app.add_option("--suite", suite, "acceptance | full");
  app.add_option("--depth", opts.depth, "default extension depth")->check(CLI::PositiveNumber);
  app.add_option("--max-grid", opts.max_grid, "largest grid for pointwise checks")->check(CLI::PositiveNumber);
  app.add_option("--seed", opts.seed, "seed for sampled checks");
  app.add_flag("--emit-floats", opts.emit_floats, "attach advisory complex approximations");
  app.add_flag("--timing", timing, "print wall times to stderr");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : charsum::kExitSchema;
  }
  if (job_file.empty() == suite.empty()) {
    std::cerr << "exactly one of --job and --suite is required\n";
    return charsum::kExitSchema;
  }

  auto start = std::chrono::steady_clock::now();
  JobOutcome out;
  if (!suite.empty()) {
    out = charsum::run_suite(suite, opts);
  } else {
    std::stringstream buf;
    if (job_file == "-") {
      buf << std::cin.rdbuf();
    } else {
      std::ifstream in(job_file);
      if (!in) {
        std::cerr << "cannot read " << job_file << "\n";
        return charsum::kExitSchema;
      }
      buf << in.rdbuf();
    }
    json job = json::parse(buf.str(), nullptr, false);
    if (job.is_discarded()) {
      out.report = {{"error", {{"type", "schema"}, {"message", "job file is not valid JSON"}}}, {"pass", false}};
      out.exit_code = charsum::kExitSchema;
    } else {
      out = charsum::run_job(job, opts);
    }
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // Wall times stay out of the report so that it is byte-identical across runs.
  json times = out.report.contains("timing") ? out.report["timing"] : json::array();
  out.report.erase("timing");
  std::cout << out.report.dump(2) << "\n";
  if (timing) std::cerr << json{{"seconds", seconds}, {"criteria", times}}.dump() << "\n";
  if (out.exit_code >= charsum::kExitSchema && out.report.contains("error"))
    std::cerr << "error (" << out.report["error"]["type"].get<std::string>()
              << "): " << out.report["error"]["message"].get<std::string>() << "\n";
  return out.exit_code;
}
