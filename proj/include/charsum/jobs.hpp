#pragma once

#include <cstdint>
#include <exception>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace charsum {

// malformed or inconsistent job payload
class SchemaError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Defaults for fields a job leaves out.  Fields present in the job win.
struct JobOptions {
  int depth = 2;
  std::uint64_t max_grid = std::uint64_t(1) << 13;  // grid points per pointwise check
  std::uint64_t seed = 1;
  bool emit_floats = false;  // attach advisory complex approximations
};

enum ExitCode { kExitPass = 0, kExitFail = 1, kExitSchema = 2, kExitSize = 3, kExitInvariant = 4 };

// Exit code and error type for an exception escaping an engine.
struct ErrorClass {
  int exit_code;
  const char* type;
};
ErrorClass classify_exception(std::exception_ptr e);

struct JobOutcome {
  nlohmann::json report;
  int exit_code = kExitPass;
};

// Runs one job.  Engine exceptions are mapped onto the exit-code contract and
// described in report["error"]; nothing escapes.
JobOutcome run_job(const nlohmann::json& job, const JobOptions& opts);

// "acceptance" runs the criteria; "full" runs them and then the built-in job list.
JobOutcome run_suite(const std::string& name, const JobOptions& opts);

}  // namespace charsum
