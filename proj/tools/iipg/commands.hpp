#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace iipg::cli {

/// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitPrediction = 3,
  kExitGuidance = 4,
  kExitValidation = 5,
};

/// Entry point shared by main() and the tests. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_predict(const std::string& scenario_path, const std::string& json_path,
                std::ostream& out, std::ostream& err);
int cmd_simulate(const std::string& scenario_path, const std::string& out_dir, double dt_override,
                 std::ostream& out, std::ostream& err);
int cmd_validate(unsigned long long seed, long long samples, const std::string& out_dir,
                 std::ostream& out, std::ostream& err);
int cmd_cases(const std::string& out_dir, double dt, std::ostream& out, std::ostream& err);

}  // namespace iipg::cli
