#pragma once

#include <string>

namespace circmap {

struct RunConfig {
  std::string input;
  double tol = 1e-4;
  std::string mode = "auto";  // auto | certified | residual
  std::size_t resolution = 256;
  std::string out = ".";
  bool plot = false;
  int grid_x = 20;
  int grid_y = 20;
};

/// Exit codes: 0 success, 1 input error or missing artifacts, 2 iteration
/// budget exhausted, 3 certification unavailable.
int cmd_map(const RunConfig& config);
int cmd_certify(const RunConfig& config);
int cmd_plot(const RunConfig& config);

int run_cli(int argc, char** argv);

}  // namespace circmap
