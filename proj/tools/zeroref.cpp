#include <vector>

#include "zeroref/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return zeroref::run_cli(args);
}
