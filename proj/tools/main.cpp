#include <string>
#include <vector>

#include "reiflab/cli.hpp"

int main(int argc, char** argv) {
  return reiflab::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
