#include <string>
#include <vector>

#include "tanhsim/cli.hpp"

int main(int argc, char** argv) {
  return tanhsim::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
