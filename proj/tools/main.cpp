#include <string>
#include <vector>

#include "tradeport/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return tradeport::cli::run(args);
}
