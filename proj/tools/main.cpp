// SPDX-License-Identifier: Apache-2.0
#include <iostream>
#include <string>
#include <vector>

#include "csdoa/cli.hpp"

int main(int argc, char** argv) {
  return csdoa::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
