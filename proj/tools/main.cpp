#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  eocos::cli::Environment env;
  if (const char* path = std::getenv("EOCOS_CONFIG")) env.config_path = path;
  return eocos::cli::run_cli(args, std::cin, std::cout, std::cerr, env);
}
