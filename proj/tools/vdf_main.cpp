#include <iostream>

#include "vdf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  vdf::cli::Outcome r = vdf::cli::run(args);
  if (!r.out.empty()) std::cout << r.out << '\n';
  if (!r.err.empty()) std::cerr << r.err << '\n';
  return r.code;
}
