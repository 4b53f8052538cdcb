#include <iostream>

#include "dispatch.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto o = syndetic::cli::dispatch(args);
  std::cout << o.out;
  std::cerr << o.err;
  return o.exit_code;
}
