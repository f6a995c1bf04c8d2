#include <iostream>

#include "dimspect/cli.hpp"
#include "dimspect/kernels.hpp"

int main(int argc, char** argv) {
  dimspect::configure_threads_from_env();
  return dimspect::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
