#include <iostream>
#include <string>
#include <vector>

#include "disslab/app.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return disslab::app::run(args, std::cout, std::cerr);
}
