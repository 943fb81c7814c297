#include "vitpoly/census.hpp"
#include "vitpoly/classify.hpp"
#include "vitpoly/json_io.hpp"
#include "vitpoly/propagate.hpp"

#include <iostream>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::cout << "vitpoly (cli wiring pending)\n";
  return 0;
}
