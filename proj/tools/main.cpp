#include <iostream>

#include "commands.hpp"

int main(int argc, char **argv)
{
  return cuspidal::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
