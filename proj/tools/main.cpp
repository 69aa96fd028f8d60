#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return cspace::cli::app_main(argc, argv, std::cout, std::cerr); }
