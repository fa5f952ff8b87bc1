#include <iostream>

#include "seorank/pipeline.hpp"

int main(int argc, char** argv) { return seorank::run_cli(argc, argv, std::cout, std::cerr); }
