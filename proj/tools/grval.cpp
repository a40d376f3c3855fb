#include <iostream>

#include "grval_app.hpp"

int main(int argc, char** argv) { return grval::app::run(argc, argv, std::cout, std::cerr); }
