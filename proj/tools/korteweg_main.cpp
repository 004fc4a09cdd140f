#include "korteweg/cli.hpp"

int main(int argc, char** argv) { return korteweg::cli::main(argc, argv); }
