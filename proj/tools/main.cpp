#include "dualdefect/cli.hpp"

int main(int argc, char** argv) { return dualdefect::cli::run(argc, argv); }
