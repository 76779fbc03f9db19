#include "divsub/cli.hpp"

int main(int argc, char** argv) { return divsub::cli::main(argc, argv); }
