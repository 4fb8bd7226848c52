#include "fwlab/cli.hpp"

int main(int argc, char** argv) { return fwlab::cli::main(argc, argv); }
