#include "prpairs_cli/cli.hpp"

int main(int argc, char** argv) { return prp::cli::main_entry(argc, argv); }
