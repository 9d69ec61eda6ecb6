#include "fracharm/cli.hpp"

int main(int argc, char** argv) { return fracharm::cli::main_entry(argc, argv); }
