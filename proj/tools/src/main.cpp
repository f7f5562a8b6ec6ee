#include "pathlab/cli/run.hpp"

int main(int argc, char** argv) { return pathlab::cli::main_entry(argc, argv); }
