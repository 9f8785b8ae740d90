#include "cli/run.hpp"

int main(int argc, char** argv) { return cmjtree::cli::main_entry(argc, argv); }
