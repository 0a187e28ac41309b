#include "cli.hpp"

int main(int argc, char** argv) { return leeyang::cli::main_entry(argc, argv); }
