#include "cli.hpp"

int main(int argc, char** argv) { return qlna::cli::main(argc, argv); }
