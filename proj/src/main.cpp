#include "hopfcup/cli.hpp"

int main(int argc, char** argv) { return hopfcup::cli::main(argc, argv); }
