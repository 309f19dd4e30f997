#include "ktb/cli.hpp"

int main(int argc, char** argv) { return ktb::cli::main(argc, argv); }
