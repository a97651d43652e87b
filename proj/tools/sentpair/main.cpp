#include "sentpair/cli.hpp"

int main(int argc, char** argv) { return sentpair::cli::run(argc, argv); }
