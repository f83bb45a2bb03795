#include "cli.hpp"

int main(int argc, char** argv) { return boltzlab::cli::run(argc, argv); }
