#include "cli.hpp"

int main(int argc, char** argv) { return htaac::cli::run(argc, argv); }
