#include "arckh/cli.hpp"

int main(int argc, char** argv) { return arckh::cli::run(argc, argv); }
