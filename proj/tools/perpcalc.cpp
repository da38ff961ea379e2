#include "perp/cli.hpp"

int main(int argc, char **argv) { return perp::cli::run_command(argc, argv); }
