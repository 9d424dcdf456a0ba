#include "rweno/cli.hpp"

int main(int argc, char** argv) { return rweno::cli::run_cli(argc, argv); }
