#include "rydmis/cli.hpp"

int main(int argc, char** argv) { return rydmis::cli::run_cli(argc, argv); }
