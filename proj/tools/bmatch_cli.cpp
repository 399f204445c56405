// Command-line front end; subcommands are wired up in cli_main.
#include "bmatch/cli.hpp"

int main(int argc, char** argv) { return bmatch::cli_main(argc, argv); }
