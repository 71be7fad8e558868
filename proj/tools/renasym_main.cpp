#include "renasym/cli.hpp"

int main(int argc, char** argv) { return renasym::cli::run_cli(argc, argv); }
