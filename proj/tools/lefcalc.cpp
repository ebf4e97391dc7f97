#include "lefcalc/cli.hpp"

int main(int argc, char** argv) { return lefcalc::cli::run_cli(argc, argv); }
