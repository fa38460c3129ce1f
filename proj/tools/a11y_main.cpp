#include "a11y/cli.hpp"

int main(int argc, char** argv) { return a11y::cli::run_cli(argc, argv); }
