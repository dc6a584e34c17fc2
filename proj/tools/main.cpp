#include "cuspdim/cli.hpp"

int main(int argc, char** argv) { return cuspdim::run_cli(argc, argv); }
