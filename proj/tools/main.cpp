#include "repsim/cli.hpp"

int main(int argc, char** argv) { return repsim::run_cli(argc, argv); }
