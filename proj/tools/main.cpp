#include "ingarch/cli.hpp"

int main(int argc, char** argv) { return ingarch::run_cli(argc, argv); }
