#include "circmap/cli.hpp"

int main(int argc, char** argv) { return circmap::run_cli(argc, argv); }
