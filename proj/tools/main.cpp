#include "coophunt/cli.hpp"

int main(int argc, char** argv) { return coophunt::run_cli(argc, argv); }
