#include "fracspec/cli.hpp"

int main(int argc, char** argv) { return fracspec::run_cli(argc, argv); }
