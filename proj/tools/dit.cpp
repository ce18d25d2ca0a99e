#include "di/cli.hpp"

int main(int argc, char** argv) { return di::run_cli(argc, argv); }
