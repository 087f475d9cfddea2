#include "bargmann/cli.hpp"

int main(int argc, char** argv) { return bargmann::run_cli(argc, argv); }
