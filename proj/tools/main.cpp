#include "wellpath/cli.hpp"

int main(int argc, char** argv) { return wellpath::run_cli(argc, argv); }
