#include "plsstop/cli.hpp"

int main(int argc, char** argv) { return plsstop::run_cli(argc, argv); }
