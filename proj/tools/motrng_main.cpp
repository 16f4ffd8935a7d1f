#include "motrng/cli.hpp"

int main(int argc, char** argv) { return motrng::run_cli(argc, argv); }
