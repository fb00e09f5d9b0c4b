#include "qdecay/cli.hpp"

int main(int argc, char** argv) { return qdecay::run_cli(argc, argv); }
