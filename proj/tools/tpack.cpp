#include "tpack/cli.hpp"

int main(int argc, char** argv) { return tpack::cli_dispatch(argc, argv); }
