#include "fhnhopf/cli.hpp"

int main(int argc, char** argv) { return fhn::cli::dispatch(argc, argv); }
