#include "logsurf/cli.hpp"

int main(int argc, char** argv) { return logsurf::cli::main_impl(argc, argv); }
