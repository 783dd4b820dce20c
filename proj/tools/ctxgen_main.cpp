#include "ctxgen/cli.hpp"

int main(int argc, char** argv) { return ctxgen::cli::main(argc, argv); }
