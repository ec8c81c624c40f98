#include "gapcert/cli.hpp"

int main(int argc, char** argv) { return gapcert::cli_main(argc, argv); }
