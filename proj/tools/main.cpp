#include "lampmet/cli.hpp"

int main(int argc, char** argv) { return lampmet::cli_main(argc, argv); }
