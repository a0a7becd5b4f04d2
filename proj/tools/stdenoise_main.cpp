#include "stdenoise/cli.hpp"

int main(int argc, char** argv) { return stdenoise::cli_main(argc, argv); }
