#include "pwhs/cli.hpp"

int main(int argc, char** argv) { return pwhs::cli::run(argc, argv); }
