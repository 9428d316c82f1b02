#include "tide/cli/cli.hpp"

int main(int argc, char** argv) { return tide::cli::run(argc, argv); }
