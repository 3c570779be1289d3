#include "lrp/cli/commands.hpp"

int main(int argc, char** argv) { return lrp::cli::run(argc, argv); }
