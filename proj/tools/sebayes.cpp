#include "sebayes/cli.hpp"

int main(int argc, char** argv) { return sebayes::cli::main(argc, argv); }
