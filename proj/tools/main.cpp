#include "cli.hpp"

int main(int argc, char** argv) { return ahv::cli::run(argc, argv); }
