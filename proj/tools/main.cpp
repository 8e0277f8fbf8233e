#include "anisonet/cli.hpp"

int main(int argc, char** argv) { return anisonet::cli::run(argc, argv); }
