#include "cluskit/cli.hpp"

int main(int argc, char** argv) { return cluskit::cli::run(argc, argv); }
