#include "hydroconf/cli.hpp"

int main(int argc, char** argv) { return hydroconf::cli::run(argc, argv); }
