#include "cli.hpp"

int main(int argc, char** argv) { return fermat3::cli::run(argc, argv); }
