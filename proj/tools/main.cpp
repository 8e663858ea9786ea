#include "cli.hpp"

int main(int argc, char** argv) { return aiblock::cli::run(argc, argv); }
