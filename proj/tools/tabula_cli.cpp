#include "tabula/cli/commands.hpp"

int main(int argc, char** argv) { return tabula::cli::run(argc, argv); }
