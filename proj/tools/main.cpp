#include "isingring/commands.hpp"

int main(int argc, char** argv) { return isingring::run_cli(argc, argv); }
