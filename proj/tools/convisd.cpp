#include "convisd/cli.hpp"

int main(int argc, char** argv) { return convisd::run_cli(argc, argv); }
