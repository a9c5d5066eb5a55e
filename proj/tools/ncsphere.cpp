#include "ncsphere/cli.hpp"

int main(int argc, char** argv) { return ncsphere::run_command(argc, argv); }
