#include "vortexbody/cli.hpp"

int main(int argc, char** argv) { return vortexbody::run_cli(argc, argv); }
