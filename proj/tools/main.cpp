#include "kfb/cli.hpp"

int main(int argc, char** argv) { return kfb::run_cli(argc, argv); }
