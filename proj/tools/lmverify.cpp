#include "lm/cli.hpp"

int main(int argc, char** argv) { return lm::run(argc, argv); }
