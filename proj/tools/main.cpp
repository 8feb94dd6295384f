#include "diminimal/cli.hpp"

int main(int argc, char** argv) { return diminimal::run(argc, argv); }
