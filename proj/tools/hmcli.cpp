#include "hm/cli_io.hpp"

int main(int argc, char** argv) { return hm::main_entry(argc, argv); }
