#include "forge_commands.hpp"

int main(int argc, char** argv) { return forge::run(argc, argv); }
