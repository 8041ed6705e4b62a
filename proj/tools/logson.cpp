#include "logson/cli.hpp"

int main(int argc, char** argv) { return logson::cli::run(argc, argv); }
