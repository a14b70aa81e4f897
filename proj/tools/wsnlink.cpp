#include "cli_app.hpp"

int main(int argc, char** argv) { return wsnlink::cli::run(argc, argv); }
