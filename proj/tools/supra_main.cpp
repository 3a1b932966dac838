#include "supra/cli.hpp"

int main(int argc, char** argv) { return supra::cli::dispatch(argc, argv); }
