#include "experiment.hpp"

int main(int argc, char** argv) { return lorentz::cli::main_entry(argc, argv); }
