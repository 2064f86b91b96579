#include "app.hpp"

int main(int argc, char** argv) { return heuncross::cli::run(argc, argv); }
