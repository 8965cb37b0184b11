#include "cli.hpp"

int main(int argc, char** argv) {
  return hfcov::cli::run_cli(argc, argv);
}
