#include "vacuumprobe/cli.hpp"

int main(int argc, char** argv) {
  return vacuumprobe::cli::run_main(argc, argv);
}
