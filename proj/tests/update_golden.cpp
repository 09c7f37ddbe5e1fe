// Regenerates tests/golden/<name>.json from the current CLI output.

#include <iostream>

#include "golden.hpp"

int main(int argc, char** argv) {
  using namespace weilreg::testing;
  for (int i = 1; i < argc; ++i) {
    std::string name = argv[i];
    auto [code, out] = run_command(std::string(WEILREG_CLI) + " run " + session_path(name));
    std::ofstream(golden_path(name), std::ios::binary) << strip_timing(out);
    std::cout << name << ": exit " << code << "\n";
  }
}
