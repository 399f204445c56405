#include "bmatch/cli.hpp"

#include <cstdio>

namespace bmatch {

int cli_main(int, char**) {
  std::puts("bmatch: subcommands not wired up yet");
  return 2;
}

}  // namespace bmatch
