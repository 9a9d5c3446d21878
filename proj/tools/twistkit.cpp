#include <cstdio>

int main() {
  std::puts("twistkit: no subcommands wired up yet");
  return 2;
}
