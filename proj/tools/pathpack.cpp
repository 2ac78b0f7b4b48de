#include <cstdio>

int main() {
  std::puts("pathpack: command-line interface not wired up yet");
  return 1;
}
