#include <cstdio>

int main() {
  std::puts("eala: suites not wired up yet");
  return 2;
}
