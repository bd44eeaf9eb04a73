#include <cstdio>

int main() {
    std::puts("shade: CLI wiring not built yet");
    return 1;
}
