// Batch driver: build / verify / study / demo. Filled in alongside the
// pipelines; see README for config schemas.
#include <cstdio>

int main() {
    std::puts("polynet: not yet wired");
    return 2;
}
