#include "prequant.h"

#include <cstdio>

int main() {
    std::printf("prequant-lab %s\n", pql_version());
    return 0;
}
