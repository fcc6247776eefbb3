/* Euclid's algorithm on pseudo-random pairs. */
#include "rt.h"

#define PAIRS 300

static u32 gcd(u32 a, u32 b) {
    while (b) {
        u32 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

void bench(void) {
    u32 s = 0x9e3779b9u;
    u32 sum = 0, ones = 0;
    for (int i = 0; i < PAIRS; i++) {
        u32 a = xorshift(&s) >> 4;
        u32 b = (xorshift(&s) >> 8) | 1;
        u32 g = gcd(a, b);
        sum += g;
        ones += g == 1;
    }
    put_hex(sum);
    put_hex(ones);
}
