/* Decimal formatting of pseudo-random integers. */
#include "rt.h"

#define COUNT 160

static int to_dec(u32 v, char *out) {
    char tmp[10];
    int n = 0;
    do {
        tmp[n++] = (char)('0' + v % 10);
        v /= 10;
    } while (v);
    for (int i = 0; i < n; i++)
        out[i] = tmp[n - 1 - i];
    return n;
}

void bench(void) {
    u32 s = 0xfeedf00du;
    char buf[10];
    u32 digits = 0, check = 0;
    for (int i = 0; i < COUNT; i++) {
        u32 v = xorshift(&s) >> (i & 15);
        int n = to_dec(v, buf);
        digits += (u32)n;
        for (int k = 0; k < n; k++)
            check = (check << 4 | check >> 28) ^ (u32)buf[k];
    }
    put_hex(digits);
    put_hex(check);
}
