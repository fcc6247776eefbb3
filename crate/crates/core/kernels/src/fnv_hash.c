/* FNV-1a over generated byte strings, bucketed by hash. */
#include "rt.h"

#define STRINGS 96
#define LEN 24
#define BUCKETS 64

static u32 buckets[BUCKETS];

void bench(void) {
    u32 s = 0x1234abcdu;
    u8 buf[LEN];
    for (int i = 0; i < BUCKETS; i++)
        buckets[i] = 0;
    u32 all = 2166136261u;
    for (int n = 0; n < STRINGS; n++) {
        for (int i = 0; i < LEN; i++)
            buf[i] = (u8)xorshift(&s);
        u32 h = 2166136261u;
        for (int i = 0; i < LEN; i++) {
            h ^= buf[i];
            h *= 16777619u;
        }
        buckets[h & (BUCKETS - 1)]++;
        all = (all ^ h) * 16777619u;
    }
    u32 check = 0;
    for (int i = 0; i < BUCKETS; i++)
        check = (check << 3 | check >> 29) ^ buckets[i];
    put_hex(all);
    put_hex(check);
}
