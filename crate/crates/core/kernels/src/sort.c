/* Insertion sort over many small arrays. */
#include "rt.h"

#define ARRAYS 24
#define LEN 32

static i32 data[LEN];

void bench(void) {
    u32 s = 0x2468ace1u;
    u32 check = 0;
    for (int a = 0; a < ARRAYS; a++) {
        for (int i = 0; i < LEN; i++)
            data[i] = (i32)(xorshift(&s) >> 8) - (1 << 23);
        for (int i = 1; i < LEN; i++) {
            i32 key = data[i];
            int j = i - 1;
            while (j >= 0 && data[j] > key) {
                data[j + 1] = data[j];
                j--;
            }
            data[j + 1] = key;
        }
        for (int i = 0; i < LEN; i++)
            check = (check << 3 | check >> 29) ^ (u32)data[i];
    }
    put_hex(check);
}
