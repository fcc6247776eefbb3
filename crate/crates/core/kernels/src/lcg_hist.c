/* Histogram of a linear congruential generator reduced modulo a prime. */
#include "rt.h"

#define DRAWS 900
#define BINS 37

static u32 hist[BINS];

void bench(void) {
    for (int i = 0; i < BINS; i++)
        hist[i] = 0;
    u32 x = 12345;
    u32 m = BINS;
    for (int i = 0; i < DRAWS; i++) {
        x = x * 1103515245u + 12345u;
        hist[(x >> 8) % m]++;
    }
    u32 check = 0, peak = 0;
    for (int i = 0; i < BINS; i++) {
        check = check * 31u + hist[i];
        if (hist[i] > peak)
            peak = hist[i];
    }
    put_hex(check);
    put_hex(peak);
}
