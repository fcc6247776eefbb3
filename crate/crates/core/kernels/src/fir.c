/* Fixed-point FIR filter over a pseudo-random signal. */
#include "rt.h"

#define SAMPLES 400
#define TAPS 16

static i32 x[SAMPLES];
static i32 h[TAPS];
static i32 y[SAMPLES];

void bench(void) {
    u32 s = 0x5eed1234u;
    for (int i = 0; i < SAMPLES; i++)
        x[i] = (i32)(xorshift(&s) & 0xffff) - 32768;
    for (int k = 0; k < TAPS; k++)
        h[k] = (i32)(xorshift(&s) & 0x3fff) - 8192;
    for (int n = TAPS - 1; n < SAMPLES; n++) {
        i32 acc = 0;
        for (int k = 0; k < TAPS; k++)
            acc += h[k] * x[n - k];
        y[n] = acc >> 15;
    }
    u32 check = 0;
    for (int n = 0; n < SAMPLES; n++)
        check = (check << 7 | check >> 25) + (u32)y[n];
    put_hex(check);
}
