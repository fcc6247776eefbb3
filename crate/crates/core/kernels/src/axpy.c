/* Fused multiply-add axpy sweeps. */
#include "rt.h"

#define LEN 256
#define REPS 6


static float xs[LEN], ys[LEN];

void bench(void) {
    u32 s = 0xfeedf00du;
    for (int i = 0; i < LEN; i++) {
        xs[i] = (float)(i32)(xorshift(&s) & 0xffff) * 0.0001f;
        ys[i] = (float)(i32)(xorshift(&s) & 0xffff) * 0.0002f - 6.0f;
    }
    float a = 0.75f;
    for (int r = 0; r < REPS; r++) {
        for (int i = 0; i < LEN; i++)
            ys[i] = __builtin_fmaf(a, xs[i], ys[i]);
        a = a * -0.5f + 0.125f;
    }
    float sum = 0.0f;
    for (int i = 0; i < LEN; i++)
        sum += ys[i];
    put_hex(float_bits(sum));
    put_hex((u32)(i32)(sum * 16.0f));
}
