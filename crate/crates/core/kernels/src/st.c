/* Integer statistics over paired series. Floating point appears only once
 * per chunk and in the final summary. */
#include "rt.h"

#define LEN 600
#define CHUNK 12

static i32 xs[LEN], ys[LEN];

void bench(void) {
    u32 s = 0x77777777u;
    for (int i = 0; i < LEN; i++) {
        xs[i] = (i32)(xorshift(&s) & 0x3ff) - 512;
        ys[i] = xs[i] * 3 + (i32)(xorshift(&s) & 0x7f) - 64;
    }
    i32 sx = 0, sy = 0, sxx = 0, sxy = 0;
    i32 cxx = 0, cxy = 0, left = CHUNK;
    float ratio_sum = 0.0f;
    for (int i = 0; i < LEN; i++) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        cxx += xs[i] * xs[i];
        cxy += xs[i] * ys[i];
        if (--left == 0) {
            ratio_sum += (float)cxy / (float)(cxx + 1);
            cxx = cxy = 0;
            left = CHUNK;
        }
    }
    i32 bucket_hits = 0;
    for (int i = 0; i < LEN; i++)
        bucket_hits += (xs[i] * ys[i]) / 1024;
    float n = (float)LEN;
    float mean_x = (float)sx / n;
    float mean_y = (float)sy / n;
    float var_x = (float)sxx / n - mean_x * mean_x;
    float cov = (float)sxy / n - mean_x * mean_y;
    float slope = cov / var_x;
    float sd = __builtin_sqrtf(var_x);
    put_hex((u32)bucket_hits);
    put_hex(float_bits(slope));
    put_hex(float_bits(sd));
    put_hex(float_bits(ratio_sum));
}
