/* Compensated summation and range tracking in single precision. */
#include "rt.h"

#define LEN 512

static float vals[LEN];

void bench(void) {
    u32 s = 0x31415926u;
    for (int i = 0; i < LEN; i++)
        vals[i] = (float)(i32)(xorshift(&s) & 0xfffff) - 524288.0f;
    float sum = 0.0f, comp = 0.0f;
    float lo = vals[0], hi = vals[0];
    for (int i = 0; i < LEN; i++) {
        float v = vals[i];
        float y = v - comp;
        float t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (v < lo)
            lo = v;
        if (v > hi)
            hi = v;
    }
    float prefix = 0.0f;
    i32 crossings = 0;
    for (int i = 0; i < LEN; i++) {
        float next = prefix + vals[i];
        if ((next < 0.0f) != (prefix < 0.0f))
            crossings++;
        prefix = next;
    }
    put_hex(float_bits(sum));
    put_hex(float_bits(hi - lo));
    put_hex((u32)crossings);
    put_hex((u32)(i32)prefix);
}
