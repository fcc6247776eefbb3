/* Horner evaluation of a fixed polynomial over a grid of points. */
#include "rt.h"

#define POINTS 320
#define DEGREE 8

static const float coeff[DEGREE + 1] = {
    0.5f, -1.25f, 0.375f, 2.0f, -0.0625f, 0.75f, -0.3125f, 0.125f, 1.0f,
};

void bench(void) {
    i32 check = 0;
    float total = 0.0f;
    for (int p = 0; p < POINTS; p++) {
        float x = (float)(p - POINTS / 2) * (1.0f / 128.0f);
        float acc = coeff[0];
        for (int k = 1; k <= DEGREE; k++)
            acc = acc * x + coeff[k];
        total += acc;
        check += (i32)(acc * 1024.0f);
    }
    put_hex(float_bits(total));
    put_hex((u32)check);
}
