/* Host-side check of the soft-float routines against the host FPU.
 * Build: cc -O2 -DSOFTFLOAT_HOST_TEST -I../runtime softfloat_check.c ../runtime/softfloat.c -lm */
#include <math.h>
#include <stdio.h>
#include <stdint.h>
#include <string.h>
#include "rt.h"

u32 sf_add(u32, u32); u32 sf_mul(u32, u32); u32 sf_div(u32, u32); u32 sf_sqrt(u32);
u32 sf_fma(u32, u32, u32); u32 sf_min(u32, u32); u32 sf_max(u32, u32);
u32 sf_from_i32(i32); u32 sf_from_u32(u32); i32 sf_to_i32(u32); u32 sf_to_u32(u32);

static u32 fb(float f) { u32 u; memcpy(&u, &f, 4); return u; }
static float bf(u32 u) { float f; memcpy(&f, &u, 4); return f; }
static u32 canon(u32 u) { return ((u & 0x7fffffffu) > 0x7f800000u) ? 0x7fc00000u : u; }
static u64 st = 88172645463325252ull;
static u32 rnd(void) { st ^= st << 13; st ^= st >> 7; st ^= st << 17; return (u32)(st >> 16); }
static const u32 specials[] = {0, 0x80000000u, 0x7f800000u, 0xff800000u, 0x7fc00000u, 0x7fa00001u,
    0x00000001u, 0x80000001u, 0x007fffffu, 0x00800000u, 0x7f7fffffu, 0xff7fffffu, 0x3f800000u,
    0xbf800000u, 0x3f800001u, 0x4b000000u, 0x4f000000u, 0xcf000000u, 0x4f800000u};
static u32 pick(void) {
    u32 r = rnd();
    switch (r & 7) {
    case 0: return specials[rnd() % (sizeof specials / 4)];
    case 1: return rnd() & 0x80ffffffu; /* small exponents / subnormals */
    case 2: return (rnd() & 0x807fffffu) | ((120 + rnd() % 16) << 23);
    default: return rnd();
    }
}

int main(void) {
    long fails = 0;
    for (long i = 0; i < 20000000; i++) {
        u32 a = pick(), b = pick(), c = pick();
        float fa = bf(a), fbv = bf(b), fc = bf(c);
        u32 e, g;
#define CHK(name, got, exp) do { g = (got); e = (exp); if (g != e) { if (fails++ < 20) printf(name " a=%08x b=%08x c=%08x got=%08x exp=%08x\n", a, b, c, g, e); } } while (0)
        CHK("add", sf_add(a, b), canon(fb(fa + fbv)));
        CHK("sub", sf_add(a, b ^ 0x80000000u), canon(fb(fa - fbv)));
        CHK("mul", sf_mul(a, b), canon(fb(fa * fbv)));
        CHK("div", sf_div(a, b), canon(fb(fa / fbv)));
        CHK("sqrt", sf_sqrt(a), canon(fb(sqrtf(fa))));
        CHK("fma", sf_fma(a, b, c), canon(fb(fmaf(fa, fbv, fc))));
        CHK("i2f", sf_from_i32((i32)a), fb((float)(i32)a));
        CHK("u2f", sf_from_u32(a), fb((float)a));
        if (!isnan(fa) && fa > -2147483648.0f && fa < 2147483648.0f)
            CHK("f2i", (u32)sf_to_i32(a), (u32)(i32)fa);
        if (!isnan(fa) && fa > -1.0f && fa < 4294967296.0f)
            CHK("f2u", sf_to_u32(a), (u32)fa);
        if (!isnan(fa) && !isnan(fbv) && !(fa == 0 && fbv == 0)) {
            CHK("min", sf_min(a, b), fb(fminf(fa, fbv)));
            CHK("max", sf_max(a, b), fb(fmaxf(fa, fbv)));
        }
    }
    printf("fails=%ld\n", fails);
    return fails != 0;
}
