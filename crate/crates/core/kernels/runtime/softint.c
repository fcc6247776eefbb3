/* Integer multiply/divide routines for targets without the M extension.
 * Division by zero and overflow follow RISC-V M semantics. */

#include "rt.h"

u32 __mulsi3(u32 a, u32 b) {
    u32 r = 0;
    while (b) {
        if (b & 1)
            r += a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

u64 __muldi3(u64 a, u64 b) {
    u64 r = 0;
    while (b) {
        if (b & 1)
            r += a;
        a <<= 1;
        b >>= 1;
    }
    return r;
}

static u32 udivmod(u32 n, u32 d, u32 *rem) {
    if (d == 0) {
        *rem = n;
        return 0xffffffffu;
    }
    u32 q = 0;
    u32 r = 0;
    for (int i = 31; i >= 0; i--) {
        r = (r << 1) | ((n >> i) & 1);
        if (r >= d) {
            r -= d;
            q |= 1u << i;
        }
    }
    *rem = r;
    return q;
}

u32 __udivsi3(u32 n, u32 d) {
    u32 r;
    return udivmod(n, d, &r);
}

u32 __umodsi3(u32 n, u32 d) {
    u32 r;
    udivmod(n, d, &r);
    return r;
}

i32 __divsi3(i32 n, i32 d) {
    if (d == 0)
        return -1;
    if (n == (i32)0x80000000u && d == -1)
        return n;
    u32 un = n < 0 ? 0u - (u32)n : (u32)n;
    u32 ud = d < 0 ? 0u - (u32)d : (u32)d;
    u32 r;
    u32 q = udivmod(un, ud, &r);
    return ((n < 0) != (d < 0)) ? -(i32)q : (i32)q;
}

i32 __modsi3(i32 n, i32 d) {
    if (d == 0)
        return n;
    if (n == (i32)0x80000000u && d == -1)
        return 0;
    u32 un = n < 0 ? 0u - (u32)n : (u32)n;
    u32 ud = d < 0 ? 0u - (u32)d : (u32)d;
    u32 r;
    udivmod(un, ud, &r);
    return n < 0 ? -(i32)r : (i32)r;
}
