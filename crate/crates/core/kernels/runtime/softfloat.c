/* Single-precision soft-float routines for the ilp32 soft-float ABI.
 *
 * Results follow RISC-V F semantics bit for bit: round to nearest even,
 * canonical quiet NaN (0x7fc00000) for every NaN result, saturating
 * float-to-int conversion, and fmin/fmax ordering -0 below +0.
 */

#include "rt.h"

#define SIGN_BIT 0x80000000u
#define EXP_MASK 0x7f800000u
#define FRAC_MASK 0x007fffffu
#define IMPLICIT 0x00800000u
#define QNAN 0x7fc00000u
#define INF 0x7f800000u

typedef union {
    float f;
    u32 u;
} fbits;

static inline u32 to_bits(float f) {
    fbits b;
    b.f = f;
    return b.u;
}

static inline float from_bits(u32 u) {
    fbits b;
    b.u = u;
    return b.f;
}

static inline int is_nan(u32 a) { return (a & 0x7fffffffu) > INF; }

static int clz32(u32 x) {
    int n = 0;
    if (x == 0)
        return 32;
    if ((x & 0xffff0000u) == 0) { n += 16; x <<= 16; }
    if ((x & 0xff000000u) == 0) { n += 8; x <<= 8; }
    if ((x & 0xf0000000u) == 0) { n += 4; x <<= 4; }
    if ((x & 0xc0000000u) == 0) { n += 2; x <<= 2; }
    if ((x & 0x80000000u) == 0) { n += 1; }
    return n;
}

static int clz64(u64 x) {
    u32 hi = (u32)(x >> 32);
    if (hi)
        return clz32(hi);
    return 32 + clz32((u32)x);
}

/* Shift a subnormal significand up to the implicit bit; returns the
 * exponent the value would have as a normal number. */
static int normalize(u32 *sig) {
    int shift = clz32(*sig) - clz32(IMPLICIT);
    *sig <<= shift;
    return 1 - shift;
}

static u32 shift_right_sticky(u32 x, int n) {
    if (n <= 0)
        return x;
    if (n >= 32)
        return x != 0;
    return (x >> n) | ((x << (32 - n)) != 0);
}

/* Round and pack a significand carrying three extra low bits (implicit
 * bit at position 26) with biased exponent `exp`. */
static u32 round_pack(u32 sign, int exp, u32 sig) {
    u32 result;
    u32 rgs;
    if (exp >= 0xff)
        return sign | INF;
    if (exp <= 0) {
        sig = shift_right_sticky(sig, 1 - exp);
        exp = 0;
    }
    rgs = sig & 7;
    result = (sig >> 3) & FRAC_MASK;
    result |= (u32)exp << 23;
    result |= sign;
    if (rgs > 4)
        result++;
    else if (rgs == 4)
        result += result & 1;
    return result;
}

u32 sf_add(u32 a, u32 b) {
    u32 a_abs = a & 0x7fffffffu;
    u32 b_abs = b & 0x7fffffffu;
    if (a_abs > INF || b_abs > INF)
        return QNAN;
    if (a_abs == INF) {
        if (b_abs == INF && ((a ^ b) & SIGN_BIT))
            return QNAN;
        return a;
    }
    if (b_abs == INF)
        return b;
    if (a_abs == 0) {
        if (b_abs == 0)
            return a & b;
        return b;
    }
    if (b_abs == 0)
        return a;

    if (b_abs > a_abs) {
        u32 t = a;
        a = b;
        b = t;
    }

    int a_exp = (int)((a >> 23) & 0xff);
    int b_exp = (int)((b >> 23) & 0xff);
    u32 a_sig = a & FRAC_MASK;
    u32 b_sig = b & FRAC_MASK;
    if (a_exp == 0)
        a_exp = normalize(&a_sig);
    if (b_exp == 0)
        b_exp = normalize(&b_sig);

    u32 sign = a & SIGN_BIT;
    int subtract = ((a ^ b) & SIGN_BIT) != 0;

    a_sig = (a_sig | IMPLICIT) << 3;
    b_sig = (b_sig | IMPLICIT) << 3;
    b_sig = shift_right_sticky(b_sig, a_exp - b_exp);

    if (subtract) {
        a_sig -= b_sig;
        if (a_sig == 0)
            return 0;
        if (a_sig < (IMPLICIT << 3)) {
            int shift = clz32(a_sig) - clz32(IMPLICIT << 3);
            a_sig <<= shift;
            a_exp -= shift;
        }
    } else {
        a_sig += b_sig;
        if (a_sig & (IMPLICIT << 4)) {
            u32 sticky = a_sig & 1;
            a_sig = (a_sig >> 1) | sticky;
            a_exp += 1;
        }
    }
    return round_pack(sign, a_exp, a_sig);
}

u32 sf_mul(u32 a, u32 b) {
    u32 a_abs = a & 0x7fffffffu;
    u32 b_abs = b & 0x7fffffffu;
    u32 sign = (a ^ b) & SIGN_BIT;
    if (a_abs > INF || b_abs > INF)
        return QNAN;
    if (a_abs == INF) {
        if (b_abs == 0)
            return QNAN;
        return sign | INF;
    }
    if (b_abs == INF) {
        if (a_abs == 0)
            return QNAN;
        return sign | INF;
    }
    if (a_abs == 0 || b_abs == 0)
        return sign;

    int a_exp = (int)(a_abs >> 23);
    int b_exp = (int)(b_abs >> 23);
    u32 a_sig = a & FRAC_MASK;
    u32 b_sig = b & FRAC_MASK;
    if (a_exp == 0)
        a_exp = normalize(&a_sig);
    if (b_exp == 0)
        b_exp = normalize(&b_sig);
    a_sig |= IMPLICIT;
    b_sig |= IMPLICIT;

    /* 48-bit product, implicit bit at 46 or 47. */
    u64 prod = (u64)a_sig * (u64)b_sig;
    int exp = a_exp + b_exp - 127;
    if (prod & ((u64)1 << 47))
        exp += 1;
    else
        prod <<= 1;
    /* prod now has its leading bit at 47; keep 24 + 3 bits. */
    u32 sig = (u32)(prod >> 21) | ((prod & 0x1fffff) != 0);
    return round_pack(sign, exp, sig);
}

u32 sf_div(u32 a, u32 b) {
    u32 a_abs = a & 0x7fffffffu;
    u32 b_abs = b & 0x7fffffffu;
    u32 sign = (a ^ b) & SIGN_BIT;
    if (a_abs > INF || b_abs > INF)
        return QNAN;
    if (a_abs == INF) {
        if (b_abs == INF)
            return QNAN;
        return sign | INF;
    }
    if (b_abs == INF)
        return sign;
    if (a_abs == 0) {
        if (b_abs == 0)
            return QNAN;
        return sign;
    }
    if (b_abs == 0)
        return sign | INF;

    int a_exp = (int)(a_abs >> 23);
    int b_exp = (int)(b_abs >> 23);
    u32 a_sig = a & FRAC_MASK;
    u32 b_sig = b & FRAC_MASK;
    if (a_exp == 0)
        a_exp = normalize(&a_sig);
    if (b_exp == 0)
        b_exp = normalize(&b_sig);
    a_sig |= IMPLICIT;
    b_sig |= IMPLICIT;

    int exp = a_exp - b_exp + 127;
    if (a_sig < b_sig) {
        a_sig <<= 1;
        exp -= 1;
    }
    /* Restoring division: 26 quotient bits, implicit bit at 25. */
    u32 rem = a_sig;
    u32 q = 0;
    for (int i = 0; i < 26; i++) {
        q <<= 1;
        if (rem >= b_sig) {
            rem -= b_sig;
            q |= 1;
        }
        rem <<= 1;
    }
    u32 sig = (q << 1) | (rem != 0);
    return round_pack(sign, exp, sig);
}

u32 sf_sqrt(u32 a) {
    if (is_nan(a))
        return QNAN;
    if ((a & 0x7fffffffu) == 0)
        return a;
    if (a & SIGN_BIT)
        return QNAN;
    if (a == INF)
        return a;

    int exp = (int)(a >> 23);
    u32 sig = a & FRAC_MASK;
    if (exp == 0)
        exp = normalize(&sig);
    sig |= IMPLICIT;
    int e = exp - 127;
    if (e & 1) {
        sig <<= 1;
        e -= 1;
    }
    /* Digit-by-digit integer square root of sig << 27 (in [2^50, 2^52)). */
    u64 x = (u64)sig << 27;
    u64 res = 0;
    u64 bit = (u64)1 << 50;
    while (bit) {
        if (x >= res + bit) {
            x -= res + bit;
            res = (res >> 1) + bit;
        } else {
            res >>= 1;
        }
        bit >>= 2;
    }
    u32 r = (u32)res;
    u32 out = (r << 1) | (x != 0);
    return round_pack(0, e / 2 + 127, out);
}

u32 sf_fma(u32 a, u32 b, u32 c) {
    u32 a_abs = a & 0x7fffffffu;
    u32 b_abs = b & 0x7fffffffu;
    u32 c_abs = c & 0x7fffffffu;
    u32 p_sign = (a ^ b) & SIGN_BIT;
    if (a_abs > INF || b_abs > INF || c_abs > INF)
        return QNAN;
    if (a_abs == INF || b_abs == INF) {
        if (a_abs == 0 || b_abs == 0)
            return QNAN;
        if (c_abs == INF && ((c & SIGN_BIT) != p_sign))
            return QNAN;
        return p_sign | INF;
    }
    if (c_abs == INF)
        return c;
    if (a_abs == 0 || b_abs == 0) {
        if (c_abs == 0)
            return p_sign & c;
        return c;
    }
    if (c_abs == 0)
        return sf_mul(a, b);

    int a_exp = (int)(a_abs >> 23);
    int b_exp = (int)(b_abs >> 23);
    int c_exp = (int)(c_abs >> 23);
    u32 a_sig = a & FRAC_MASK;
    u32 b_sig = b & FRAC_MASK;
    u32 c_sig = c & FRAC_MASK;
    if (a_exp == 0)
        a_exp = normalize(&a_sig);
    if (b_exp == 0)
        b_exp = normalize(&b_sig);
    if (c_exp == 0)
        c_exp = normalize(&c_sig);
    a_sig |= IMPLICIT;
    b_sig |= IMPLICIT;
    c_sig |= IMPLICIT;

    /* Both operands scaled so that value = X * 2^(scale - 60). */
    int p_scale = (a_exp - 127) + (b_exp - 127);
    int c_scale = c_exp - 127;
    u64 x = ((u64)a_sig * (u64)b_sig) << 14;
    u64 y = (u64)c_sig << 37;
    u32 c_sign = c & SIGN_BIT;

    int scale;
    if (p_scale >= c_scale) {
        int d = p_scale - c_scale;
        scale = p_scale;
        if (d >= 63)
            y = 1;
        else if (d > 0)
            y = (y >> d) | ((y << (64 - d)) != 0);
    } else {
        int d = c_scale - p_scale;
        scale = c_scale;
        if (d >= 63)
            x = 1;
        else
            x = (x >> d) | ((x << (64 - d)) != 0);
    }

    u64 r;
    u32 sign;
    if (p_sign == c_sign) {
        r = x + y;
        sign = p_sign;
    } else if (x >= y) {
        r = x - y;
        sign = p_sign;
    } else {
        r = y - x;
        sign = c_sign;
    }
    if (r == 0)
        return 0;

    int p = 63 - clz64(r);
    int shift = p - 26;
    u32 sig;
    if (shift > 0)
        sig = (u32)(r >> shift) | ((r & (((u64)1 << shift) - 1)) != 0);
    else
        sig = (u32)(r << -shift);
    int exp = scale + shift - 34 + 127;
    return round_pack(sign, exp, sig);
}

/* Comparison core: returns -1, 0, 1, or 2 when unordered. */
static int sf_cmp(u32 a, u32 b) {
    if (is_nan(a) || is_nan(b))
        return 2;
    if (((a | b) & 0x7fffffffu) == 0)
        return 0;
    if (a == b)
        return 0;
    i32 sa = (i32)a;
    i32 sb = (i32)b;
    if ((sa & sb) < 0) {
        /* both negative: larger bit pattern is more negative */
        return sa > sb ? -1 : 1;
    }
    return sa < sb ? -1 : 1;
}

u32 sf_min(u32 a, u32 b) {
    int an = is_nan(a), bn = is_nan(b);
    if (an && bn)
        return QNAN;
    if (an)
        return b;
    if (bn)
        return a;
    if (((a | b) & 0x7fffffffu) == 0)
        return a | b;
    return sf_cmp(a, b) < 0 ? a : b;
}

u32 sf_max(u32 a, u32 b) {
    int an = is_nan(a), bn = is_nan(b);
    if (an && bn)
        return QNAN;
    if (an)
        return b;
    if (bn)
        return a;
    if (((a | b) & 0x7fffffffu) == 0)
        return a & b;
    return sf_cmp(a, b) > 0 ? a : b;
}

u32 sf_from_i32(i32 v) {
    if (v == 0)
        return 0;
    u32 sign = 0;
    u32 mag = (u32)v;
    if (v < 0) {
        sign = SIGN_BIT;
        mag = 0u - mag;
    }
    int lead = 31 - clz32(mag);
    int exp = lead + 127;
    u32 sig;
    int shift = lead - 26;
    if (shift > 0)
        sig = shift_right_sticky(mag, shift);
    else
        sig = mag << -shift;
    return round_pack(sign, exp, sig);
}

u32 sf_from_u32(u32 v) {
    if (v == 0)
        return 0;
    int lead = 31 - clz32(v);
    int exp = lead + 127;
    u32 sig;
    int shift = lead - 26;
    if (shift > 0)
        sig = shift_right_sticky(v, shift);
    else
        sig = v << -shift;
    return round_pack(0, exp, sig);
}

/* Truncating conversions with RISC-V saturation. */
i32 sf_to_i32(u32 a) {
    if (is_nan(a))
        return 0x7fffffff;
    int neg = (a & SIGN_BIT) != 0;
    int exp = (int)((a >> 23) & 0xff);
    if (exp < 127)
        return 0;
    int e = exp - 127;
    if (e >= 31) {
        if (neg && e == 31 && (a & FRAC_MASK) == 0)
            return (i32)0x80000000u;
        return neg ? (i32)0x80000000u : 0x7fffffff;
    }
    u32 sig = (a & FRAC_MASK) | IMPLICIT;
    u32 mag = e >= 23 ? sig << (e - 23) : sig >> (23 - e);
    return neg ? -(i32)mag : (i32)mag;
}

u32 sf_to_u32(u32 a) {
    if (is_nan(a))
        return 0xffffffffu;
    int exp = (int)((a >> 23) & 0xff);
    if (exp < 127)
        return 0;
    if (a & SIGN_BIT)
        return 0;
    int e = exp - 127;
    if (e >= 32)
        return 0xffffffffu;
    u32 sig = (a & FRAC_MASK) | IMPLICIT;
    return e >= 23 ? sig << (e - 23) : sig >> (23 - e);
}

/* ---- ABI entry points emitted by the compiler ---- */

#ifndef SOFTFLOAT_HOST_TEST

float __addsf3(float a, float b) { return from_bits(sf_add(to_bits(a), to_bits(b))); }
float __subsf3(float a, float b) { return from_bits(sf_add(to_bits(a), to_bits(b) ^ SIGN_BIT)); }
float __mulsf3(float a, float b) { return from_bits(sf_mul(to_bits(a), to_bits(b))); }
float __divsf3(float a, float b) { return from_bits(sf_div(to_bits(a), to_bits(b))); }
float __negsf2(float a) { return from_bits(to_bits(a) ^ SIGN_BIT); }

int __eqsf2(float a, float b) { int c = sf_cmp(to_bits(a), to_bits(b)); return c == 2 ? 1 : c; }
int __nesf2(float a, float b) { return __eqsf2(a, b); }
int __ltsf2(float a, float b) { int c = sf_cmp(to_bits(a), to_bits(b)); return c == 2 ? 1 : c; }
int __lesf2(float a, float b) { return __ltsf2(a, b); }
int __gtsf2(float a, float b) { int c = sf_cmp(to_bits(a), to_bits(b)); return c == 2 ? -1 : c; }
int __gesf2(float a, float b) { return __gtsf2(a, b); }
int __unordsf2(float a, float b) { return is_nan(to_bits(a)) || is_nan(to_bits(b)); }

float __floatsisf(i32 v) { return from_bits(sf_from_i32(v)); }
float __floatunsisf(u32 v) { return from_bits(sf_from_u32(v)); }
i32 __fixsfsi(float a) { return sf_to_i32(to_bits(a)); }
u32 __fixunssfsi(float a) { return sf_to_u32(to_bits(a)); }

float sqrtf(float a) { return from_bits(sf_sqrt(to_bits(a))); }
float fmaf(float a, float b, float c) { return from_bits(sf_fma(to_bits(a), to_bits(b), to_bits(c))); }
float fminf(float a, float b) { return from_bits(sf_min(to_bits(a), to_bits(b))); }
float fmaxf(float a, float b) { return from_bits(sf_max(to_bits(a), to_bits(b))); }

#endif
