/* Square-and-multiply modular exponentiation with small moduli. */
#include "rt.h"

#define COUNT 48

static u32 modpow(u32 base, u32 exp, u32 mod) {
    u32 result = 1 % mod;
    base %= mod;
    while (exp) {
        if (exp & 1)
            result = (result * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return result;
}

void bench(void) {
    u32 s = 0x0badcafeu;
    u32 check = 0;
    for (int i = 0; i < COUNT; i++) {
        u32 mod = (xorshift(&s) & 0x7fff) | 0x8001;
        u32 base = xorshift(&s);
        u32 exp = xorshift(&s);
        check ^= modpow(base, exp, mod) + (u32)i;
        check = check << 5 | check >> 27;
    }
    put_hex(check);
}
