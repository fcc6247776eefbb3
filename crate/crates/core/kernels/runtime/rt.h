/* Bare-metal runtime interface shared by the bundled kernels. */
#ifndef RT_H
#define RT_H

typedef unsigned int u32;
typedef int i32;
typedef unsigned long long u64;
typedef long long i64;
typedef unsigned char u8;

#define MMIO_HALT ((volatile u32 *)0x40000000u)
#define MMIO_CONSOLE ((volatile u8 *)0x40000004u)
#define MMIO_ITER_MARK ((volatile u32 *)0x40000008u)
#define MMIO_ITER_REQ ((volatile u32 *)0x4000000cu)
#define HALT_MAGIC 0x5555u

void bench(void);

static inline void put_char(char c) { *MMIO_CONSOLE = (u8)c; }

static inline void put_str(const char *s) {
    while (*s)
        put_char(*s++);
}

static inline void put_hex(u32 v) {
    for (int i = 28; i >= 0; i -= 4) {
        u32 d = (v >> i) & 0xf;
        put_char((char)(d < 10 ? '0' + d : 'a' + d - 10));
    }
    put_char('\n');
}

static inline u32 float_bits(float f) {
    union {
        float f;
        u32 u;
    } b;
    b.f = f;
    return b.u;
}

/* xorshift32; multiplication-free so data generation costs the same on
 * every target. */
static inline u32 xorshift(u32 *state) {
    u32 x = *state;
    x ^= x << 13;
    x ^= x >> 17;
    x ^= x << 5;
    *state = x;
    return x;
}

#endif
