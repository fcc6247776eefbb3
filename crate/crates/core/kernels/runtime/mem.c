#include "rt.h"

void *memset(void *dst, int c, unsigned int n) {
    u8 *p = (u8 *)dst;
    while (n--)
        *p++ = (u8)c;
    return dst;
}

void *memcpy(void *dst, const void *src, unsigned int n) {
    u8 *d = (u8 *)dst;
    const u8 *s = (const u8 *)src;
    while (n--)
        *d++ = *s++;
    return dst;
}
