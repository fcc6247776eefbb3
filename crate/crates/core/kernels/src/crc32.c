/* Bitwise CRC-32 over a pseudo-random buffer. */
#include "rt.h"

#define LEN 1024
static u8 buf[LEN];

void bench(void) {
    u32 s = 0x12345678u;
    for (int i = 0; i < LEN; i++)
        buf[i] = (u8)xorshift(&s);
    u32 crc = 0xffffffffu;
    for (int i = 0; i < LEN; i++) {
        crc ^= buf[i];
        for (int k = 0; k < 8; k++)
            crc = (crc >> 1) ^ (0xedb88320u & (0u - (crc & 1)));
    }
    put_hex(~crc);
}
