/* Integer matrix multiplication. */
#include "rt.h"

#define N 20

static i32 a[N][N], b[N][N], c[N][N];

void bench(void) {
    u32 s = 0x13579bdfu;
    for (int i = 0; i < N; i++)
        for (int j = 0; j < N; j++) {
            a[i][j] = (i32)(xorshift(&s) & 0xff) - 128;
            b[i][j] = (i32)(xorshift(&s) & 0xff) - 128;
        }
    for (int i = 0; i < N; i++)
        for (int j = 0; j < N; j++) {
            i32 acc = 0;
            for (int k = 0; k < N; k++)
                acc += a[i][k] * b[k][j];
            c[i][j] = acc;
        }
    u32 check = 0;
    for (int i = 0; i < N; i++)
        for (int j = 0; j < N; j++)
            check = (check << 1 | check >> 31) ^ (u32)c[i][j];
    put_hex(check);
}
