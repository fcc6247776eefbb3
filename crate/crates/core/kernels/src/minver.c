/* Gauss-Jordan inversion of small matrices with partial pivoting. */
#include "rt.h"

#define N 4
#define MATRICES 6

static float m[N][N], inv[N][N];

static float fabs_f(float v) { return __builtin_fabsf(v); }

void bench(void) {
    u32 s = 0xabcdef01u;
    float trace_sum = 0.0f;
    for (int t = 0; t < MATRICES; t++) {
        for (int i = 0; i < N; i++)
            for (int j = 0; j < N; j++) {
                m[i][j] = (float)(i32)(xorshift(&s) & 0xff) / 32.0f - 4.0f;
                inv[i][j] = i == j ? 1.0f : 0.0f;
            }
        for (int i = 0; i < N; i++)
            m[i][i] += 8.0f;
        for (int col = 0; col < N; col++) {
            int pivot = col;
            for (int r = col + 1; r < N; r++)
                if (fabs_f(m[r][col]) > fabs_f(m[pivot][col]))
                    pivot = r;
            if (pivot != col) {
                for (int j = 0; j < N; j++) {
                    float tmp = m[col][j];
                    m[col][j] = m[pivot][j];
                    m[pivot][j] = tmp;
                    tmp = inv[col][j];
                    inv[col][j] = inv[pivot][j];
                    inv[pivot][j] = tmp;
                }
            }
            float d = m[col][col];
            for (int j = 0; j < N; j++) {
                m[col][j] /= d;
                inv[col][j] /= d;
            }
            for (int r = 0; r < N; r++) {
                if (r == col)
                    continue;
                float f = m[r][col];
                for (int j = 0; j < N; j++) {
                    m[r][j] -= f * m[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
        for (int i = 0; i < N; i++)
            trace_sum += inv[i][i];
    }
    put_hex(float_bits(trace_sum));
}
