/* Small gravitational n-body integration in single precision. */
#include "rt.h"

#define BODIES 5
#define STEPS 12


typedef struct {
    float x, y, z, vx, vy, vz, mass;
} body;

static body bodies[BODIES];

void bench(void) {
    u32 s = 0x1badb002u;
    for (int i = 0; i < BODIES; i++) {
        body *b = &bodies[i];
        b->x = (float)(i32)(xorshift(&s) & 0x3ff) / 64.0f - 8.0f;
        b->y = (float)(i32)(xorshift(&s) & 0x3ff) / 64.0f - 8.0f;
        b->z = (float)(i32)(xorshift(&s) & 0x3ff) / 64.0f - 8.0f;
        b->vx = (float)(i32)(xorshift(&s) & 0xff) / 256.0f - 0.5f;
        b->vy = (float)(i32)(xorshift(&s) & 0xff) / 256.0f - 0.5f;
        b->vz = (float)(i32)(xorshift(&s) & 0xff) / 256.0f - 0.5f;
        b->mass = (float)(i32)((xorshift(&s) & 0xf) + 1);
    }
    const float dt = 0.01f;
    for (int step = 0; step < STEPS; step++) {
        for (int i = 0; i < BODIES; i++) {
            for (int j = i + 1; j < BODIES; j++) {
                body *a = &bodies[i];
                body *b = &bodies[j];
                float dx = a->x - b->x;
                float dy = a->y - b->y;
                float dz = a->z - b->z;
                float d2 = dx * dx + dy * dy + dz * dz + 0.01f;
                float dist = __builtin_sqrtf(d2);
                float mag = dt / (d2 * dist);
                a->vx -= dx * b->mass * mag;
                a->vy -= dy * b->mass * mag;
                a->vz -= dz * b->mass * mag;
                b->vx += dx * a->mass * mag;
                b->vy += dy * a->mass * mag;
                b->vz += dz * a->mass * mag;
            }
        }
        for (int i = 0; i < BODIES; i++) {
            body *b = &bodies[i];
            b->x += dt * b->vx;
            b->y += dt * b->vy;
            b->z += dt * b->vz;
        }
    }
    float energy = 0.0f;
    for (int i = 0; i < BODIES; i++) {
        body *b = &bodies[i];
        energy += 0.5f * b->mass * (b->vx * b->vx + b->vy * b->vy + b->vz * b->vz);
    }
    put_hex(float_bits(energy));
    put_hex(float_bits(bodies[0].x));
}
