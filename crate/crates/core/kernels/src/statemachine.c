/* Token scanner state machine over a pseudo-random byte stream. */
#include "rt.h"

#define LEN 4096

enum { IDLE, IDENT, NUMBER, STRING, ESCAPE, COMMENT };

void bench(void) {
    u32 s = 0xc0ffee11u;
    u32 state = IDLE;
    u32 counts[6] = {0, 0, 0, 0, 0, 0};
    u32 tokens = 0;
    for (int i = 0; i < LEN; i++) {
        u32 c = xorshift(&s) & 0x3f;
        switch (state) {
        case IDLE:
            if (c < 20)
                state = IDENT;
            else if (c < 30)
                state = NUMBER;
            else if (c == 40)
                state = STRING;
            else if (c == 41)
                state = COMMENT;
            break;
        case IDENT:
            if (c >= 30 && c < 50) {
                state = IDLE;
                tokens++;
            }
            break;
        case NUMBER:
            if (c >= 20) {
                state = IDLE;
                tokens++;
            }
            break;
        case STRING:
            if (c == 42)
                state = ESCAPE;
            else if (c == 40) {
                state = IDLE;
                tokens++;
            }
            break;
        case ESCAPE:
            state = STRING;
            break;
        default:
            if (c == 63)
                state = IDLE;
            break;
        }
        counts[state]++;
    }
    put_hex(tokens);
    for (int i = 0; i < 6; i++)
        put_hex(counts[i]);
}
