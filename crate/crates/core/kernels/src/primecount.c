/* Prime counting by trial division. */
#include "rt.h"

#define LIMIT 2500

void bench(void) {
    u32 count = 0;
    u32 sum = 0;
    for (u32 n = 2; n < LIMIT; n++) {
        int prime = 1;
        for (u32 d = 2; d * d <= n; d++) {
            if (n % d == 0) {
                prime = 0;
                break;
            }
        }
        if (prime) {
            count++;
            sum += n;
        }
    }
    put_hex(count);
    put_hex(sum);
}
