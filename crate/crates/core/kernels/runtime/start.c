#include "rt.h"

/* Runs bench() the number of times requested through MMIO (0 = forever),
 * signalling each completed iteration. */
void run_iterations(void) {
    u32 requested = *MMIO_ITER_REQ;
    u32 done = 0;
    do {
        bench();
        done++;
        *MMIO_ITER_MARK = done;
    } while (requested == 0 || done < requested);
}
