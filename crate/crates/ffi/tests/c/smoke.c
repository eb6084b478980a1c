#include <stdio.h>
#include <string.h>

#include "scsort.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "check failed: %s (line %d)\n",      \
                    #cond, __LINE__);                            \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    ScPermutation *tau = NULL, *out = NULL;
    CHECK(sc_perm_parse("52413", &tau) == SC_STATUS_OK);
    CHECK(sc_map(213, tau, &out) == SC_STATUS_OK);
    char *text = sc_perm_to_string(out);
    CHECK(strcmp(text, "21345") == 0);
    sc_string_free(text);

    uintptr_t k = 0;
    CHECK(sc_cro(213, tau, &k) == SC_STATUS_OK);
    CHECK(k == 2);

    uint64_t f = 0;
    ScPermutation *pi = NULL;
    CHECK(sc_perm_parse("13524", &pi) == SC_STATUS_OK);
    CHECK(sc_fertility(213, pi, true, false, &f) == SC_STATUS_OK);
    CHECK(f == 3);

    CHECK(sc_map(214, tau, &out) == SC_STATUS_INVALID_INPUT);
    CHECK(sc_last_error_message() != NULL);

    sc_perm_free(pi);
    sc_perm_free(out);
    sc_perm_free(tau);
    printf("ok\n");
    return 0;
}
