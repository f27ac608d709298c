#include <stdio.h>
#include <string.h>

#include "tqf.h"

#define CHECK(cond)                                            \
    do {                                                       \
        if (!(cond)) {                                         \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                          \
        }                                                      \
    } while (0)

int main(void) {
    const int64_t d[3] = {1, 1, 1};
    TqfForm *f = NULL;
    CHECK(tqf_form_diagonal(d, 3, &f) == TQF_STATUS_OK);

    uint64_t r = 0;
    CHECK(tqf_rep_count(f, 9, &r) == TQF_STATUS_OK && r == 30);

    uint64_t theta[4];
    CHECK(tqf_theta_series(f, 3, theta, 4) == TQF_STATUS_OK);
    CHECK(theta[0] == 1 && theta[1] == 6 && theta[2] == 12 && theta[3] == 8);

    const int64_t bad[4] = {1, 2, 2, 1};
    TqfForm *g = NULL;
    CHECK(tqf_form_new(bad, 2, &g) == TQF_STATUS_NOT_POSITIVE_DEFINITE && g == NULL);
    char msg[128];
    CHECK(tqf_last_error_message(msg, sizeof msg) > 0 && strstr(msg, "positive definite") != NULL);

    tqf_set_budget(10);
    CHECK(tqf_rep_count(f, 100000, &r) == TQF_STATUS_BUDGET_EXCEEDED);

    CHECK(strlen(tqf_version()) > 0);
    tqf_form_free(f);
    puts("ok");
    return 0;
}
