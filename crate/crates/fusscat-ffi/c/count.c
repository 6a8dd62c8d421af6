#include <stdio.h>
#include "fusscat.h"

int main(int argc, char **argv) {
    const char *type = argc > 1 ? argv[1] : "A3";
    unsigned m = argc > 2 ? (unsigned)atoi(argv[2]) : 2;
    FcSystem *sys = NULL;
    if (fc_system_new(type, &sys) != FC_STATUS_OK) {
        fprintf(stderr, "%s\n", fc_last_error());
        return 2;
    }
    uint64_t n = 0, cat = 0;
    if (fc_count(sys, FC_OBJECT_SORT, NULL, m, &n) != FC_STATUS_OK || fc_fuss_catalan(sys, m, &cat) != FC_STATUS_OK) {
        fprintf(stderr, "%s\n", fc_last_error());
        fc_system_free(sys);
        return 2;
    }
    printf("%s m=%u: %llu sortable elements, formula %llu\n", type, m, (unsigned long long)n, (unsigned long long)cat);
    fc_system_free(sys);
    return n == cat ? 0 : 1;
}
