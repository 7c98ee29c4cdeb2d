#include <stdio.h>
#include <string.h>

#include "cremona.h"

int main(void) {
    int64_t xs[10] = {2, -1, -1, -1, 0, 0, 0, 0, 0, 0};
    CremonaClass *v = NULL, *r = NULL;
    bool in_cone = false;
    char *json = NULL, *text = NULL;
    if (cremona_class_new(xs, 10, &v) != CREMONA_STATUS_OK) return 1;
    if (cremona_reduce(v, &r, &in_cone, &json) != CREMONA_STATUS_OK) return 2;
    if (!in_cone) return 3;
    if (cremona_class_to_string(r, &text) != CREMONA_STATUS_OK) return 4;
    printf("%s %s\n", text, json);
    if (strcmp(text, "(1,0,0,0,0,0,0,0,0,0)") != 0) return 5;

    int64_t p = 0;
    if (cremona_pairing(v, v, &p) != CREMONA_STATUS_OK || p != 1) return 6;

    CremonaClass *bad = NULL;
    if (cremona_class_parse("0,-1,0,0,0,0,0,0,0,0", &bad) != CREMONA_STATUS_OK) return 7;
    CremonaClass *out = NULL;
    if (cremona_reduce(bad, &out, &in_cone, NULL) != CREMONA_STATUS_K_POSITIVE) return 8;
    printf("error: %s\n", cremona_last_error());

    size_t count = 0;
    if (cremona_curve_count(8, 6, &count) != CREMONA_STATUS_OK || count != 240) return 9;

    cremona_string_free(json);
    cremona_string_free(text);
    cremona_class_free(v);
    cremona_class_free(r);
    cremona_class_free(bad);
    return 0;
}
