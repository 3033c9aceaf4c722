#include <stdio.h>
#include <string.h>
#include "gpbalance.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    GpbReport *report = NULL;
    CHECK(gpb_report_new(16, 3, &report) == GPB_STATUS_OK);
    uint32_t diameter = 0;
    CHECK(gpb_report_diameter(report, &diameter) == GPB_STATUS_OK && diameter == 6);
    bool balanced = false;
    CHECK(gpb_report_is_balanced(report, 5, &balanced) == GPB_STATUS_OK && balanced);
    CHECK(gpb_report_is_balanced(report, 4, &balanced) == GPB_STATUS_OK && !balanced);
    GpbWitness w;
    CHECK(gpb_report_witness(report, 1, &w) == GPB_STATUS_OK && w.present);
    CHECK(w.count.closer_to_x + w.count.closer_to_y + w.count.equidistant == 32);
    char *json = NULL;
    CHECK(gpb_report_to_json(report, &json) == GPB_STATUS_OK && strstr(json, "\"diameter\":6"));
    gpb_string_free(json);
    gpb_report_free(report);

    CHECK(gpb_report_new(7, 4, &report) == GPB_STATUS_INVALID_PARAMS);
    CHECK(gpb_last_error() != NULL);

    GpbProfile *prof = NULL;
    CHECK(gpb_profile_new(18, 3, &prof) == GPB_STATUS_OK);
    GpbVertex u0 = {GPB_VERTEX_KIND_OUTER, 0}, v0 = {GPB_VERTEX_KIND_INNER, 0};
    GpbWCount c;
    CHECK(gpb_profile_w_count(prof, u0, v0, &c) == GPB_STATUS_OK);
    CHECK(c.closer_to_x == 17 && c.closer_to_y == 19);
    gpb_profile_free(prof);

    printf("ok %s\n", gpb_version());
    return 0;
}
