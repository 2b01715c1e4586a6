/* Exercises the shared library through the C header only. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "veritas/veritas.h"

static int failures = 0;

#define EXPECT(cond)                                                      \
    do {                                                                  \
        if (!(cond)) {                                                    \
            fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                   \
        }                                                                 \
    } while (0)

static int contains(const char* s, const char* needle) { return s && strstr(s, needle) != NULL; }

static void conversions(void) {
    double v = 0;
    EXPECT(veritas_odds_from_prob(0.75, &v) == VERITAS_OK && fabs(v - 3.0) < 1e-15);
    EXPECT(veritas_posterior_prob(1.0, 13.0, &v) == VERITAS_OK && fabs(v - 13.0 / 14.0) < 1e-15);
    EXPECT(veritas_odds_from_prob(1.5, &v) == VERITAS_E_DOMAIN);
    EXPECT(contains(veritas_last_error_json(), "\"domain\""));
    EXPECT(veritas_posterior_prob(0.0, 0.0, &v) == VERITAS_E_UNDEFINED);
    EXPECT(veritas_odds_from_prob(0.5, NULL) == VERITAS_E_ARGUMENT);
    EXPECT(strcmp(veritas_status_name(VERITAS_E_IMPOSSIBLE), "impossible_evidence") == 0);
    const double deltas[] = {1.0, -0.5};
    EXPECT(veritas_accumulate_jl(0.25, deltas, 2, &v) == VERITAS_OK && fabs(v - 0.75) < 1e-15);

    char* s = NULL;
    EXPECT(veritas_format_significant(13.0 / 14.0 * 100.0, 2, &s) == VERITAS_OK && strcmp(s, "93") == 0);
    veritas_string_free(s);
    EXPECT(veritas_update_report(1.0, 13.0, &s) == VERITAS_OK && contains(s, "posterior"));
    veritas_string_free(s);
    EXPECT(veritas_combine_uncertain("{\"terms\":[{\"lo\":0,\"hi\":1}],\"repeat\":10}", &s) == VERITAS_OK);
    EXPECT(contains(s, "\"mean\":5.0"));
    veritas_string_free(s);
    EXPECT(veritas_combine_uncertain("{\"terms\":", &s) == VERITAS_E_ARGUMENT);  /* malformed JSON */
}

static void testimony(void) {
    char* s = NULL;
    EXPECT(veritas_testimony_bf("{\"p_truth\":\"5/6\",\"p_e_given_h\":\"1\",\"p_e_given_hbar\":\"1/13\"}", &s) == VERITAS_OK);
    EXPECT(contains(s, "\"exact\":\"65/17\""));
    veritas_string_free(s);
    double w = 0;
    EXPECT(veritas_testimony_weight(6, -INFINITY, 0, &w) == VERITAS_OK && fabs(w - 6.0) < 1e-12);
    EXPECT(veritas_testimony_table(3, &s) == VERITAS_OK);
    veritas_string_free(s);
}

static void networks(void) {
    veritas_network* net = NULL;
    EXPECT(veritas_network_builtin("box-testimony-5", &net) == VERITAS_OK && net != NULL);
    char* s = NULL;
    EXPECT(veritas_infer(net, "[\"E1T=W\",\"E2T=W\",\"E3T=B\"]", "exact", NULL, &s) == VERITAS_OK);
    EXPECT(contains(s, "54925/72554"));
    veritas_string_free(s);
    double p = 0;
    EXPECT(veritas_query(net, "Box=B1", "{\"findings\":{\"E1T\":\"W\"}}", &p) == VERITAS_OK);
    EXPECT(fabs(p - 65.0 / 82.0) < 1e-12);
    EXPECT(veritas_query(net, "Box=B1", "[\"E1=B\",\"Box=B1\"]", &p) == VERITAS_E_IMPOSSIBLE);
    EXPECT(veritas_infer(net, "[\"E1=B\",\"Box=B1\"]", "ve", NULL, &s) == VERITAS_E_IMPOSSIBLE);
    EXPECT(contains(veritas_last_error_json(), "findings"));
    EXPECT(veritas_infer(net, "[\"Nope=W\"]", "ve", NULL, &s) == VERITAS_E_VALIDATION);
    EXPECT(veritas_infer(net, "[]", "magic", NULL, &s) != VERITAS_OK);
    EXPECT(veritas_network_describe(net, &s) == VERITAS_OK && contains(s, "\"nodes\":11"));
    veritas_string_free(s);
    veritas_network_free(net);

    EXPECT(veritas_network_builtin("nope", &net) == VERITAS_E_NOT_FOUND);
    EXPECT(veritas_network_from_json("{\"nodes\":[{\"id\":\"A\",\"states\":[\"a\",\"b\"],\"parents\":[],\"cpt\":[[0.5,0.4]]}]}",
                                     &net) == VERITAS_E_VALIDATION);
    EXPECT(contains(veritas_last_error_json(), "row_sum"));
    EXPECT(veritas_network_load("/nonexistent.json", &net) == VERITAS_E_IO);
    EXPECT(veritas_network_box(3, "5/6", 1, 13, &net) == VERITAS_OK);
    veritas_network_free(net);
    veritas_network_free(NULL);
}

static void simulations(void) {
    veritas_gaussian_pair g = veritas_gaussian_pair_default();
    EXPECT(g.sigma2 == 2.0);
    char *a = NULL, *b = NULL, *csv = NULL;
    EXPECT(veritas_simulate_walks(g, "H1", 10, 4, 9, 1, 1, &a, &csv) == VERITAS_OK);
    EXPECT(veritas_simulate_walks(g, "H1", 10, 4, 9, 3, 1, &b, NULL) == VERITAS_OK);
    EXPECT(a && b && strcmp(a, b) == 0);
    EXPECT(strncmp(csv, "traj_id,step,jl\n", 16) == 0);
    veritas_string_free(a);
    veritas_string_free(b);
    veritas_string_free(csv);
    EXPECT(veritas_simulate_walks(g, "H9", 10, 4, 9, 1, 1, &a, NULL) == VERITAS_E_DOMAIN);
    EXPECT(veritas_propagate(20000, 1, 0.02, 1, 0, &a, NULL) == VERITAS_OK && contains(a, "median"));
    veritas_string_free(a);
    EXPECT(veritas_scenario("aids", &a) == VERITAS_OK && contains(a, "499.5"));
    veritas_string_free(a);
}

static void service(void) {
    veritas_service* svc = NULL;
    EXPECT(veritas_service_create(NULL, &svc) == VERITAS_OK);
    int status = 0;
    char* r = NULL;
    EXPECT(veritas_service_handle(svc, "POST", "/sessions", "{\"builtin\":\"box-testimony-5\"}", &status, &r) == VERITAS_OK);
    EXPECT(status == 201 && contains(r, "session_id"));
    veritas_string_free(r);
    EXPECT(veritas_service_handle(svc, "GET", "/nowhere", "", &status, &r) == VERITAS_OK && status == 404);
    veritas_string_free(r);
    int port = 0;
    EXPECT(veritas_service_start(svc, "127.0.0.1", 0, &port) == VERITAS_OK && port > 0);
    EXPECT(veritas_service_stop(svc) == VERITAS_OK);
    veritas_service_free(svc);
}

int main(void) {
    EXPECT(veritas_version() != NULL);
    conversions();
    testimony();
    networks();
    simulations();
    service();
    if (failures) {
        fprintf(stderr, "%d C API check(s) failed\n", failures);
        return 1;
    }
    printf("C API checks passed\n");
    return 0;
}
