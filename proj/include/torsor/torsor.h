#ifndef TORSOR_H
#define TORSOR_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(TORSOR_BUILDING_LIBRARY)
#define TORSOR_API __attribute__((visibility("default")))
#else
#define TORSOR_API
#endif

typedef enum torsor_status {
  TORSOR_OK = 0,
  TORSOR_INVALID_ARGUMENT = 1,
  TORSOR_PARSE_ERROR = 2,
  TORSOR_GUARD_EXCEEDED = 3,
  TORSOR_VERIFICATION_FAILED = 4,
  TORSOR_MISMATCH = 5,
  TORSOR_INTERNAL_ERROR = 6
} torsor_status;

typedef struct torsor_group torsor_group;

/* Message for the last failing call on this thread; never NULL. */
TORSOR_API const char* torsor_last_error(void);
TORSOR_API const char* torsor_status_name(torsor_status s);

/* Strings returned through char** are owned by the caller. */
TORSOR_API void torsor_string_free(char* s);

/* Guards. TORSOR_MAX_ORDER in the environment raises both when applied. */
TORSOR_API torsor_status torsor_apply_guard_environment(int* applied);
TORSOR_API torsor_status torsor_set_max_order(int order);

/* spec: C<n> | D<n> | Q<n> | E<p>^<k> | S<n> | <spec>x<spec> | file:<path> */
TORSOR_API torsor_status torsor_group_parse(const char* spec, torsor_group** out);
TORSOR_API void torsor_group_free(torsor_group* g);
TORSOR_API torsor_status torsor_group_order(const torsor_group* g, int* order);
TORSOR_API torsor_status torsor_group_name(const torsor_group* g, char** name);

/* Verdict JSON; retract_rational may be NULL. */
TORSOR_API torsor_status torsor_classify(const torsor_group* g, long d, int* retract_rational, char** json);
TORSOR_API torsor_status torsor_certify(const torsor_group* g, long d, int* retract_rational, char** json);

/* module: "T", "Td", "Md" or "ZdZ"; subgroup -1 means G itself. */
TORSOR_API torsor_status torsor_cohomology(const torsor_group* g, const char* module, long d, int degree,
                                           int subgroup, char** json);
TORSOR_API torsor_status torsor_sha2(const torsor_group* g, long d, int* nonzero, char** json);
TORSOR_API torsor_status torsor_resolution(const torsor_group* g, long d, int verify, char** json);
TORSOR_API torsor_status torsor_period(const torsor_group* g, int verify, long* period, char** json);

TORSOR_API torsor_status torsor_sweep(int max_order, int timings, int* consistent, char** json);
TORSOR_API torsor_status torsor_sigma_table(int n_max, int* all_match, char** json);

#ifdef __cplusplus
}
#endif

#endif
