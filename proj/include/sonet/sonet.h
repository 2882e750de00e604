#ifndef SONET_SONET_H
#define SONET_SONET_H

/* C interface to the sonet library. Nets and services are opaque handles.
 * Every call returning int uses the sonet_status codes; on failure the
 * calling thread's sonet_last_error() describes the problem as JSON
 * {"code", "message", "nodes", ...}. Strings handed out through char**
 * belong to the caller and are released with sonet_free_string. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SONET_API __declspec(dllexport)
#else
#define SONET_API __attribute__((visibility("default")))
#endif

typedef struct sonet_net sonet_net;
typedef struct sonet_service sonet_service;

typedef enum sonet_status {
  SONET_OK = 0,
  SONET_PROPERTY_FAILS = 1, /* e.g. not well-formed, step not enabled */
  SONET_USAGE = 2,          /* bad arguments, parse or schema errors */
  SONET_BOUND_EXCEEDED = 3, /* enumeration bound hit; result is partial or unknown */
  SONET_INTERNAL = 4,
  SONET_INVALID_NET = 5 /* document is well-formed JSON but the net fails validation */
} sonet_status;

SONET_API const char* sonet_version(void);

/* Thread-local; valid until the next failing call on this thread. "{}" if none. */
SONET_API const char* sonet_last_error(void);

SONET_API void sonet_free_string(char* s);

/* JSON array of built-in fixture names. */
SONET_API int sonet_fixture_names(char** out_json);

/* strict != 0 turns unknown keys into errors instead of warnings. */
SONET_API int sonet_net_parse(const char* text, int strict, sonet_net** out);
SONET_API int sonet_net_fixture(const char* name, sonet_net** out);
SONET_API void sonet_net_free(sonet_net* net);

/* "acyclic", "csa" or "bsa"; NULL for a NULL handle. */
SONET_API const char* sonet_net_kind(const sonet_net* net);
/* JSON array of parse warnings. */
SONET_API int sonet_net_warnings(const sonet_net* net, char** out_json);

/* Runs one command against the net. args_json is a JSON object (NULL for
 * none). On SONET_OK, SONET_PROPERTY_FAILS and SONET_BOUND_EXCEEDED the
 * output {"status", "result", "summary"} may be set; it is NULL when the
 * command raised an error, which sonet_last_error then describes. */
SONET_API int sonet_net_command(const sonet_net* net, const char* command, const char* args_json, char** out_json);

/* JSON array of command names understood by sonet_net_command. */
SONET_API int sonet_command_names(char** out_json);

/* options_json: {"step_cap": 200, "bound": 100000, "depth": 64, "snapshot_dir": "..."}; NULL for defaults. */
SONET_API sonet_service* sonet_service_new(const char* options_json);
SONET_API void sonet_service_free(sonet_service* svc);
/* Handles one /api/v1/ request and returns its HTTP status; the response
 * body (JSON) is stored in *out_json. Safe to call from several threads. */
SONET_API int sonet_service_handle(sonet_service* svc, const char* method, const char* target, const char* body,
                                   char** out_json);

#ifdef __cplusplus
}
#endif

#endif
