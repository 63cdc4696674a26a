/* C interface to the exact QRT-order analysis library.
 *
 * All analysis entry points take a UTF-8 JSON request string and, on
 * success, store an opaque result handle in *out. The result owns two
 * serializations of the same report: a JSON document with exact number
 * strings and a deterministic human-readable text rendering. Handles must
 * be released with qrt_result_free.
 *
 * Request envelope (one payload key per request):
 *   {"curve":   {"coefficients": [["a00","a01","a02"],
 *                                 ["a10","a11","a12"],
 *                                 ["a20","a21","a22"]]}}
 *   {"walk":    {"p": {"-1,-1": "3/10", "0,0": "1/5", ...},
 *                "strict": true}}
 *   {"steps":   {"name": "S22"},  "t": ["1/5", "1/3", "2/7"]}
 *   {"steps":   {"steps": [[0,1],[-1,0],[1,-1]]}}
 *   {"link":    {"sides": ["3/2", "1", "sqrt(13/4)", "1"]}}
 *   {"convert": {"direction": "to-link"|"to-walk", "lambda": "-10",
 *                "walk": {...} | "link": {...}}}
 * Optional envelope keys: "max_order" (int, default 24), "precision"
 * (decimal digits for float diagnostics, default 50), "oracle" (bool,
 * default true: run the independent group-law cross-check).
 *
 * Number strings use exact arithmetic in a tower of real quadratic
 * extensions: rationals ("-3/10"), square roots ("sqrt(5)"), and sums of
 * rational multiples ("1/4-1/2*sqrt(sqrt(5)-2)").
 *
 * Error model: functions return QRT_OK, QRT_ERR_INPUT (malformed JSON,
 * missing fields, invalid mathematical input) or QRT_ERR_INTERNAL (a
 * cross-check between two independent computation routes failed). On
 * failure *out is set to NULL and qrt_last_error() returns a thread-local
 * description.
 */

#ifndef QRT_C_H
#define QRT_C_H

#ifdef __cplusplus
extern "C" {
#endif

#define QRT_OK 0
#define QRT_ERR_INPUT 2
#define QRT_ERR_INTERNAL 3

typedef struct qrt_result qrt_result;

/* Analyze any request envelope (see above). */
int qrt_analyze_json(const char* request_json, qrt_result** out);

/* Convenience wrappers: wrap a bare payload into the envelope. */
int qrt_analyze_curve_json(const char* curve_json, qrt_result** out);
int qrt_analyze_walk_json(const char* walk_json, qrt_result** out);
int qrt_analyze_linkage_json(const char* link_json, qrt_result** out);

/* Render the Darboux orbit of a four-bar linkage as an SVG document.
 * Request: {"sides": [...], "steps": N, "seed": u}; "steps" defaults to 8,
 * "seed" (start-configuration seed) to 20240803. qrt_result_text() of the
 * result is the SVG document itself; qrt_result_json() wraps it as
 * {"kind": "render", "steps": N, "seed": u, "svg": "..."}. */
int qrt_render_svg_json(const char* request_json, qrt_result** out);

/* Serialized report. Pointers remain valid until qrt_result_free. */
const char* qrt_result_json(const qrt_result* r);
const char* qrt_result_text(const qrt_result* r);

void qrt_result_free(qrt_result* r);

/* Thread-local message describing the last failure in this thread; empty
 * string when no failure has occurred. */
const char* qrt_last_error(void);

/* Interface version of this header. */
int qrt_api_version(void);

#ifdef __cplusplus
}
#endif

#endif /* QRT_C_H */
