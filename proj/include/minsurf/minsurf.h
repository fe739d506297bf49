#ifndef MINSURF_H
#define MINSURF_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(MINSURF_BUILDING)
#define MS_API __attribute__((visibility("default")))
#else
#define MS_API
#endif

typedef enum ms_status {
  MS_OK = 0,
  MS_ERR_INPUT_DOMAIN = 1,
  MS_ERR_DEGENERATE_TRIANGLE,
  MS_ERR_NO_SOLUTION,
  MS_ERR_INCONSISTENT_CONFIGURATION,
  MS_ERR_SOLVER_FAILURE,
  MS_ERR_GRAPH_VIOLATION,
  MS_ERR_MESH_QUALITY,
  MS_ERR_NOT_APPLICABLE,
  MS_ERR_RECONSTRUCTION_INCONSISTENCY,
  MS_ERR_DEGENERATE_HEIGHT,
  MS_ERR_INVALID_DOMAIN,
  MS_ERR_EMBEDDEDNESS,
  MS_ERR_INDETERMINATE,
  MS_ERR_NO_ROOT_CERTIFICATE,
  MS_ERR_PRECISION_LIMIT,
  MS_ERR_SEWING,
  MS_ERR_ASSEMBLY,
  MS_ERR_ASSEMBLY_DEFECT,
  MS_ERR_AUDIT,
  MS_ERR_FORMAT,
  MS_ERR_NULL_ARGUMENT = 100,
  MS_ERR_INTERNAL = 101
} ms_status;

typedef struct ms_plateau ms_plateau;
typedef struct ms_conjugate ms_conjugate;
typedef struct ms_shot ms_shot;
typedef struct ms_surface ms_surface;

/* Message of the last failed call on this thread. */
MS_API const char* ms_last_error(void);
MS_API const char* ms_status_name(ms_status s);
MS_API const char* ms_version(void);
MS_API void ms_string_free(char* s);

/* Spherical trigonometry */
typedef struct ms_triangle {
  double c;
  double alpha_tilde;
  double beta_tilde;
  double area;
} ms_triangle;

MS_API ms_status ms_trig_hinge(double a_tilde, double b_tilde, double gamma, ms_triangle* out);
MS_API ms_status ms_trig_alpha_from_delta(double gamma, double ell_delta, double* alpha);
MS_API ms_status ms_trig_delta_from_alpha(double gamma, double alpha, double* ell_delta);
MS_API ms_status ms_trig_edge23(double a_tilde, double gamma, double* length);
MS_API ms_status ms_trig_genus(int copies, double gamma, int* genus);

/* Plateau solutions */
typedef struct ms_plateau_info {
  int vertices;
  int faces;
  int iterations;
  double residual;
  double area;
  double delta_theta12;
  double delta_theta34;
  double symmetry_curve_length; /* negative when the hinge is not symmetric */
} ms_plateau_info;

MS_API ms_status ms_plateau_solve(double a_tilde, double b_tilde, double gamma, double h_tilde, int resolution,
                                  double tol, ms_plateau** out);
MS_API ms_status ms_plateau_read(const char* text, ms_plateau** out);
MS_API ms_status ms_plateau_write(const ms_plateau* p, char** text);
MS_API ms_status ms_plateau_info_get(const ms_plateau* p, ms_plateau_info* out);
MS_API void ms_plateau_free(ms_plateau* p);

/* Conjugate contour, prism and free boundary piece */
typedef struct ms_prism_info {
  double alpha;
  double beta;
  double gamma;
  double gamma_measured;
  double h;
  double closure_residual;
  double closure_tolerance;
  double alpha_tilde;
  double beta_tilde;
  double alpha_gauss_bonnet; /* alpha_tilde + area(V_alpha) */
  double beta_gauss_bonnet;
} ms_prism_info;

typedef struct ms_conjugate_report {
  double area_mismatch;
  double nu_distance;
  double curvature_mismatch;
  double planarity_residual;
  int pass;
} ms_conjugate_report;

/* piece_resolution 0 skips the free boundary solve. */
MS_API ms_status ms_conjugate_build(const ms_plateau* p, int piece_resolution, ms_conjugate** out);
MS_API ms_status ms_conjugate_info_get(const ms_conjugate* c, ms_prism_info* out);
MS_API ms_status ms_conjugate_verify(const ms_plateau* p, const ms_conjugate* c, ms_conjugate_report* out);
MS_API ms_status ms_conjugate_write(const ms_conjugate* c, char** text);
MS_API ms_status ms_conjugate_piece(const ms_conjugate* c, ms_surface** out);
MS_API void ms_conjugate_free(ms_conjugate* c);

/* Shooting */
typedef struct ms_shot_info {
  double h_tilde;
  double a_tilde;
  double b_tilde;
  double gamma;
  double alpha;
  double beta;
  double h;
  double closure_residual;
  double angle_relation_residual; /* negative when not measured */
  int winding;
  int trusted;
} ms_shot_info;

MS_API ms_status ms_shoot_symmetric(double gamma, double alpha_target, double a_tilde, int resolution, ms_shot** out);
MS_API ms_status ms_shoot_general(int k, int resolution, ms_shot** out);
MS_API ms_status ms_shot_info_get(const ms_shot* s, ms_shot_info* out);
/* Either output may be null. */
MS_API ms_status ms_shot_write(const ms_shot* s, char** result_text, char** log_csv);
MS_API void ms_shot_free(ms_shot* s);

/* Surfaces and assembly */
typedef enum ms_family { MS_FAMILY_CUBE = 0, MS_FAMILY_BALLOON, MS_FAMILY_PK, MS_FAMILY_ROSENBERG } ms_family;

typedef struct ms_assembly_params {
  ms_family family;
  int k;          /* balloon, pk */
  int d;          /* rosenberg */
  int doubled;    /* rosenberg: 0 single, 1 double */
  int resolution;
  double a_tilde; /* 0 selects the family default */
} ms_assembly_params;

typedef struct ms_surface_info {
  int vertices;
  int faces;
  int copies;
  double r;
  double max_seam_gap;
  double snap_displacement;
  double wall_angle_defect;
  double gamma; /* hinge angle of the source contour, 0 when unknown */
} ms_surface_info;

typedef struct ms_genus_info {
  int chi;
  int orientable;
  int formula_applies;
  int expected_chi;
  int genus;
  int match;
} ms_genus_info;

typedef struct ms_topology {
  int chi;
  int orientable;
  int genus;
  int separates;
  int ph_applicable;
  int ph_sum;
  int ph_zero_count;
  int companions_pass;
  int companion_fibers;
  int companion_circles;
} ms_topology;

typedef enum ms_export_format { MS_EXPORT_MESH = 0, MS_EXPORT_CSV, MS_EXPORT_OBJ, MS_EXPORT_ASSEMBLY } ms_export_format;

MS_API ms_status ms_assemble(const ms_assembly_params* params, ms_surface** out);
MS_API ms_status ms_surface_read(const char* mesh_text, ms_surface** out);
MS_API ms_status ms_surface_slice(double t0, int resolution, ms_surface** out);
MS_API ms_status ms_surface_cylinder(double ax, double ay, double az, double r, int resolution, ms_surface** out);
MS_API ms_status ms_surface_helicoid(double pitch, double r, int resolution, ms_surface** out);
MS_API ms_status ms_surface_info_get(const ms_surface* s, ms_surface_info* out);
MS_API ms_status ms_surface_export(const ms_surface* s, ms_export_format format, char** text);
/* Fails with MS_ERR_ASSEMBLY_DEFECT when the genus formula disagrees. */
MS_API ms_status ms_surface_genus(const ms_surface* s, double gamma, ms_genus_info* out);
/* report_text (TOPOLOGY v1) may be null. */
MS_API ms_status ms_surface_topology(const ms_surface* s, int fiber_samples, ms_topology* out, char** report_text);
MS_API ms_status ms_surface_intersects(const ms_surface* a, const ms_surface* b, int* intersects,
                                       double* min_distance);
MS_API void ms_surface_free(ms_surface* s);

#ifdef __cplusplus
}
#endif

#endif
