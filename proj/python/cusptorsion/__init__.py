"""Determinants, anomaly terms and analytic torsion of model cusps."""

from ._cusptorsion import (
    CrossSection,
    SchemaError,
    WittViolation,
    bessel_ik,
    bessel_ik_log,
    cone_defect,
    det_norm_ratio,
    glue_assemble,
    halfline_harmonic_zeta_prime0,
    interval_logdet,
    interval_logdet_oracle,
    logdet_halfline,
    logdet_resolvent,
    model_cusp_torsion,
    neumann_dirichlet_diff,
    resolvent_trace,
    secondary_class,
    t_function,
    truncated_cusp_expansion,
    uniform_ik_log,
    verify,
    wronskian_error,
)

__all__ = [
    "CrossSection",
    "SchemaError",
    "WittViolation",
    "bessel_ik",
    "bessel_ik_log",
    "cone_defect",
    "det_norm_ratio",
    "glue_assemble",
    "halfline_harmonic_zeta_prime0",
    "interval_logdet",
    "interval_logdet_oracle",
    "logdet_halfline",
    "logdet_resolvent",
    "model_cusp_torsion",
    "neumann_dirichlet_diff",
    "resolvent_trace",
    "secondary_class",
    "t_function",
    "truncated_cusp_expansion",
    "uniform_ik_log",
    "verify",
    "wronskian_error",
]
