"""X-ray transforms, sampling, and Fourier reconstruction on the flat torus."""

from ._torusct import (
    AliasingError,
    DegenerateReferenceError,
    MissingAngleError,
    MissingDirectionError,
    Samples,
    Table,
    acquire_analytic,
    acquire_pixel,
    add_noise,
    cutoff_error,
    direction_count,
    direction_set,
    flag_value,
    height,
    load_samples,
    load_table,
    perp_direction,
    phi_bruteforce,
    raster,
    recon_error,
    reconstruct,
    reduce,
    rotate_grid,
    rotation_average,
    save_samples,
    shepp_logan,
    strategy_bound,
    verify_strategy,
    xray_pixel,
    xray_quadrature,
)

__all__ = [
    "AliasingError",
    "DegenerateReferenceError",
    "MissingAngleError",
    "MissingDirectionError",
    "Samples",
    "Table",
    "acquire_analytic",
    "acquire_pixel",
    "add_noise",
    "cutoff_error",
    "direction_count",
    "direction_set",
    "flag_value",
    "height",
    "load_samples",
    "load_table",
    "perp_direction",
    "phi_bruteforce",
    "raster",
    "recon_error",
    "reconstruct",
    "reduce",
    "rotate_grid",
    "rotation_average",
    "save_samples",
    "shepp_logan",
    "strategy_bound",
    "verify_strategy",
    "xray_pixel",
    "xray_quadrature",
]
