"""Complex length spectra, holonomy sums and trace-formula checks for
Kleinian groups in PSL(2, C)."""
from .algebra import (
    CanonicalElement,
    ComplexLength,
    ElementClass,
    canonicalize,
    classify,
    complex_length,
    diagonal_element,
    power_class,
    reduce_angle,
    weight,
    weyl_discriminant_root,
)
from .cutoffs import (
    CutoffDescriptor,
    cutoff_derivative,
    cutoff_eval,
    cutoff_fourier,
    f_norms,
    periodic_coeff,
    psi_eval,
    psi_hat,
)
from .diagnostics import (
    DiagnosticReport,
    charsum_cancellation_report,
    equidist_discrepancy,
    pgt_report,
    primitivity_gap_report,
)
from .enumeration import GroupPresentation, ball_enumerate, build_spectrum, enumerate_spectrum
from .errors import *  # noqa: F401,F403
from .io import export_spectrum, import_spectrum, read_presentation, read_spectral_data
from .measures import (
    ManifoldConstants,
    SpectralDatum,
    ei_main_term,
    plancherel_window,
    varpi_density,
    varpi_star_density,
)
from .spectrum import GeodesicClass, SpectrumTable, cyclic_table, golden_angle_table
from .sums import (
    Arc,
    SharpInterval,
    SumSpec,
    S_sum,
    T_cos,
    T_sin,
    T_sum,
    ambient_count,
    boundary_holonomy_sum,
    boundary_length_sum,
    char_sum,
    weighted_sum,
)
from .trace_formula import (
    TraceFormulaReport,
    abel_transform,
    even_tf_sides,
    odd_tf_sides,
    weyl_window_report,
)

__version__ = "0.1.0"
