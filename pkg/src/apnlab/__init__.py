"""APN trinomials and Budaghyan-Carlet hexanomials over GF(2^2m).

Construction of the two families, exhaustive verification of their
differential and spectral properties at desk scale, and characterization,
enumeration and counting of the admissible hexanomial coefficients by
three independent routes.
"""

from .gf2n import (
    Elem,
    FieldCtx,
    build_any_field,
    build_field,
    elem_from_hex,
    elem_to_hex,
    field_from_modulus,
)
from .decomposition import (
    ZSet,
    c0_set,
    d1_set,
    decompose_polar,
    decompose_trace,
    gcd_pow2,
    identity_suite,
    phi,
    phi_inv,
    pq1_set,
    psi,
    psi_inv,
    set_to_json,
    t1_set,
    two_adic_val,
    z_set,
)
from .vbf import (
    VBF,
    HyperplaneSpectrum,
    NotCrookedError,
    WalshSpectrum,
    bent_components,
    derivative,
    differential_spectrum,
    differential_uniformity,
    gold,
    hyperplane_beta,
    hyperplane_spectrum,
    is_apn,
    kim,
    monomial_sum,
    subspace_property,
    vbf_from_json,
    vbf_to_json,
    walsh_at,
    walsh_spectrum,
)
from .trinomial import (
    TrinomialParams,
    beta_closed_form,
    build_f,
    is_apn_predicted,
    predicted_bent_count,
    predicted_walsh_values,
)
from .hexanomial import (
    HexParams,
    HexReport,
    bruteforce_good_C,
    build_g,
    characterize_good_C,
    count_formula,
    enumerate_good_C,
    gamma_image,
    gamma_image_size,
    has_root_in_pq1,
    hex_report,
    p_eval,
    uniformity_matches,
)
from . import kernels

__version__ = "0.1.0"
