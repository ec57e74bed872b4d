"""Filtered knot Floer complexes, torsion order, Upsilon, Garside normal
form, and bridge-index certificates.

Thin wrapper over the C++ extension: exact rationals cross the boundary as
strings and are converted to fractions.Fraction here.
"""

import os
from fractions import Fraction

from _kfbridge import (  # noqa: F401
    Complex,
    ComplexValidationError,
    InputError,
    InternalInconsistency,
    bundled_labels,
    check_conditions,
    closure_is_knot,
    default_window,
    garside_normal_form,
    hfk_hat,
    is_twist_positive,
    lemma_cycle_witness,
    load_cfk,
    long_vertical_differential,
    parse_braid,
    parse_cfk,
    positive_genus_tau,
    reduce,
    run_acceptance,
    staircase_from_alexander,
    staircase_torus,
    tau,
    tensor_product,
    torsion_order,
    torus_alexander,
    twisted_torus_braid,
    validate,
    verify_proposition,
    write_cfk,
)
import _kfbridge as _core


def data_dir() -> str:
    """Directory with the bundled .cfk complexes."""
    env = os.environ.get("KFB_DATA_DIR")
    if env:
        return env
    here = os.path.join(os.path.dirname(__file__), "data")
    return here if os.path.isdir(here) else ""


def load_bundled(label: str, directory: str = ""):
    return _core.load_bundled(label, directory or data_dir())


def bridge_certificate(word: str, directory: str = ""):
    return _core.bridge_certificate(word, directory or data_dir())


def upsilon_at(complex, t, window=None) -> Fraction:
    return Fraction(_core.upsilon_at(complex, str(Fraction(t)), window))


def upsilon_pl(complex, window=None):
    return [(Fraction(t), Fraction(v)) for t, v in _core.upsilon_pl(complex, window)]
