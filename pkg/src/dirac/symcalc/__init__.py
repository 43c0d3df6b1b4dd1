"""Exact Cartan calculus on R^n and T^n."""
from dirac.symcalc.foliated import (
    Distribution,
    FoliatedForm,
    NonInvolutiveError,
    foliated_d,
    is_admissible,
)
from dirac.symcalc.forms import (
    GSection,
    KForm,
    VectorField,
    courant_bracket,
    d,
    interior,
    lie_bracket,
    lie_derivative,
    pairing_field,
    wedge,
)
from dirac.symcalc.grammar import ExpressionError, format_scalar, parse_scalar
from dirac.symcalc.ring import (
    AffineDomain,
    Domain,
    GaussianRational,
    NotDivisible,
    ScalarField,
    TorusDomain,
    adjugate,
    field_det,
)


def evaluate(f: ScalarField, point):
    return f.evaluate(point)


def partial_derivative(f: ScalarField, i: int) -> ScalarField:
    return f.diff(i)


__all__ = [
    "AffineDomain",
    "Distribution",
    "Domain",
    "ExpressionError",
    "FoliatedForm",
    "GSection",
    "GaussianRational",
    "KForm",
    "NonInvolutiveError",
    "NotDivisible",
    "ScalarField",
    "TorusDomain",
    "VectorField",
    "adjugate",
    "courant_bracket",
    "d",
    "evaluate",
    "field_det",
    "foliated_d",
    "format_scalar",
    "interior",
    "is_admissible",
    "lie_bracket",
    "lie_derivative",
    "pairing_field",
    "parse_scalar",
    "partial_derivative",
    "wedge",
]
