"""Exact Fourier transforms of p^n times angular monomials."""

from fractions import Fraction

from ._angularft import (
    ArgumentError,
    DomainError,
    ExactScalar,
    ParseError,
    QuadratureError,
    SpaceExpr,
    SpaceTerm,
    chi,
    decompose,
    delta_rep,
    delta_rep_peak,
    identity,
    identity_kinds,
    inverse,
    regulated_radial,
    render,
    run_cli,
    sift,
    sph_bessel,
    transform,
    verify,
    yukawa_check,
)


def as_fraction(c: ExactScalar) -> Fraction:
    """Rational part of an exact scalar as a Fraction."""
    return Fraction(c.rational)


__all__ = [
    "ArgumentError",
    "DomainError",
    "ExactScalar",
    "ParseError",
    "QuadratureError",
    "SpaceExpr",
    "SpaceTerm",
    "as_fraction",
    "chi",
    "decompose",
    "delta_rep",
    "delta_rep_peak",
    "identity",
    "identity_kinds",
    "inverse",
    "regulated_radial",
    "render",
    "run_cli",
    "sift",
    "sph_bessel",
    "transform",
    "verify",
    "yukawa_check",
]
