"""Exact arithmetic on elliptic surfaces y^2 = x (x - f^2)(x - g^2).

Curves, points and families use the JSON encoding of the ellsurf command-line
tool and may be passed as dicts or JSON text. Rationals come back as
fractions.Fraction, reports as dicts.
"""

import json
from fractions import Fraction

from . import _core
from ._core import EllsurfError

__all__ = [
    "EllsurfError",
    "analyze",
    "height",
    "pairing",
    "gram",
    "torsion",
    "family",
    "descent",
    "quadric",
    "specialize",
    "rank3",
    "verify",
]

EllsurfError.kind = property(lambda self: self.args[0] if self.args else None)
EllsurfError.message = property(lambda self: self.args[1] if len(self.args) > 1 else str(self))


def _text(value):
    return value if isinstance(value, str) else json.dumps(value)


def _rational(value):
    return str(Fraction(value)) if not isinstance(value, str) else value


def analyze(curve):
    """Minimality verdict, chi, discriminant and fiber table."""
    return json.loads(_core.analyze(_text(curve)))


def height(curve, point):
    return Fraction(_core.height(_text(curve), _text(point)))


def pairing(curve, p, q):
    return Fraction(_core.pairing(_text(curve), _text(p), _text(q)))


def gram(curve, points):
    return json.loads(_core.gram(_text(curve), [_text(p) for p in points]))


def torsion(curve, over_q=False):
    return json.loads(_core.torsion(_text(curve), over_q))


def family(triple, certify="none"):
    """triple: {"h1", "h2"} or {"f", "g", "h"}; certify: "none", "qbar" or "qt"."""
    return json.loads(_core.family(_text(triple), certify))


def descent(triple, points):
    return json.loads(_core.descent(_text(triple), [_text(p) for p in points]))


def quadric(alpha, beta, gamma, point):
    return json.loads(_core.quadric(_rational(alpha), _rational(beta), _rational(gamma), [_rational(c) for c in point]))


def specialize(family_spec, t0):
    return json.loads(_core.specialize(_text(family_spec), _rational(t0)))


def rank3(t0):
    return json.loads(_core.rank3(_rational(t0)))


def verify(criteria=None):
    """Runs acceptance criteria (all by default); one dict per criterion."""
    ids = criteria if criteria is not None else range(1, _core.criterion_count + 1)
    return [json.loads(_core.run_criterion(i)) for i in ids]
