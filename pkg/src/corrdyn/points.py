"""Points of the projective line over an exact field.

A point is a normalized pair [a : b]: either b = 1, or (a, b) = (1, 0) for
the point at infinity.  Points carry the field their coordinates live in;
points over different fields never compare equal.
"""

from __future__ import annotations

from .errors import FieldMismatch
from .fields import Field, FieldElement


class ProjectivePoint:
    __slots__ = ("field", "a", "b")

    def __init__(self, field: Field, a: FieldElement, b: FieldElement):
        a = field.element(a)
        b = field.element(b)
        if b.is_zero:
            if a.is_zero:
                raise FieldMismatch("[0:0] is not a projective point")
            a = field.one
        else:
            a = a / b
            b = field.one
        self.field = field
        self.a = a
        self.b = b

    @classmethod
    def finite(cls, field: Field, value) -> "ProjectivePoint":
        return cls(field, field.element(value), field.one)

    @classmethod
    def infinity(cls, field: Field) -> "ProjectivePoint":
        return cls(field, field.one, field.zero)

    @property
    def is_infinity(self) -> bool:
        return self.b.is_zero

    def value(self) -> FieldElement:
        """Affine coordinate; only valid for finite points."""
        if self.is_infinity:
            raise FieldMismatch("infinity has no affine coordinate")
        return self.a

    def key(self):
        """Sort key: finite points by element key, infinity last."""
        if self.is_infinity:
            return (1, 0)
        return (0, self.a.key())

    def in_field(self, field: Field) -> "ProjectivePoint":
        """Re-tag the point in another field containing its coordinates."""
        if self.is_infinity:
            return ProjectivePoint.infinity(field)
        return ProjectivePoint.finite(field, field.element(self.a))

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.field, self.a.payload, self.b.payload))

    def __str__(self):
        return f"[{self.a}:{self.b}]"

    def __repr__(self):
        return f"P({self})"


def sort_points(points) -> list:
    return sorted(points, key=lambda q: q.key())
