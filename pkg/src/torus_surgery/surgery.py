"""Surgery descriptors and the headline integer computations: relation
classes of the reattached 2-handles, first homology of the surgered
manifolds, Betti-number bounds, and the Kähler / product obstructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import (
    AbelianGroup,
    CIRCLE_LABELS,
    embedding_catalog,
    quotient_group,
)

AMBIENT_RANK = 6
EULER_CHARACTERISTIC = 0

OBSTRUCTED = "obstructed"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class SL2Z:
    """An integer 2x2 matrix [[p, q], [r, s]] of determinant one."""

    p: int
    q: int
    r: int
    s: int

    def __post_init__(self):
        if self.p * self.s - self.q * self.r != 1:
            raise ValueError(
                f"determinant of [[{self.p},{self.q}],[{self.r},{self.s}]] is not 1"
            )

    @classmethod
    def identity(cls) -> "SL2Z":
        return cls(1, 0, 0, 1)

    def inverse(self) -> "SL2Z":
        return SL2Z(self.s, -self.q, -self.r, self.p)

    def __matmul__(self, other: "SL2Z") -> "SL2Z":
        return SL2Z(
            self.p * other.p + self.q * other.r,
            self.p * other.q + self.q * other.s,
            self.r * other.p + self.s * other.r,
            self.r * other.q + self.s * other.s,
        )

    def push_circle(self, z: int, w: int) -> tuple[int, int]:
        """Pushforward on the first homology of the torus directions."""
        return (self.p * z + self.q * w, self.r * z + self.s * w)

    def to_json(self) -> list[list[int]]:
        return [[self.p, self.q], [self.r, self.s]]

    @classmethod
    def from_json(cls, data) -> "SL2Z":
        (p, q), (r, s) = data
        return cls(p, q, r, s)


@dataclass(frozen=True)
class SurgeryDescriptor:
    """Four twist coefficients and four determinant-one matrices, one per
    embedded 4-torus."""

    ks: tuple[int, int, int, int]
    taus: tuple[SL2Z, SL2Z, SL2Z, SL2Z]

    def __post_init__(self):
        if len(self.ks) != 4 or len(self.taus) != 4:
            raise ValueError("a descriptor carries exactly four surgeries")

    @classmethod
    def plain(cls, *ks: int) -> "SurgeryDescriptor":
        identity = SL2Z.identity()
        return cls(tuple(ks), (identity,) * 4)

    def sort_key(self):
        return (
            self.ks,
            tuple((t.p, t.q, t.r, t.s) for t in self.taus),
        )

    def to_json(self) -> dict:
        return {
            "surgeries": [
                {"k": k, "tau": tau.to_json()}
                for k, tau in zip(self.ks, self.taus)
            ]
        }

    @classmethod
    def from_json(cls, data) -> "SurgeryDescriptor":
        entries = data["surgeries"]
        if len(entries) != 4:
            raise ValueError("descriptor must list exactly four surgeries")
        return cls(
            tuple(int(e["k"]) for e in entries),
            tuple(SL2Z.from_json(e["tau"]) for e in entries),
        )


def relation_classes(descriptor: SurgeryDescriptor) -> list[list[int]]:
    """The four reattachment-circle classes in the rank-6 first homology of
    the complement, derived by composing pushforwards.

    The attaching circle carries class (meridian + k * w-circle); the twist
    acts on the (z, w) pair; the embedding sends z and w to coordinate
    circles per the catalog; the meridian dies in the complement because it
    bounds a punctured dual torus.
    """
    rows = []
    for k, tau, torus in zip(
        descriptor.ks, descriptor.taus, embedding_catalog()
    ):
        z, w = tau.push_circle(0, k)  # attaching circle: meridian + k*w
        row = [0] * AMBIENT_RANK
        row[torus.coordinate_of("z") - 1] += z
        row[torus.coordinate_of("w") - 1] += w
        rows.append(row)
    return rows


def h1(descriptor: SurgeryDescriptor) -> AbelianGroup:
    """First homology of the surgered manifold."""
    return quotient_group(AMBIENT_RANK, relation_classes(descriptor))


def min_product_b2(r: int) -> int:
    """Smallest second Betti number of a spin symplectic 4-manifold times a
    torus consistent with vanishing canonical class and b1 = r, derived
    from the signature and characteristic-number constraints at the
    smallest admissible signature defect."""
    if r not in (0, 1):
        raise ValueError("r must be 0 or 1")
    n = 1  # smallest multiple-of-16 signature defect compatible with b+ >= 1
    b_plus = 4 * n + r - 1
    b_minus = 5 * b_plus + 4 - 4 * r
    b2_four_manifold = b_plus + b_minus
    return b2_four_manifold + 2 * r + 1  # Kunneth: cross terms plus the torus


def product_obstruction(b1: int, b2_upper: int) -> str:
    """Obstructed when no spin product can fit under the b2 bound; the
    argument only applies for first Betti number 2 or 3."""
    if b1 < 0 or b2_upper < 0:
        raise ValueError("Betti numbers are non-negative")
    if b1 in (2, 3) and b2_upper < min_product_b2(b1 - 2):
        return OBSTRUCTED
    return UNKNOWN


@dataclass(frozen=True)
class SurgeryReport:
    """All invariants the construction pins down for one descriptor."""

    descriptor: SurgeryDescriptor
    h1: AbelianGroup
    b1: int
    bound_b2: int
    bound_b3: int
    euler: int
    kahler_obstructed: bool
    product_status: str
    relations: tuple[tuple[int, ...], ...]

    def invariant_key(self):
        return (
            self.h1,
            self.b1,
            self.kahler_obstructed,
            self.product_status,
        )

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor.to_json(),
            "h1": self.h1.to_json(),
            "b1": self.b1,
            "bound_b2": self.bound_b2,
            "bound_b3": self.bound_b3,
            "euler": self.euler,
            "kahler_obstructed": self.kahler_obstructed,
            "product_status": self.product_status,
            "relations": [list(row) for row in self.relations],
        }


def report(descriptor: SurgeryDescriptor) -> SurgeryReport:
    relations = relation_classes(descriptor)
    group = quotient_group(AMBIENT_RANK, relations)
    b1 = group.rank
    bound_b2 = 15 + b1
    # Euler characteristic zero: 0 = 2 - 2*b1 + 2*b2 - b3 <= 32 - b3.
    bound_b3 = 2 - 2 * b1 + 2 * bound_b2
    return SurgeryReport(
        descriptor=descriptor,
        h1=group,
        b1=b1,
        bound_b2=bound_b2,
        bound_b3=bound_b3,
        euler=EULER_CHARACTERISTIC,
        kahler_obstructed=(b1 % 2 == 1),
        product_status=product_obstruction(b1, bound_b2),
        relations=tuple(tuple(row) for row in relations),
    )


def realize(d1: int, d2: int, d3: int, d4: int) -> SurgeryDescriptor:
    """A descriptor whose first homology is Z^2 plus Z/d1 ... Z/d4
    (identity twists, k_i = d_i)."""
    for d in (d1, d2, d3, d4):
        if d < 0:
            raise ValueError("target torsion orders must be non-negative")
    return SurgeryDescriptor.plain(d1, d2, d3, d4)


@dataclass(frozen=True)
class SweepClass:
    """One isomorphism class found by a parameter sweep."""

    h1: AbelianGroup
    b1: int
    kahler_obstructed: bool
    product_status: str
    representative: SurgeryDescriptor
    count: int

    def to_json(self) -> dict:
        return {
            "h1": self.h1.to_json(),
            "b1": self.b1,
            "kahler_obstructed": self.kahler_obstructed,
            "product_status": self.product_status,
            "representative": self.representative.to_json(),
            "count": self.count,
        }


def sweep_descriptors(
    k_values: Sequence[int],
    tau_set: Sequence[SL2Z],
    slots: Sequence[int] | None = None,
    base_ks: tuple[int, int, int, int] = (0, 0, 0, 0),
) -> Iterable[SurgeryDescriptor]:
    """Grid of descriptors: the chosen slots range over k_values and every
    slot ranges over tau_set; the remaining k entries come from base_ks."""
    if not tau_set:
        return
    slots = tuple(slots) if slots is not None else (0, 1, 2, 3)
    for ks in itertools.product(k_values, repeat=len(slots)):
        full = list(base_ks)
        for slot, k in zip(slots, ks):
            full[slot] = k
        for taus in itertools.product(tau_set, repeat=4):
            yield SurgeryDescriptor(tuple(full), taus)


def sweep(descriptors: Iterable[SurgeryDescriptor]) -> list[SweepClass]:
    """Group descriptors by their invariants; deterministic order
    (lexicographic on the representative descriptor)."""
    groups: dict = {}
    for descriptor in sorted(descriptors, key=SurgeryDescriptor.sort_key):
        rep = report(descriptor)
        key = rep.invariant_key()
        if key in groups:
            groups[key][1] += 1
        else:
            groups[key] = [rep, 1]
    classes = [
        SweepClass(
            h1=rep.h1,
            b1=rep.b1,
            kahler_obstructed=rep.kahler_obstructed,
            product_status=rep.product_status,
            representative=rep.descriptor,
            count=count,
        )
        for rep, count in groups.values()
    ]
    classes.sort(key=lambda c: c.representative.sort_key())
    return classes
