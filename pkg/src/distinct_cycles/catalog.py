"""Construction parameters and the catalog of hub-attached subgraphs B_i.

Every subgraph of the construction shares one hub vertex ``x``.  Most of them
are plain cycles of length ``i``; four arithmetic families replace the plain
cycle by a cycle through the hub plus one or ten extra hub-to-cycle paths
("chords").  Family geometry is kept as linear forms in ``(t, k)`` so the same
definitions serve numeric evaluation, closed-form sums and symbolic checks.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterator, Optional

from .errors import (
    BudgetTooSmall,
    EvenT,
    InvariantBreach,
    NotChorded,
    NotPaperForm,
    ParamError,
    TooSmallT,
)

MODES = ("strict", "simple")
T_MODULUS = 1260
T_OFFSET = 169
MIN_RELAXED_T = 801


@dataclass(frozen=True)
class Linear:
    """``const + t_coef*t + k_coef*k`` with rational coefficients.

    ``k`` is the family-local parameter (``j`` or ``i``).
    """

    const: Fraction = Fraction(0)
    t_coef: Fraction = Fraction(0)
    k_coef: Fraction = Fraction(0)

    @classmethod
    def of(cls, const=0, t_coef=0, k_coef=0, den=1) -> "Linear":
        return cls(Fraction(const, den), Fraction(t_coef, den), Fraction(k_coef, den))

    def __add__(self, other: "Linear") -> "Linear":
        return Linear(self.const + other.const, self.t_coef + other.t_coef,
                      self.k_coef + other.k_coef)

    def __sub__(self, other: "Linear") -> "Linear":
        return Linear(self.const - other.const, self.t_coef - other.t_coef,
                      self.k_coef - other.k_coef)

    @cached_property
    def _scaled(self) -> tuple[int, int, int, int]:
        den = math.lcm(*(c.denominator for c in (self.const, self.t_coef, self.k_coef)))
        return (den, int(self.const * den), int(self.t_coef * den), int(self.k_coef * den))

    def __call__(self, t: int, k: int = 0) -> int:
        den, c, a, b = self._scaled
        value, rem = divmod(c + a * t + b * k, den)
        if rem:
            raise InvariantBreach(f"{self} is not an integer at t={t}, k={k}")
        return value

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in (self.const, self.t_coef, self.k_coef))

    def triple(self) -> tuple[int, int, int]:
        """Integer ``(const, t, k)`` coefficients; only valid when integral."""
        if not self.is_integral:
            raise InvariantBreach(f"{self} has fractional coefficients")
        return int(self.const), int(self.t_coef), int(self.k_coef)

    def format(self, var: str = "k") -> str:
        parts = []
        for coef, name in ((self.t_coef, "t"), (self.k_coef, var), (self.const, "")):
            if coef == 0:
                continue
            mag = abs(coef)
            text = str(mag) if name == "" else (name if mag == 1 else f"{mag}{name}")
            sign = "-" if coef < 0 else "+"
            parts.append((sign, text))
        if not parts:
            return "0"
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, text in parts[1:]:
            out += sign + text
        return out

    __str__ = format


def _half(const, t_coef, k_coef=0) -> Linear:
    return Linear.of(const, t_coef, k_coef, den=2)


class Kind(str, enum.Enum):
    TAIL_PATH = "TailPath"
    PLAIN_CYCLE = "PlainCycle"
    THREE_CYCLE_ODD = "ThreeCycleOdd"
    THREE_CYCLE_EVEN = "ThreeCycleEven"
    THREE_CYCLE_SHIFT = "ThreeCycleShift"
    TEN_CHORD = "TenChord"


CHORDED_KINDS = (Kind.THREE_CYCLE_ODD, Kind.THREE_CYCLE_EVEN,
                 Kind.THREE_CYCLE_SHIFT, Kind.TEN_CHORD)

# (cycle length, [(chord path length, attachment position), ...]) per family,
# as linear forms in (t, k).
FAMILY_GEOMETRY: dict[Kind, tuple[Linear, tuple[tuple[Linear, Linear], ...]]] = {
    Kind.THREE_CYCLE_ODD: (
        Linear.of(0, 25, 2),
        ((_half(1, 19, 2), _half(1, 23, 2)),),
    ),
    Kind.THREE_CYCLE_EVEN: (
        Linear.of(1, 25, 2),
        ((Linear.of(0, 9, 1), Linear.of(0, 12, 1)),),
    ),
    Kind.THREE_CYCLE_SHIFT: (
        Linear.of(2, 26, 2),
        ((_half(1, 21, 2), _half(1, 25, 2)),),
    ),
    Kind.TEN_CHORD: (
        Linear.of(894, 132, 11),
        tuple(
            (_half(1, p), _half(c, a, 2 * (m + 1)))
            for m, (p, a, c) in enumerate([
                (17, 37, -115), (19, 57, -103), (19, 77, 315), (21, 97, 313),
                (21, 117, 313), (23, 137, 311), (23, 157, 309), (25, 177, 297),
                (25, 197, 301), (27, 217, 305),
            ])
        ),
    ),
}


def closed_form_n_t(t: int) -> int:
    """Closed-form vertex threshold ``540t^2 + (175811t + 7989)/2``."""
    twice = 1080 * t * t + 175811 * t + 7989
    if twice % 2:
        raise EvenT(f"n_t is not an integer for t={t}")
    return twice // 2


def index_ranges(t: int) -> list[tuple[int, int]]:
    """The eleven contiguous index ranges, inclusive on both ends."""
    return [
        (0, 21 * t - 1),
        (27 * t, 28 * t + 64),
        (29 * t - 734, 29 * t + 267),
        (30 * t - 531, 30 * t + 57),
        (31 * t - 741, 31 * t + 58),
        (32 * t - 740, 32 * t + 57),
        (33 * t - 741, 33 * t + 57),
        (34 * t - 741, 34 * t + 52),
        (35 * t - 746, 35 * t + 60),
        (36 * t - 738, 36 * t + 60),
        (37 * t - 738, 37 * t + 799),
    ]


def family_bounds(t: int) -> dict[Kind, tuple[int, int]]:
    """Inclusive range of the family-local parameter for each chorded family."""
    half = (t - 3) // 2
    return {
        Kind.THREE_CYCLE_ODD: (0, t - 1),
        Kind.THREE_CYCLE_EVEN: (0, half),
        Kind.THREE_CYCLE_SHIFT: (0, half),
        Kind.TEN_CHORD: (58, t - 742),
    }


def family_index(kind: Kind, k: int, t: int) -> int:
    """Subscript of the subgraph built by family ``kind`` with parameter ``k``."""
    if kind is Kind.THREE_CYCLE_ODD:
        return 21 * t + 2 * k + 1
    if kind is Kind.THREE_CYCLE_EVEN:
        return 21 * t + 2 * k
    if kind is Kind.THREE_CYCLE_SHIFT:
        return 23 * t + 2 * k + 1
    if kind is Kind.TEN_CHORD:
        return 27 * t + k - 57
    raise NotChorded(kind)


def catalog_segments(t: int) -> list[tuple[int, int, int]]:
    """All listed indices as sorted ``(first, last, step)`` progressions.

    The index sets ``21t+2j`` and ``21t+2j+1`` fill ``[21t, 22t-1]``; the odd
    family's upper half and the ``23t+2j+1`` set together form one step-2 run
    from ``22t`` to ``24t`` (t is odd).
    """
    head, *rest = index_ranges(t)
    segments = [
        (head[0], head[1], 1),
        (21 * t, 22 * t - 1, 1),
        (22 * t, 24 * t, 2),
        (26 * t, 26 * t, 1),
    ]
    segments += [(lo, hi, 1) for lo, hi in rest]
    return segments


def segment_size(first: int, last: int, step: int) -> int:
    return (last - first) // step + 1 if last >= first else 0


def catalog_size(t: int) -> int:
    return sum(segment_size(*seg) for seg in catalog_segments(t))


def _check_segments(t: int) -> None:
    prev_last = -1
    for first, last, step in catalog_segments(t):
        if last < first:
            raise TooSmallT(f"empty index range [{first}, {last}] for t={t}")
        if first <= prev_last:
            raise TooSmallT(f"index range starting at {first} overlaps its "
                            f"predecessor (ends {prev_last}) for t={t}")
        prev_last = last
    ten_lo, ten_hi = family_bounds(t)[Kind.TEN_CHORD]
    if ten_hi < ten_lo:
        raise TooSmallT(f"TenChord family is empty for t={t}")
    lo, hi = index_ranges(t)[1]
    if not (lo < family_index(Kind.TEN_CHORD, ten_lo, t)
            and family_index(Kind.TEN_CHORD, ten_hi, t) <= hi):
        raise TooSmallT(f"TenChord indices leave their listed range for t={t}")


@dataclass(frozen=True)
class Params:
    """Validated construction parameters.  Build with :func:`validate_params`."""

    r: Optional[int]
    t: int
    n: int
    mode: str = "strict"
    relaxed: bool = False

    @property
    def n_t(self) -> int:
        return closed_form_n_t(self.t)

    @property
    def tail_length(self) -> int:
        # simple mode drops B_2 and its single non-hub vertex; the tail takes it
        return self.n - self.n_t + (1 if self.mode == "simple" else 0)

    @property
    def claimed_edges(self) -> int:
        return self.n + 36 * self.t


def validate_params(*, r: Optional[int] = None, t: Optional[int] = None,
                    n: Optional[int] = None, mode: str = "strict",
                    relaxed: bool = False) -> Params:
    """Check parameters and return a :class:`Params`.

    Exactly one of ``r`` and ``t`` must be given.  ``n`` defaults to ``n_t``.
    """
    if (r is None) == (t is None):
        raise ParamError("give exactly one of r and t")
    if mode not in MODES:
        raise ParamError(f"mode must be one of {MODES}, got {mode!r}")
    for name, value in (("r", r), ("t", t), ("n", n)):
        if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
            raise ParamError(f"{name} must be an integer, got {value!r}")

    if r is not None:
        if r < 1:
            raise ParamError(f"r must be positive, got {r}")
        t = T_MODULUS * r + T_OFFSET
    assert t is not None
    if t % 2 == 0:
        raise EvenT(f"t must be odd, got {t}")

    if relaxed:
        if t < MIN_RELAXED_T:
            raise TooSmallT(f"relaxed mode needs t >= {MIN_RELAXED_T}, got {t}")
        if r is None and t % T_MODULUS == T_OFFSET and t > T_OFFSET:
            r = (t - T_OFFSET) // T_MODULUS
    else:
        if t % T_MODULUS != T_OFFSET or t < T_MODULUS + T_OFFSET:
            raise NotPaperForm(f"t={t} is not 1260r+169 with r >= 1")
        r = (t - T_OFFSET) // T_MODULUS
    _check_segments(t)
    if relaxed:
        # attachment order is linear in the family parameter: endpoints suffice
        lo, hi = family_bounds(t)[Kind.TEN_CHORD]
        for k in (lo, hi):
            try:
                _spec_from_geometry(Kind.TEN_CHORD, k, t)
            except InvariantBreach as exc:
                raise TooSmallT(f"TenChord({k}) geometry invalid for t={t}: {exc}") from exc

    n_t = closed_form_n_t(t)
    if n is None:
        n = n_t
    if n < n_t:
        raise BudgetTooSmall(f"n={n} is below n_t={n_t} for t={t}")
    return Params(r=r, t=t, n=n, mode=mode, relaxed=relaxed)


@dataclass(frozen=True)
class SubgraphDescriptor:
    """One subgraph B_index.

    ``param`` is the tail length for TailPath, the cycle length for
    PlainCycle, and the family-local parameter (j or i) otherwise.
    """

    index: int
    kind: Kind
    param: int

    @property
    def is_chorded(self) -> bool:
        return self.kind in CHORDED_KINDS

    @property
    def is_formal(self) -> bool:
        """Plain "cycles" of length 1 or 2: accounting entries only."""
        return self.kind is Kind.PLAIN_CYCLE and self.param < 3

    def __str__(self) -> str:
        return f"B_{self.index}:{self.kind.value}({self.param})"


def classify(index: int, params: Params) -> SubgraphDescriptor:
    """Descriptor for a listed index (the caller guarantees it is listed)."""
    t = params.t
    if index == 0:
        return SubgraphDescriptor(0, Kind.TAIL_PATH, params.tail_length)
    off = index - 21 * t
    if 0 <= off <= 2 * t - 1 and off % 2 == 1:
        return SubgraphDescriptor(index, Kind.THREE_CYCLE_ODD, (off - 1) // 2)
    if 0 <= off <= t - 3 and off % 2 == 0:
        return SubgraphDescriptor(index, Kind.THREE_CYCLE_EVEN, off // 2)
    off = index - 23 * t
    if 1 <= off <= t - 2 and off % 2 == 1:
        return SubgraphDescriptor(index, Kind.THREE_CYCLE_SHIFT, (off - 1) // 2)
    lo, hi = family_bounds(t)[Kind.TEN_CHORD]
    k = index - 27 * t + 57
    if lo <= k <= hi:
        return SubgraphDescriptor(index, Kind.TEN_CHORD, k)
    return SubgraphDescriptor(index, Kind.PLAIN_CYCLE, index)


def iter_subgraphs(params: Params) -> Iterator[SubgraphDescriptor]:
    """Yield every descriptor in ascending index order without building a list."""
    for first, last, step in catalog_segments(params.t):
        for index in range(first, last + 1, step):
            yield classify(index, params)


def enumerate_subgraphs(params: Params) -> list[SubgraphDescriptor]:
    return list(iter_subgraphs(params))


@dataclass(frozen=True)
class ChordedCycleSpec:
    """A cycle of ``L`` edges through the hub plus hub-to-cycle chord paths.

    ``chords`` holds ``(path_length, attachment)`` pairs ordered by
    attachment, where attachment counts cycle edges from the hub.
    """

    L: int
    chords: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "chords", tuple(tuple(c) for c in self.chords))
        if self.L < 3:
            raise InvariantBreach(f"cycle length {self.L} < 3")
        prev = 0
        for p, a in self.chords:
            if p < 2:
                raise InvariantBreach(f"chord path length {p} < 2")
            if not prev < a < self.L:
                raise InvariantBreach(
                    f"attachments must satisfy 0 < a_1 < ... < a_d < L={self.L}; "
                    f"got {a} after {prev}")
            prev = a

    @property
    def d(self) -> int:
        return len(self.chords)

    @property
    def new_vertices(self) -> int:
        """Vertices besides the hub."""
        return self.L - 1 + sum(p - 1 for p, _ in self.chords)

    @property
    def edges(self) -> int:
        return self.L + sum(p for p, _ in self.chords)


def _spec_from_geometry(kind: Kind, k: int, t: int) -> ChordedCycleSpec:
    length, chords = FAMILY_GEOMETRY[kind]
    return ChordedCycleSpec(length(t, k), tuple((p(t, k), a(t, k)) for p, a in chords))


def chorded_spec(descriptor: SubgraphDescriptor, t: int) -> ChordedCycleSpec:
    """Geometry of a chorded-family descriptor at this ``t``."""
    if not descriptor.is_chorded:
        raise NotChorded(f"{descriptor} has no chords")
    return _spec_from_geometry(descriptor.kind, descriptor.param, t)
