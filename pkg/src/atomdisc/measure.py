"""Discrete probability measures on [0,1] and [0,1]^d.

A one-dimensional measure is either a finite, position-sorted list of atoms or
a named infinite family (geometric or zeta weights) whose atoms are generated
on demand. Weights are exact :class:`~fractions.Fraction` values or
:class:`RealWeight` values carrying a declared irrationality flag.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterator, NamedTuple, Optional, Sequence, Union

from .errors import DomainError, InvariantError, SchemaError, TailNotConvergent
from .precision import constant, is_exact, mp, rel_slack, to_real

RIGHT = "right"
LEFT = "left"
_SIDE_ALIASES = {"right": RIGHT, "right-value": RIGHT, "closed": RIGHT,
                 "left": LEFT, "left-limit": LEFT, "open": LEFT}

# Hard cap on atoms generated from an infinite family in a single sweep.
MAX_FAMILY_ATOMS = 1_000_000


@dataclass(frozen=True)
class RealWeight:
    """A weight known only to working precision.

    ``irrational`` is declared by the caller; it is never inferred from digits.
    ``text`` keeps the original literal or constant name for serialization.
    """

    value: object
    irrational: bool = True
    text: Optional[str] = None
    const: Optional[str] = None

    @classmethod
    def from_constant(cls, name: str) -> "RealWeight":
        return cls(constant(name), True, None, name)

    @classmethod
    def from_text(cls, text: str, irrational: bool) -> "RealWeight":
        return cls(mp.mpf(text), irrational, text, None)


Weight = Union[Fraction, RealWeight]


def weight_value(w: Weight):
    """Numeric value of a weight: Fraction when exact, mpf otherwise."""
    if isinstance(w, RealWeight):
        return w.value
    return Fraction(w)


def add(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(a) + Fraction(b)
    return to_real(a) + to_real(b)


def sub(a, b):
    if is_exact(a) and is_exact(b):
        return Fraction(a) - Fraction(b)
    return to_real(a) - to_real(b)


def _position(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, (list, tuple)) and len(x) == 2:
        return Fraction(int(x[0]), int(x[1]))
    raise SchemaError(f"cannot read position {x!r}")


def _as_weight(w) -> Weight:
    if isinstance(w, RealWeight):
        return w
    if isinstance(w, (Fraction, int)):
        return Fraction(w)
    if isinstance(w, str):
        return Fraction(w)
    if isinstance(w, float):
        return Fraction(repr(w))
    if isinstance(w, (list, tuple)) and len(w) == 2:
        return Fraction(int(w[0]), int(w[1]))
    # a bare mpf: real, irrationality unknown
    return RealWeight(to_real(w), False)


class Atom(NamedTuple):
    x: Fraction
    weight: Weight


def dyadic_position(i: int) -> Fraction:
    """Default position rule for infinite families: x_i = 1 - 2^-i."""
    return 1 - Fraction(1, 2 ** i)


@lru_cache(maxsize=64)
def _zeta(s: int, dps: int):
    return mp.zeta(s)


@dataclass(frozen=True)
class Family:
    """Named infinite family of weights.

    ``geometric``: xi_i = (1 - r) r^(i-1) with rational ratio r in (0,1).
    ``zeta``: xi_i = i^(-s) / zeta(s) for integer s >= 2.
    """

    name: str
    param: Union[Fraction, int]
    position: Callable[[int], Fraction] = field(default=dyadic_position, compare=False)

    def __post_init__(self):
        if self.name == "geometric":
            r = Fraction(self.param)
            if not 0 < r < 1:
                raise InvariantError(f"geometric ratio must lie in (0,1), got {r}")
            object.__setattr__(self, "param", r)
        elif self.name == "zeta":
            if int(self.param) != self.param or int(self.param) < 2:
                raise InvariantError(f"zeta exponent must be an integer >= 2, got {self.param}")
            object.__setattr__(self, "param", int(self.param))
        else:
            raise SchemaError(f"unknown family {self.name!r}")

    @property
    def exact(self) -> bool:
        return self.name == "geometric"

    def weight(self, i: int) -> Weight:
        if self.name == "geometric":
            r = self.param
            return (1 - r) * r ** (i - 1)
        s = self.param
        # zeta(2k) is a rational multiple of pi^2k, zeta(3) is Apery's constant
        irrational = s % 2 == 0 or s == 3
        return RealWeight(1 / (_zeta(s, mp.dps) * mp.mpf(i) ** s), irrational)

    def tail(self, l: int):
        if self.name == "geometric":
            return self.param ** l
        s = self.param
        return mp.zeta(s, l + 1) / _zeta(s, mp.dps)


@dataclass(frozen=True)
class Measure:
    """A discrete probability measure on [0,1].

    Exactly one of ``atoms`` (finite support) or ``family`` (infinite support)
    is populated.
    """

    atoms: tuple = ()
    family: Optional[Family] = None

    def __post_init__(self):
        atoms = tuple(Atom(_position(x), _as_weight(w)) for x, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if self.family is not None:
            if atoms:
                raise SchemaError("a measure has either explicit atoms or a family, not both")
            return
        if not atoms:
            raise SchemaError("a finite measure needs at least one atom")
        total = Fraction(0)
        prev = None
        for a in atoms:
            if not 0 <= a.x <= 1:
                raise InvariantError(f"atom position {a.x} outside [0,1]")
            if prev is not None and a.x <= prev:
                raise InvariantError(f"atom positions must be strictly increasing ({prev} then {a.x})")
            prev = a.x
            v = weight_value(a.weight)
            if not v > 0:
                raise InvariantError(f"weight at {a.x} must be positive")
            if v > 1 and (is_exact(v) or v - 1 > rel_slack()):
                raise InvariantError(f"weight at {a.x} exceeds 1")
            total = add(total, v)
        if is_exact(total):
            if total != 1:
                raise InvariantError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > rel_slack():
            raise InvariantError(f"weights sum to {mp.nstr(total, 20)}, not 1")

    @classmethod
    def from_atoms(cls, positions: Sequence, weights: Sequence) -> "Measure":
        """Build a finite measure, sorting atoms by position."""
        if len(positions) != len(weights):
            raise SchemaError("positions and weights differ in length")
        pairs = sorted(zip((_position(x) for x in positions), weights), key=lambda p: p[0])
        return cls(tuple(pairs))

    @classmethod
    def geometric(cls, ratio=Fraction(1, 2), position=dyadic_position) -> "Measure":
        return cls(family=Family("geometric", Fraction(ratio), position))

    @classmethod
    def zeta(cls, s: int = 2, position=dyadic_position) -> "Measure":
        return cls(family=Family("zeta", s, position))

    @property
    def is_finite(self) -> bool:
        return self.family is None

    @property
    def n(self) -> Optional[int]:
        """Number of atoms, or None for an infinite family."""
        return len(self.atoms) if self.is_finite else None

    @property
    def is_rational(self) -> bool:
        if self.family is not None:
            return self.family.exact
        return all(not isinstance(a.weight, RealWeight) for a in self.atoms)

    def atom(self, i: int) -> Atom:
        """The i-th atom, 1-based."""
        if self.family is None:
            return self.atoms[i - 1]
        return Atom(Fraction(self.family.position(i)), self.family.weight(i))

    def iter_atoms(self, limit: int = MAX_FAMILY_ATOMS) -> Iterator[Atom]:
        if self.family is None:
            yield from self.atoms
            return
        for i in range(1, limit + 1):
            yield self.atom(i)
        raise TailNotConvergent(f"family enumeration exceeded {limit} atoms")


@dataclass(frozen=True)
class MeasureDD:
    """A finitely supported probability measure on [0,1]^d, d >= 2."""

    dimension: int
    atoms: tuple

    def __post_init__(self):
        if self.dimension < 2:
            raise SchemaError("MeasureDD needs dimension >= 2; use Measure for d = 1")
        atoms = []
        for pos, w in self.atoms:
            p = tuple(_position(c) for c in pos)
            if len(p) != self.dimension:
                raise SchemaError(f"atom {p} does not have {self.dimension} coordinates")
            if any(not 0 <= c <= 1 for c in p):
                raise InvariantError(f"atom {p} outside the unit cube")
            atoms.append((p, _as_weight(w)))
        if not atoms:
            raise SchemaError("a measure needs at least one atom")
        if len({p for p, _ in atoms}) != len(atoms):
            raise InvariantError("atom positions must be pairwise distinct")
        total = Fraction(0)
        for p, w in atoms:
            v = weight_value(w)
            if not v > 0:
                raise InvariantError(f"weight at {p} must be positive")
            total = add(total, v)
        if is_exact(total):
            if total != 1:
                raise InvariantError(f"weights sum to {total}, not 1")
        elif abs(total - 1) > rel_slack():
            raise InvariantError(f"weights sum to {mp.nstr(total, 20)}, not 1")
        object.__setattr__(self, "atoms", tuple(atoms))

    @property
    def k(self) -> int:
        return len(self.atoms)

    @property
    def is_rational(self) -> bool:
        return all(not isinstance(w, RealWeight) for _, w in self.atoms)


@dataclass(frozen=True)
class CumulativeProfile:
    """Partial sums S_l of the weights in position order.

    ``denominators[l-1]`` is the lowest-terms denominator of S_l when every
    weight up to l is rational, else None. ``irrational[l-1]`` is True when
    S_l involves a declared-irrational weight and is not the total mass.
    """

    sums: tuple
    denominators: tuple
    irrational: tuple

    def __len__(self):
        return len(self.sums)


def _side(side: str) -> str:
    try:
        return _SIDE_ALIASES[side]
    except KeyError:
        raise DomainError(f"side must be one of {sorted(_SIDE_ALIASES)}, got {side!r}") from None


def cdf(m: Measure, x, side: str = RIGHT):
    """mu([0,x]) for side='right', mu([0,x)) for side='left'."""
    side = _side(side)
    x = _position(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x = {x} outside [0,1]")
    if m.family is not None and x == 1:
        # family positions accumulate below 1
        return Fraction(1) if m.family.exact else to_real(1)
    total = Fraction(0) if m.is_rational else to_real(0)
    for a in m.iter_atoms():
        if a.x > x or (side == LEFT and a.x == x):
            break
        total = add(total, weight_value(a.weight))
    return total


def cumulative_sums(m: Measure, l_max: int) -> CumulativeProfile:
    if l_max < 0:
        raise DomainError("l_max must be non-negative")
    if m.is_finite and l_max > m.n:
        raise DomainError(f"l_max = {l_max} exceeds the {m.n} atoms")
    sums, dens, irr = [], [], []
    s = Fraction(0)
    exact = True
    any_irrational = False
    for l, a in enumerate(m.iter_atoms(), start=1):
        if l > l_max:
            break
        w = a.weight
        if isinstance(w, RealWeight):
            exact = False
            any_irrational = any_irrational or w.irrational
        s = add(s, weight_value(w))
        sums.append(s)
        dens.append(s.denominator if exact else None)
        irr.append(any_irrational and not (m.is_finite and l == m.n))
    return CumulativeProfile(tuple(sums), tuple(dens), tuple(irr))


def tail_mass(m: Measure, l: int):
    """1 - S_l; closed form for named families."""
    if m.family is not None:
        return m.family.tail(l)
    if not 0 <= l <= m.n:
        raise DomainError(f"l = {l} outside 0..{m.n}")
    if l == m.n:
        return Fraction(0) if m.is_rational else to_real(0)
    if l == 0:
        return Fraction(1) if m.is_rational else to_real(1)
    return sub(1, cumulative_sums(m, l).sums[-1])


# ---------------------------------------------------------------------------
# document I/O


def _read_number(v, what: str) -> Fraction:
    try:
        return _position(v)
    except (SchemaError, ValueError, TypeError, ZeroDivisionError):
        raise SchemaError(f"{what}: expected a decimal or [num, den], got {v!r}") from None


def _read_weight(doc) -> Weight:
    if not isinstance(doc, dict) or len(doc) != 1 and "real" not in doc:
        raise SchemaError(f"weight must be one of rational/real/const objects, got {doc!r}")
    if "rational" in doc:
        pq = doc["rational"]
        if not (isinstance(pq, list) and len(pq) == 2 and all(isinstance(t, int) for t in pq)):
            raise SchemaError(f"rational weight must be [p, q] integers, got {pq!r}")
        p, q = pq
        if p < 1 or q < 1:
            raise InvariantError(f"rational weight needs p, q >= 1, got {p}/{q}")
        return Fraction(p, q)
    if "real" in doc:
        text = doc["real"]
        if not isinstance(text, str):
            raise SchemaError("real weight must be a decimal string")
        irr = doc.get("irrational", False)
        if not isinstance(irr, bool) or set(doc) - {"real", "irrational"}:
            raise SchemaError(f"malformed real weight {doc!r}")
        try:
            return RealWeight.from_text(text, irr)
        except ValueError:
            raise SchemaError(f"cannot parse real weight {text!r}") from None
    if "const" in doc:
        try:
            return RealWeight.from_constant(doc["const"])
        except KeyError as e:
            raise SchemaError(str(e.args[0])) from None
    raise SchemaError(f"unknown weight kind {doc!r}")


def parse_measure(source) -> Union[Measure, MeasureDD]:
    """Parse a measure document (JSON text or an already-decoded mapping)."""
    if isinstance(source, (str, bytes)):
        try:
            doc = json.loads(source, parse_float=Fraction)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON: {e}") from None
    else:
        doc = source
    if not isinstance(doc, dict):
        raise SchemaError("measure document must be a JSON object")
    unknown = set(doc) - {"dimension", "atoms", "family"}
    if unknown:
        raise SchemaError(f"unknown fields {sorted(unknown)}")
    dim = doc.get("dimension", 1)
    if not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"dimension must be a positive integer, got {dim!r}")
    atoms_doc = doc.get("atoms", [])
    if not isinstance(atoms_doc, list):
        raise SchemaError("atoms must be a list")
    fam_doc = doc.get("family")

    atoms = []
    for i, a in enumerate(atoms_doc):
        if not isinstance(a, dict) or set(a) != {"x", "weight"}:
            raise SchemaError(f"atom {i} must have exactly the fields x and weight")
        w = _read_weight(a["weight"])
        if dim == 1:
            x = _read_number(a["x"], f"atom {i} x")
        else:
            if not isinstance(a["x"], list) or len(a["x"]) != dim:
                raise SchemaError(f"atom {i} x must list {dim} coordinates")
            x = tuple(_read_number(c, f"atom {i} x") for c in a["x"])
        atoms.append((x, w))

    if dim > 1:
        if fam_doc is not None:
            raise SchemaError("families are one-dimensional")
        return MeasureDD(dim, tuple(atoms))

    if fam_doc is not None:
        if atoms:
            raise SchemaError("give either atoms or family, not both")
        if not isinstance(fam_doc, dict) or set(fam_doc) != {"name", "param"}:
            raise SchemaError("family must have exactly the fields name and param")
        name, param = fam_doc["name"], fam_doc["param"]
        if name == "geometric":
            param = _read_number(param, "geometric ratio")
        elif name == "zeta":
            if not isinstance(param, int):
                raise SchemaError("zeta param must be an integer")
        else:
            raise SchemaError(f"unknown family {name!r}")
        return Measure(family=Family(name, param))

    xs = [x for x, _ in atoms]
    if len(set(xs)) != len(xs):
        raise InvariantError("duplicate atom positions")
    return Measure.from_atoms(xs, [w for _, w in atoms])


def load_measure(path) -> Union[Measure, MeasureDD]:
    return parse_measure(Path(path).read_text())


def _dump_number(x: Fraction):
    return [x.numerator, x.denominator]


def _dump_weight(w: Weight) -> dict:
    if isinstance(w, RealWeight):
        if w.const is not None:
            return {"const": w.const}
        text = w.text if w.text is not None else mp.nstr(w.value, mp.dps)
        return {"real": text, "irrational": w.irrational}
    return {"rational": [w.numerator, w.denominator]}


def dump_measure(m: Union[Measure, MeasureDD]) -> dict:
    if isinstance(m, MeasureDD):
        return {"dimension": m.dimension,
                "atoms": [{"x": [_dump_number(c) for c in p], "weight": _dump_weight(w)}
                          for p, w in m.atoms]}
    if m.family is not None:
        p = m.family.param
        param = _dump_number(p) if isinstance(p, Fraction) else p
        return {"dimension": 1, "family": {"name": m.family.name, "param": param}}
    return {"dimension": 1,
            "atoms": [{"x": _dump_number(a.x), "weight": _dump_weight(a.weight)} for a in m.atoms]}


def dumps_measure(m) -> str:
    return json.dumps(dump_measure(m), indent=2)
