"""Distance to the nearest integer, coprime reduction, and convergents."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, IrrationalInput, PrecisionExhausted
from .measure import Measure, RealWeight
from .precision import is_exact, mp, to_real

# Stop the continued-fraction recursion once fewer than this many digits
# of the complete quotient remain trustworthy.
TRUSTED_DIGITS = 10


@dataclass(frozen=True)
class Convergent:
    p: int
    q: int
    index: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def dist_nearest_int(x):
    """min over integers m of |x - m|; exact for int/Fraction input."""
    if isinstance(x, RealWeight):
        x = x.value
    if is_exact(x):
        x = Fraction(x)
        f = x - math.floor(x)
        return min(f, 1 - f)
    x = to_real(x)
    f = x - mp.floor(x)
    return f if f <= 1 - f else 1 - f


def reduced_coprime_part(q: int, N: int) -> int:
    """s = q / gcd(q, N); the lower bound 1/(N s) holds for |a/q - k/N|, gcd(a,q)=1."""
    if q < 1 or N < 1:
        raise DomainError(f"need q, N >= 1, got q={q}, N={N}")
    return q // math.gcd(q, N)


def lcm_denominators(m: Measure) -> int:
    """lcm of the lowest-terms denominators of all weights but the last."""
    if not m.is_finite:
        raise DomainError("lcm_denominators needs a finite measure")
    out = 1
    for a in m.atoms[:-1]:
        if isinstance(a.weight, RealWeight):
            raise IrrationalInput(f"weight at {a.x} is not an exact rational")
        out = math.lcm(out, a.weight.denominator)
    if isinstance(m.atoms[-1].weight, RealWeight):
        raise IrrationalInput(f"weight at {m.atoms[-1].x} is not an exact rational")
    return out


def convergents(x, count: int) -> list[Convergent]:
    """Continued-fraction convergents p_k/q_k of x in (0,1), k = 1, 2, ...

    The trivial 0/1 convergent is omitted. A rational x yields at most as
    many convergents as its expansion has terms. For a real x the expansion
    is taken on the working-precision value and raises PrecisionExhausted
    once q_k^2 outgrows 10^(precision - TRUSTED_DIGITS).
    """
    if count < 1:
        raise DomainError("count must be >= 1")
    if isinstance(x, RealWeight):
        x = x.value
    exact = is_exact(x)
    x = Fraction(x) if exact else to_real(x)
    if not 0 < x < 1:
        raise DomainError("convergents expects x in (0, 1)")
    limit = 10 ** (mp.dps - TRUSTED_DIGITS)

    out = []
    p_prev, q_prev = 1, 0   # p_{-1}, q_{-1}
    p_cur, q_cur = 0, 1     # p_0, q_0 (a_0 = 0)
    rem = x
    k = 0
    while len(out) < count:
        if rem == 0:
            break
        if not exact and q_cur * q_cur > limit:
            raise PrecisionExhausted(
                f"convergent {k + 1} of x needs more than {mp.dps} digits of precision")
        y = 1 / rem
        a = math.floor(y) if exact else int(mp.floor(y))
        rem = y - a
        k += 1
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        out.append(Convergent(p_cur, q_cur, k))
    return out
