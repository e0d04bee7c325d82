"""Euler quotients modulo pq and the coset index they induce.

For t coprime to pq the quotient is psi(t) = ((t^phi(pq) - 1) / pq) mod pq,
extended by psi(t) = 0 for the remaining t.  The huge power is never formed:
t^phi(pq) mod (pq)^2 determines the quotient mod pq exactly, because
t^phi(pq) - 1 is divisible by pq for units.

When p | q-1 every unit's quotient is divisible by p, and ell = psi(t)/p
partitions the units of Z_{pq^2} into q cosets; that index drives both the
sequence definition and the structural checks elsewhere in the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import DomainError, InternalConsistencyError, ResourceError
from .limits import max_period
from .ntcore import GroupGenerators, PrimePair, crt_lift, find_common_primitive_root, pow_wide_mod


def euler_quotient(t: int, pair: PrimePair) -> int:
    """psi(t) as the canonical representative in [0, pq); 0 for non-units."""
    if t < 0:
        raise DomainError(f"t must be nonnegative, got {t}")
    pq = pair.p * pair.q
    if math.gcd(t, pq) != 1:
        return 0
    wide = pq * pq
    power = pow_wide_mod(t, pair.phi_pq, wide)
    if (power - 1) % pq != 0:
        raise InternalConsistencyError(
            f"t^phi - 1 not divisible by pq for unit t={t}"
        )
    return ((power - 1) // pq) % pq


def coset_index(t: int, pair: PrimePair) -> int | None:
    """Index ell in [0, q) with psi(t) == p*ell, or None when t is not a unit.

    Defined only under p | q-1, which forces p | psi(t) for every unit.
    """
    pair.require_divides()
    pq = pair.p * pair.q
    if math.gcd(t, pq) != 1:
        return None
    value = euler_quotient(t, pair)
    if value % pair.p != 0:
        raise InternalConsistencyError(
            f"psi({t}) = {value} is not divisible by p={pair.p}"
        )
    return value // pair.p


def _ghat_from_g(pair: PrimePair, g: int) -> int:
    # psi(g) = p*a mod pq with a invertible mod q; ghat = g^(a^-1 mod q)
    p, q = pair.p, pair.q
    psi_g = euler_quotient(g, pair)
    if psi_g % p != 0:
        raise InternalConsistencyError(f"psi(g) = {psi_g} not divisible by p")
    a = (psi_g // p) % q
    if a == 0:
        raise InternalConsistencyError("psi(g)/p vanishes mod q for a primitive root g")
    b = pow(a, -1, q)
    ghat = pow(g, b, pair.period)
    if euler_quotient(ghat, pair) != p:
        raise InternalConsistencyError("constructed ghat does not satisfy psi(ghat) == p")
    return ghat


def find_ghat(pair: PrimePair, gens: GroupGenerators) -> int:
    """The distinguished unit ghat = g^b with psi(ghat) == p."""
    pair.require_divides()
    return _ghat_from_g(pair, gens.g)


def derive_generators(pair: PrimePair) -> GroupGenerators:
    """Compute (g, h, ghat) for a pair with p | q-1."""
    pair.require_divides()
    g = find_common_primitive_root(pair)
    h = crt_lift([(g % pair.p, pair.p), (1, pair.q * pair.q)])
    gens = GroupGenerators(g=g, h=h, ghat=0)
    return replace(gens, ghat=find_ghat(pair, gens))


@dataclass(frozen=True)
class EulerQuotientTable:
    """psi over one full period [0, pq^2); entry t is 0 for non-units."""

    pair: PrimePair
    values: list[int]


def build_table(pair: PrimePair) -> EulerQuotientTable:
    """Memoize psi(t) for every t in [0, pq^2)."""
    budget = max_period()
    if pair.period > budget:
        raise ResourceError(
            f"period {pair.period} exceeds budget {budget} (EQSEQ_MAX_PERIOD)"
        )
    p, q = pair.p, pair.q
    pq = p * q
    wide = pq * pq
    phi = pair.phi_pq
    values = [0] * pair.period
    for t in range(pair.period):
        if math.gcd(t, pq) == 1:
            power = pow(t, phi, wide)
            values[t] = ((power - 1) // pq) % pq
    return EulerQuotientTable(pair=pair, values=values)
