"""Structural audit of the coset partition behind the threshold sequence.

Eight facts are checked per pair: the quotient map is a surjective
homomorphism with the stated kernel and image; the units split into q cosets
of equal size; multiplication translates cosets; reductions of a coset modulo
p, q, pq and q^2 hit prescribed multisets; and the coset polynomials satisfy
exact congruences modulo cyclotomic polynomials.  The congruences stand in for
evaluation at primitive roots of unity in an extension field: agreement modulo
the n-th cyclotomic polynomial is equivalent to agreement at every primitive
n-th root, and stays in plain GF(2)[x] arithmetic.

Set-level checks run exhaustively below EXHAUSTIVE_LIMIT elements; above that
the quadratic product grids are sampled with a fixed, configurable seed, and
everything linear stays exhaustive.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InternalConsistencyError
from .eulerq import EulerQuotientTable, build_table, coset_index, derive_generators
from .gf2poly import cyclotomic_f2
from .lincomp import wieferich_ok
from .ntcore import GroupGenerators, PrimePair

EXHAUSTIVE_LIMIT = 10_000   # full product grids for periods up to this
SAMPLE_COUNT = 10_000       # random pairs checked above the limit
DEFAULT_SEED = 1729

_CHECK_NAMES = ("lemma2", "lemma3", "lemma4", "lemma5", "lemma6", "lemma7", "lemma8", "lemma9")


@dataclass(frozen=True)
class CosetPartition:
    """The q cosets D_0..D_{q-1} of units plus the non-unit positions P."""

    pair: PrimePair
    cosets: tuple[frozenset[int], ...]
    non_units: frozenset[int]

    @property
    def units_count(self) -> int:
        return sum(len(c) for c in self.cosets)


def build_partition(pair: PrimePair, table: EulerQuotientTable | None = None) -> CosetPartition:
    """Populate the partition from the coset index over one full period."""
    pair.require_divides()
    if table is None:
        table = build_table(pair)
    p, q = pair.p, pair.q
    pq = p * q
    cosets: list[set[int]] = [set() for _ in range(q)]
    non_units: set[int] = set()
    for t, value in enumerate(table.values):
        if math.gcd(t, pq) == 1:
            if value % p != 0:
                raise InternalConsistencyError(
                    f"psi({t}) = {value} not divisible by p={p}"
                )
            cosets[value // p].add(t)
        else:
            non_units.add(t)
    return CosetPartition(
        pair=pair,
        cosets=tuple(frozenset(c) for c in cosets),
        non_units=frozenset(non_units),
    )


def two_coset_index(pair: PrimePair) -> int:
    """The coset index sigma of 2; guaranteed nonzero under the hypotheses."""
    pair.require_divides()
    if not wieferich_ok(pair.q):
        raise DomainError(
            f"two_coset_index requires 2^(q-1) != 1 mod q^2; fails for q={pair.q}"
        )
    sigma = coset_index(2, pair)
    if sigma == 0:
        raise InternalConsistencyError(
            f"2 lies in the kernel coset for {(pair.p, pair.q)}, contradicting "
            "2^(q-1) != 1 mod q^2"
        )
    assert sigma is not None
    return sigma


# ---------------------------------------------------------------------------
# internal granular checks; each returns a list of failure messages


def _coset_arrays(partition: CosetPartition) -> tuple[np.ndarray, np.ndarray]:
    """(units sorted ascending, index lookup over [0, period)) as int64 arrays."""
    n = partition.pair.period
    idx = np.full(n, -1, dtype=np.int64)
    for ell, coset in enumerate(partition.cosets):
        idx[np.fromiter(coset, dtype=np.int64)] = ell
    units = np.flatnonzero(idx >= 0).astype(np.int64)
    return units, idx


def _check_partition_shape(pair: PrimePair, partition: CosetPartition) -> list[str]:
    problems = []
    expected = pair.phi_pq
    for ell, coset in enumerate(partition.cosets):
        if len(coset) != expected:
            problems.append(f"|D_{ell}| = {len(coset)}, expected {expected}")
    covered = set().union(*partition.cosets) | partition.non_units
    if len(covered) != pair.period or partition.units_count + len(partition.non_units) != pair.period:
        problems.append("cosets and non-units do not partition the period")
    expected_p = pair.period - pair.q * pair.phi_pq
    if len(partition.non_units) != expected_p:
        problems.append(f"|P| = {len(partition.non_units)}, expected {expected_p}")
    return problems


def _check_ghat_law(pair: PrimePair, gens: GroupGenerators, partition: CosetPartition) -> list[str]:
    problems = []
    n = pair.period
    d0 = partition.cosets[0]
    shifted = d0
    for ell in range(1, pair.q):
        shifted = {gens.ghat * t % n for t in shifted}
        if shifted != partition.cosets[ell]:
            problems.append(f"ghat^{ell} * D_0 != D_{ell}")
    return problems


def _check_kernel_image(
    pair: PrimePair,
    gens: GroupGenerators,
    partition: CosetPartition,
    table: EulerQuotientTable,
    rng: np.random.Generator,
) -> list[str]:
    problems = []
    n, p, q = pair.period, pair.p, pair.q

    # kernel: the subgroup generated by g^q and h equals D_0
    gq = pow(gens.g, q, n)
    kernel = set()
    x = 1
    for _ in range(pair.e):
        y = x
        for _ in range(pair.d):
            kernel.add(y)
            y = y * gens.h % n
        x = x * gq % n
    if kernel != partition.cosets[0]:
        problems.append(
            f"subgroup <g^q, h> has {len(kernel)} elements and differs from D_0"
        )

    # image over units is exactly {0, p, 2p, ..., (q-1)p}
    pq = p * q
    image = {v for t, v in enumerate(table.values) if math.gcd(t, pq) == 1}
    if image != {p * ell for ell in range(q)}:
        problems.append(f"image of the quotient map is {sorted(image)}")

    # additivity of the coset index over products
    units, idx = _coset_arrays(partition)
    if n <= EXHAUSTIVE_LIMIT:
        step = max(1, (1 << 22) // max(len(units), 1))
        for lo in range(0, len(units), step):
            chunk = units[lo:lo + step]
            prod = chunk[:, None] * units[None, :] % n
            want = (idx[chunk][:, None] + idx[units][None, :]) % q
            if not np.array_equal(idx[prod], want):
                problems.append("index additivity fails on the full product grid")
                break
    else:
        u = units[rng.integers(0, len(units), size=SAMPLE_COUNT)]
        v = units[rng.integers(0, len(units), size=SAMPLE_COUNT)]
        if not np.array_equal(idx[u * v % n], (idx[u] + idx[v]) % q):
            problems.append("index additivity fails on sampled products")
    return problems


def _check_translation(
    pair: PrimePair,
    partition: CosetPartition,
    rng: np.random.Generator,
) -> list[str]:
    # u in D_j maps D_i onto D_{i+j}: index additivity over u*v plus equal
    # cardinalities gives the set equality, since multiplication by a unit is
    # injective.
    problems = []
    n, q = pair.period, pair.q
    units, idx = _coset_arrays(partition)
    if n <= EXHAUSTIVE_LIMIT:
        for j in range(q):
            dj = np.fromiter(partition.cosets[j], dtype=np.int64)
            prod = dj[:, None] * units[None, :] % n
            want = (j + idx[units][None, :]) % q
            if not np.array_equal(idx[prod], np.broadcast_to(want, prod.shape)):
                problems.append(f"translation by D_{j} leaves its target coset")
    else:
        u = units[rng.integers(0, len(units), size=SAMPLE_COUNT)]
        v = units[rng.integers(0, len(units), size=SAMPLE_COUNT)]
        if not np.array_equal(idx[u * v % n], (idx[u] + idx[v]) % q):
            problems.append("translation fails on sampled products")
        # a few full set translations as well
        for _ in range(8):
            u0 = int(units[rng.integers(0, len(units))])
            i = int(rng.integers(0, q))
            j = int(idx[u0])
            image = {u0 * v % n for v in partition.cosets[i]}
            if image != partition.cosets[(i + j) % q]:
                problems.append(f"{u0} * D_{i} != D_{(i + j) % q}")
    return problems


def _check_residue_multisets(
    pair: PrimePair,
    gens: GroupGenerators,
    partition: CosetPartition,
) -> dict[str, list[str]]:
    p, q = pair.p, pair.q
    pq, q2 = p * q, q * q
    out: dict[str, list[str]] = {"lemma5": [], "lemma6": [], "lemma7": []}

    frak_g = gens.g % q2
    frak_ghat = gens.ghat % q2
    subgroup = []
    x = 1
    gq = pow(frak_g, q, q2)
    for _ in range(q - 1):
        subgroup.append(x)
        x = x * gq % q2

    units_pq = sorted(t for t in range(pq) if math.gcd(t, pq) == 1)

    for ell, coset in enumerate(partition.cosets):
        mod_p = Counter(u % p for u in coset)
        if mod_p != {r: q - 1 for r in range(1, p)}:
            out["lemma5"].append(f"D_{ell} mod p multiset wrong: {dict(mod_p)}")
        mod_q = Counter(u % q for u in coset)
        if mod_q != {r: p - 1 for r in range(1, q)}:
            out["lemma5"].append(f"D_{ell} mod q multiset wrong")
        if sorted(u % pq for u in coset) != units_pq:
            out["lemma6"].append(f"D_{ell} mod pq is not a bijection onto the units")
        coset_q2 = Counter(u % q2 for u in coset)
        target = Counter()
        shift = pow(frak_ghat, ell, q2)
        for s in subgroup:
            target[shift * s % q2] = p - 1
        if coset_q2 != target:
            out["lemma7"].append(f"D_{ell} mod q^2 multiset wrong")
    return out


def _residue_pass(n: int, modulus_bits: int, idx: list[int], buckets: int) -> list[int]:
    """Reduce sum_{t in bucket} x^t mod the modulus, one linear sweep.

    Maintains x^t mod f incrementally (shift, conditional XOR), so huge
    exponents never materialize as dense polynomials.
    """
    acc = [0] * buckets
    deg = modulus_bits.bit_length() - 1
    r = 1
    for t in range(n):
        i = idx[t]
        if i >= 0:
            acc[i] ^= r
        r <<= 1
        if (r >> deg) & 1:
            r ^= modulus_bits
    return acc


def _check_congruences(pair: PrimePair, partition: CosetPartition) -> dict[str, list[str]]:
    p, q, n = pair.p, pair.q, pair.period
    out: dict[str, list[str]] = {"lemma8": [], "lemma9": []}

    idx = [-1] * n
    for ell, coset in enumerate(partition.cosets):
        for t in coset:
            idx[t] = ell

    acc_by_modulus: dict[str, list[int]] = {}
    per_coset_expect = {"pq": 1, "p": 0, "q": 0, "q2": 0}
    moduli = {
        "pq": cyclotomic_f2(p * q).bits,
        "p": cyclotomic_f2(p).bits,
        "q": cyclotomic_f2(q).bits,
        "q2": cyclotomic_f2(q * q).bits,
    }
    for name, bits in moduli.items():
        acc = _residue_pass(n, bits, idx, q)
        acc_by_modulus[name] = acc
        expect = per_coset_expect[name]
        bad = [ell for ell, r in enumerate(acc) if r != expect]
        if bad:
            out["lemma8"].append(
                f"coset polynomial(s) {bad} are not {expect} modulo the {name} cyclotomic"
            )

    # the sum over all cosets: 1 modulo the pq cyclotomic, 0 modulo the rest
    sum_expect = {"pq": 1, "p": 0, "q": 0, "q2": 0}
    for name, acc in acc_by_modulus.items():
        total = 0
        for r in acc:
            total ^= r
        if total != sum_expect[name]:
            out["lemma9"].append(f"summed coset polynomial is not {sum_expect[name]} mod {name}")
    total_pq2 = 0
    for r in _residue_pass(n, cyclotomic_f2(n).bits, idx, q):
        total_pq2 ^= r
    if total_pq2 != 0:
        out["lemma9"].append("summed coset polynomial is nonzero mod the pq^2 cyclotomic")
    return out


# ---------------------------------------------------------------------------
# public check operations


def check_kernel_image(
    pair: PrimePair,
    gens: GroupGenerators,
    partition: CosetPartition,
    table: EulerQuotientTable | None = None,
    seed: int = DEFAULT_SEED,
) -> tuple[bool, list[str]]:
    """Kernel equals <g^q, h>, image is the multiples of p, index is additive."""
    if table is None:
        table = build_table(pair)
    problems = _check_kernel_image(pair, gens, partition, table, np.random.default_rng(seed))
    return not problems, problems


def check_translation(
    pair: PrimePair,
    partition: CosetPartition,
    gens: GroupGenerators | None = None,
    seed: int = DEFAULT_SEED,
) -> tuple[bool, list[str]]:
    """uD_i = D_{i+j} for u in D_j, and D_ell = ghat^ell * D_0."""
    if gens is None:
        gens = derive_generators(pair)
    problems = _check_translation(pair, partition, np.random.default_rng(seed))
    problems += _check_ghat_law(pair, gens, partition)
    return not problems, problems


def check_residue_multisets(
    pair: PrimePair,
    partition: CosetPartition,
    gens: GroupGenerators | None = None,
) -> tuple[bool, list[str]]:
    """Coset reductions mod p, q, pq and q^2 hit the prescribed multisets."""
    if gens is None:
        gens = derive_generators(pair)
    per = _check_residue_multisets(pair, gens, partition)
    problems = per["lemma5"] + per["lemma6"] + per["lemma7"]
    return not problems, problems


def check_congruences(pair: PrimePair, partition: CosetPartition) -> tuple[bool, list[str]]:
    """Coset polynomials are 1 mod the pq cyclotomic and 0 mod the p, q, q^2 ones."""
    per = _check_congruences(pair, partition)
    problems = per["lemma8"] + per["lemma9"]
    return not problems, problems


@dataclass(frozen=True)
class StructureReport:
    """Aggregated verdict of the eight structural checks for one pair."""

    pair: tuple[int, int]
    lemma2_ok: bool
    lemma3_ok: bool
    lemma4_ok: bool
    lemma5_ok: bool
    lemma6_ok: bool
    lemma7_ok: bool
    lemma8_ok: bool
    lemma9_ok: bool
    sigma: int
    details: dict[str, str]

    @property
    def all_ok(self) -> bool:
        return all(
            getattr(self, f"{name}_ok") for name in _CHECK_NAMES
        )

    def to_json_dict(self) -> dict:
        out: dict = {"pair": list(self.pair)}
        for name in _CHECK_NAMES:
            out[f"{name}_ok"] = getattr(self, f"{name}_ok")
        out["sigma"] = self.sigma
        out["details"] = dict(self.details)
        return out

    def format_table(self) -> str:
        lines = [f"structure audit for p={self.pair[0]}, q={self.pair[1]} (sigma={self.sigma})"]
        for name in _CHECK_NAMES:
            ok = getattr(self, f"{name}_ok")
            status = "ok" if ok else "FAIL"
            note = "" if ok else f"  {self.details.get(name, '')}"
            lines.append(f"  {name:<8} {status}{note}")
        return "\n".join(lines)


def audit_structure(pair: PrimePair, seed: int = DEFAULT_SEED) -> StructureReport:
    """Run all eight structural checks for one pair and collect the verdict."""
    pair.require_divides()
    table = build_table(pair)
    partition = build_partition(pair, table=table)
    gens = derive_generators(pair)
    rng = np.random.default_rng(seed)

    failures: dict[str, list[str]] = {name: [] for name in _CHECK_NAMES}
    failures["lemma2"] = _check_kernel_image(pair, gens, partition, table, rng)
    failures["lemma3"] = _check_partition_shape(pair, partition) + _check_ghat_law(pair, gens, partition)
    failures["lemma4"] = _check_translation(pair, partition, rng)
    residues = _check_residue_multisets(pair, gens, partition)
    failures["lemma5"] = residues["lemma5"]
    failures["lemma6"] = residues["lemma6"]
    failures["lemma7"] = residues["lemma7"]
    congruences = _check_congruences(pair, partition)
    failures["lemma8"] = congruences["lemma8"]
    failures["lemma9"] = congruences["lemma9"]

    sigma = coset_index(2, pair)
    assert sigma is not None  # 2 is a unit for odd p, q
    if wieferich_ok(pair.q):
        sigma = two_coset_index(pair)

    flags = {f"{name}_ok": not failures[name] for name in _CHECK_NAMES}
    details = {name: "; ".join(msgs) for name, msgs in failures.items() if msgs}
    return StructureReport(
        pair=(pair.p, pair.q), sigma=sigma, details=details, **flags
    )
