"""The unit-group action on unordered d-subsets of Z_N.

A generator set is an unordered d-subset [n_1, ..., n_d] of Z_N, stored as a
strictly increasing tuple.  The unit group Z_N^x acts by coordinatewise
multiplication, m . [n] = [m n_1, ..., m n_d], and the orbits of this action
are exactly the unitary-equivalence classes of the frames built in
`frames`.  Each orbit has size (N-1)/c where c is the order of the
stabilizer, c divides d or d-1, and the stabilized sets decompose into
multiplicative cosets of the order-c subgroup of units (an optional 0 rides
along untouched).

Orbit enumeration streams all C(N, d) sorted subsets in lexicographic order
and keeps a subset exactly when it is the lexicographic minimum of its own
orbit, so no visited-set memory is needed and the output order is forced.
The hot loop is vectorized: a subset S is encoded as the integer
key(S) = sum_{x in S} 2^(N-1-x), and for fixed d comparing keys is
equivalent to comparing sorted tuples lexicographically (larger key means
lexicographically smaller tuple; ties mean equal sets).  That turns the
canonical-representative test into a handful of numpy passes per unit m.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Iterator

import numpy as np

from .errors import BudgetExceededError, ContractViolationError, DomainError
from .number_theory import PrimeModulus, find_primitive_root, multiplicative_order

DEFAULT_MAX_SUBSETS = 10**7

_CHUNK_ROWS = 1 << 16


@dataclass(frozen=True)
class GeneratorSet:
    """An unordered d-subset of Z_N, held sorted ascending.

    Input elements are reduced mod N and must be distinct after reduction.
    """

    modulus: PrimeModulus
    elems: tuple[int, ...]

    def __post_init__(self):
        N = self.modulus.N
        reduced = tuple(sorted(e % N for e in self.elems))
        if len(set(reduced)) != len(reduced):
            raise DomainError(f"generator elements not distinct mod {N}: {self.elems}")
        if not 1 <= len(reduced) <= N:
            raise DomainError(f"need 1 <= d <= N, got d={len(reduced)}, N={N}")
        object.__setattr__(self, "elems", reduced)

    @property
    def d(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __repr__(self) -> str:
        return f"GeneratorSet(N={self.modulus.N}, {list(self.elems)})"


def act(m: int, s: GeneratorSet) -> GeneratorSet:
    """m . [n] = [m n_1, ..., m n_d], re-sorted."""
    N = s.modulus.N
    if m % N == 0:
        raise DomainError(f"{m} is not a unit mod {N}")
    return GeneratorSet(s.modulus, tuple((m * x) % N for x in s.elems))


def stabilizer(s: GeneratorSet) -> tuple[int, ...]:
    """All units fixing s as a set; always contains 1."""
    N = s.modulus.N
    base = set(s.elems)
    return tuple(
        m for m in range(1, N) if all((m * x) % N in base for x in s.elems)
    )


def canonical_rep(s: GeneratorSet) -> GeneratorSet:
    """Lexicographically smallest member of the orbit of s."""
    N = s.modulus.N
    best = s.elems
    for m in range(2, N):
        img = tuple(sorted((m * x) % N for x in s.elems))
        if img < best:
            best = img
    return GeneratorSet(s.modulus, best)


@dataclass(frozen=True)
class OrbitRecord:
    """One orbit: canonical representative, size (N-1)/c, stabilizer."""

    rep: GeneratorSet
    size: int
    stab_order: int
    stabilizer: tuple[int, ...]


KIND_BLOCKS = "blocks_divide_d"
KIND_ZERO_BLOCKS = "zero_plus_blocks_divide_d_minus_1"


@dataclass(frozen=True)
class StructuredForm:
    """Decomposition of a generator set into multiplicative coset blocks.

    Expanding each leader x against the order-c subgroup of units (plus 0
    for the second kind) reproduces the set exactly.
    """

    modulus: PrimeModulus
    kind: str
    c: int
    block_leaders: tuple[int, ...]

    def expand(self) -> GeneratorSet:
        H = unit_subgroup(self.modulus, self.c)
        N = self.modulus.N
        elems = [(x * h) % N for x in self.block_leaders for h in H]
        if self.kind == KIND_ZERO_BLOCKS:
            elems.append(0)
        return GeneratorSet(self.modulus, tuple(elems))


def unit_subgroup(modulus: PrimeModulus, c: int) -> tuple[int, ...]:
    """The unique subgroup of Z_N^x of order c (requires c | N-1), sorted."""
    N = modulus.N
    if c < 1 or (N - 1) % c != 0:
        raise DomainError(f"no subgroup of order {c} in a group of order {N - 1}")
    g = find_primitive_root(modulus).g
    h = pow(g, (N - 1) // c, N)
    return tuple(sorted(pow(h, j, N) for j in range(c)))


def coset_blocks(s: GeneratorSet, c: int) -> tuple[int, ...]:
    """Partition the nonzero elements of s into cosets of the order-c unit
    subgroup, returning the smallest member of each coset.  Valid whenever
    c divides the stabilizer order of s."""
    N = s.modulus.N
    H = unit_subgroup(s.modulus, c)
    remaining = set(x for x in s.elems if x != 0)
    leaders = []
    while remaining:
        x = min(remaining)
        coset = {(x * h) % N for h in H}
        if not coset <= remaining:
            raise ContractViolationError(
                f"elements of {s} do not split into cosets of order {c}"
            )
        leaders.append(x)
        remaining -= coset
    return tuple(leaders)


def structured_form(s: GeneratorSet) -> StructuredForm:
    """Write s in block form: the stabilizer has some order c, and the
    nonzero elements are a disjoint union of c-element cosets (with 0 kept
    aside when present)."""
    c = len(stabilizer(s))
    has_zero = 0 in s.elems
    kind = KIND_ZERO_BLOCKS if has_zero else KIND_BLOCKS
    nonzero_count = s.d - (1 if has_zero else 0)
    if nonzero_count % c != 0:
        raise ContractViolationError(
            f"stabilizer order {c} does not divide the nonzero count of {s}"
        )
    leaders = coset_blocks(s, c)
    form = StructuredForm(s.modulus, kind, c, leaders)
    if form.expand() != s:
        raise ContractViolationError(f"block expansion does not reproduce {s}")
    return form


def primitive_root_independence_check(
    modulus: PrimeModulus, c: int, n1: int, g1: int, g2: int
) -> bool:
    """Whether the coset {n1 * g^(j(N-1)/c)} is the same for both primitive
    roots g1 and g2.  Always true: either subgroup of order c is the full
    solution set of x^c = 1."""
    N = modulus.N
    if (N - 1) % c != 0:
        raise DomainError(f"{c} does not divide N-1 = {N - 1}")
    if n1 % N == 0:
        raise DomainError("n1 must be nonzero mod N")
    for g in (g1, g2):
        if multiplicative_order(g, modulus) != N - 1:
            raise DomainError(f"{g} is not a primitive root mod {N}")
    step = (N - 1) // c
    set1 = {(n1 * pow(g1, j * step, N)) % N for j in range(c)}
    set2 = {(n1 * pow(g2, j * step, N)) % N for j in range(c)}
    return set1 == set2


# -- brute-force orbit enumeration ------------------------------------------


def _subset_chunks(N: int, d: int, chunk_rows: int) -> Iterator[np.ndarray]:
    total = math.comb(N, d)
    flat = chain.from_iterable(combinations(range(N), d))
    remaining = total
    while remaining:
        rows = min(chunk_rows, remaining)
        yield np.fromiter(flat, dtype=np.int64, count=rows * d).reshape(rows, d)
        remaining -= rows


def _keys(subsets: np.ndarray, N: int) -> np.ndarray:
    return np.bitwise_or.reduce(
        np.left_shift(np.int64(1), (N - 1) - subsets), axis=1
    )


def _scan_chunk(subsets: np.ndarray, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Return (reps, stab_mask): the rows that are canonical representatives
    and, for those rows, a boolean (len, N) matrix of stabilizing units."""
    key0 = _keys(subsets, N)
    is_rep = np.ones(len(subsets), dtype=bool)
    for m in range(2, N):
        km = _keys((subsets * m) % N, N)
        is_rep &= km <= key0
    reps = subsets[is_rep]
    stab = np.zeros((len(reps), N), dtype=bool)
    stab[:, 1] = True
    rkey0 = key0[is_rep]
    for m in range(2, N):
        stab[:, m] = _keys((reps * m) % N, N) == rkey0
    return reps, stab


def _records_from(reps: np.ndarray, stab: np.ndarray, modulus: PrimeModulus) -> list[OrbitRecord]:
    N = modulus.N
    out = []
    for row, mask in zip(reps.tolist(), stab):
        members = tuple(int(m) for m in np.nonzero(mask)[0])
        c = len(members)
        if (N - 1) % c != 0:
            raise ContractViolationError(f"stabilizer order {c} does not divide {N - 1}")
        out.append(
            OrbitRecord(
                rep=GeneratorSet(modulus, tuple(row)),
                size=(N - 1) // c,
                stab_order=c,
                stabilizer=members,
            )
        )
    return out


def enumerate_orbits(
    modulus: PrimeModulus,
    d: int,
    *,
    max_subsets: int | None = None,
    threads: int | None = None,
) -> list[OrbitRecord]:
    """All orbits of unordered d-subsets under the unit-group action, sorted
    by representative.  Streams the C(N, d) subsets in chunks; chunks may be
    processed by a thread pool, with results merged back in stream order so
    the output is identical for any worker count."""
    N = modulus.N
    if not 1 <= d <= N:
        raise DomainError(f"need 1 <= d <= N, got d={d}, N={N}")
    budget = DEFAULT_MAX_SUBSETS if max_subsets is None else max_subsets
    total = math.comb(N, d)
    if total > budget:
        raise BudgetExceededError(
            f"C({N},{d}) = {total} subsets exceeds budget {budget}",
            required=total,
            budget=budget,
        )
    workers = (os.cpu_count() or 1) if threads is None else max(1, threads)
    chunks = _subset_chunks(N, d, _CHUNK_ROWS)

    records: list[OrbitRecord] = []
    if workers == 1 or total <= _CHUNK_ROWS:
        for chunk in chunks:
            records.extend(_records_from(*_scan_chunk(chunk, N), modulus))
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            pending = []
            for chunk in chunks:
                pending.append(pool.submit(_scan_chunk, chunk, N))
                if len(pending) >= 2 * workers:
                    reps, stab = pending.pop(0).result()
                    records.extend(_records_from(reps, stab, modulus))
            for fut in pending:
                reps, stab = fut.result()
                records.extend(_records_from(reps, stab, modulus))

    covered = sum(r.size for r in records)
    if covered != total:
        raise ContractViolationError(
            f"orbit sizes sum to {covered}, expected C({N},{d}) = {total}"
        )
    return records
