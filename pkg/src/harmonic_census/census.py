"""Exact orbit counting by recursion over stabilizer orders.

For prime N and a d-subset orbit census, write gamma_c for the number of
orbits whose stabilizer has order c (orbit size (N-1)/c) and beta_c for the
cumulative number of subsets those orbits contain, so gamma_c =
c * beta_c / (N-1).  A subset with stabilizer of order c splits into
multiplicative cosets of the order-c unit subgroup, which yields a product
formula for the number of subsets expressible in that block shape; since a
subset with a larger stabilizer of order b (c | b) is also expressible in
c-blocks, the recursion runs backwards over the divisor lattice:

    beta_c = (N-1)(N-1-c)...(N-1-(q-1)c) / (c^q q!) - sum_{c<b<N, c|b, b|t} beta_b

with t = d and q = d/c when c | d, and t = d-1, q = (d-1)/c when c | d-1
(the two cases are exclusive for c > 1).  Terms beta_b with b not dividing
N-1 are zero: no unit of order b exists, so no orbit of size (N-1)/b exists.
gamma_1 then follows from mass balance against C(N, d).

A second, independently coded recursion computes the same counts directly
at orbit level (the alpha_* functions); the two are asserted equal in the
test suite.  All arithmetic is exact (Fraction / int); any non-integral
gamma aborts loudly instead of rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ContractViolationError, DomainError
from .number_theory import PrimeModulus, divisors


def _case_target(d: int, c: int) -> int:
    """Which of d or d-1 the block recursion for c applies to."""
    if d % c == 0:
        return d
    if (d - 1) % c == 0:
        return d - 1
    raise DomainError(f"c={c} divides neither d={d} nor d-1")


def _check_beta_pre(N: int, d: int, c: int) -> None:
    if c <= 1:
        raise DomainError(f"block recursion needs c > 1, got c={c}")
    if (N - 1) % c != 0:
        raise DomainError(f"c={c} does not divide N-1={N - 1}")
    if d % c != 0 and (d - 1) % c != 0:
        raise DomainError(f"c={c} divides neither d={d} nor d-1={d - 1}")


@lru_cache(maxsize=None)
def _beta(N: int, target: int, c: int) -> Fraction:
    """Cumulative subset count over orbits of stabilizer order exactly c,
    recursing over the fixed target (d or d-1)."""
    if (N - 1) % c != 0:
        return Fraction(0)
    q = target // c
    num = 1
    for i in range(q):
        num *= N - 1 - i * c
    first = Fraction(num, c**q * math.factorial(q))
    sub = sum(
        (_beta(N, target, b) for b in range(2 * c, N, c) if target % b == 0),
        Fraction(0),
    )
    return first - sub


def beta(modulus: PrimeModulus, d: int, c: int) -> Fraction:
    """beta_c for dimension d (c > 1, c | N-1, c | d or c | d-1)."""
    N = modulus.N
    _check_beta_pre(N, d, c)
    return _beta(N, _case_target(d, c), c)


def gamma(modulus: PrimeModulus, d: int, c: int) -> int:
    """gamma_c, the number of orbits of size (N-1)/c; exact integer."""
    N = modulus.N
    if c == 1:
        total = Fraction(math.comb(N, d), N - 1)
        for cc in _nontrivial_orders(N, d):
            total -= Fraction(gamma(modulus, d, cc), cc)
        if total.denominator != 1 or total < 0:
            raise ContractViolationError(
                f"gamma_1({N},{d}) = {total} is not a nonnegative integer"
            )
        return int(total)
    value = Fraction(c) * beta(modulus, d, c) / (N - 1)
    if value.denominator != 1:
        raise ContractViolationError(f"gamma_{c}({N},{d}) = {value} is not integral")
    return int(value)


def _nontrivial_orders(N: int, d: int) -> list[int]:
    """All c > 1 with c | N-1 and (c | d or c | d-1), ascending."""
    return [
        c
        for c in divisors(N - 1)
        if c > 1 and (d % c == 0 or (d - 1) % c == 0)
    ]


@dataclass(frozen=True)
class Census:
    """Per-stabilizer-order orbit counts for one (N, d) pair.

    beta[1] is derived as gamma_1 * (N-1) so that sum_c beta_c = C(N, d).
    """

    modulus: PrimeModulus
    d: int
    beta: dict[int, Fraction]
    gamma: dict[int, int]
    total: int

    def orbit_size(self, c: int) -> int:
        return (self.modulus.N - 1) // c


def full_census(modulus: PrimeModulus, d: int) -> Census:
    """Census for all admissible stabilizer orders, with mass balance
    against C(N, d) asserted exactly."""
    N = modulus.N
    if not 1 <= d <= N:
        raise DomainError(f"need 1 <= d <= N, got d={d}, N={N}")
    orders = [1] + _nontrivial_orders(N, d)
    gammas = {c: gamma(modulus, d, c) for c in orders}
    betas = {c: beta(modulus, d, c) for c in orders if c > 1}
    betas[1] = Fraction(gammas[1] * (N - 1))
    mass = sum(Fraction(g * (N - 1), c) for c, g in gammas.items())
    if mass != math.comb(N, d):
        raise ContractViolationError(
            f"census mass {mass} != C({N},{d}) = {math.comb(N, d)}"
        )
    return Census(
        modulus=modulus,
        d=d,
        beta={c: betas[c] for c in orders},
        gamma=gammas,
        total=sum(gammas.values()),
    )


def count_harmonic_frames(modulus: PrimeModulus, d: int) -> int:
    """Number of d-subset orbits, i.e. of inequivalent harmonic frames.

    The recursion targets 1 < d < N; d = 1 has exactly two orbits ([0] and
    the orbit of any nonzero singleton) and d = N exactly one, returned as
    documented special cases (both also agree with the recursion).
    """
    N = modulus.N
    if not 1 <= d <= N:
        raise DomainError(f"need 1 <= d <= N, got d={d}, N={N}")
    if d == 1:
        return 2
    if d == N:
        return 1
    return full_census(modulus, d).total


def count_unordered_dft(modulus: PrimeModulus, d: int) -> int:
    """Number of orbits of ordered distinct d-tuples under unit scaling
    (frames counted as unordered vector sets, before unitary equivalence).

    Two closed forms exist for d >= 2, N > 2: the product
    N (N-2)(N-3)...(N-d+1) and N! / ((N-d)! (N-1)); both are computed and
    must agree.
    """
    N = modulus.N
    if not 1 <= d <= N:
        raise DomainError(f"need 1 <= d <= N, got d={d}, N={N}")
    if d == 1 or (d == 2 and N == 2):
        return 2
    product = N
    for k in range(2, d):
        product *= N - k
    ratio = math.factorial(N) // (math.factorial(N - d) * (N - 1))
    if product != ratio:
        raise ContractViolationError(
            f"ordered-count forms disagree: {product} vs {ratio}"
        )
    return product


def growth_ratio(modulus: PrimeModulus, d: int) -> float:
    """count / (N^(d-1) / d!), the orbit count against its leading-order
    growth term.  Approaches 1 from below as N grows at fixed d."""
    N = modulus.N
    if not 1 < d < N:
        raise DomainError(f"growth diagnostic needs 1 < d < N, got d={d}, N={N}")
    count = count_harmonic_frames(modulus, d)
    return float(Fraction(count * math.factorial(d), N ** (d - 1)))


# -- independent orbit-level recursion ---------------------------------------


@lru_cache(maxsize=None)
def _alpha(N: int, target: int, c: int) -> Fraction:
    if (N - 1) % c != 0:
        return Fraction(0)
    q = target // c
    num = 1
    for i in range(1, q):
        num *= N - 1 - i * c
    first = Fraction(num, c ** (q - 1) * math.factorial(q))
    sub = sum(
        (
            Fraction(N - 1, b) * _alpha(N, target, b)
            for b in range(2 * c, N, c)
            if target % b == 0
        ),
        Fraction(0),
    )
    return first - Fraction(c, N - 1) * sub


def alpha(modulus: PrimeModulus, d: int, c: int) -> Fraction:
    """The orbit-count recursion coded independently of beta/gamma.

    For c > 1 it counts orbits of stabilizer order c directly; alpha(1)
    balances against C(N, d).  Defined for d >= 2 (the c > 1 cases need at
    least one block).  Asserting alpha_c == gamma_c is part of the test
    contract, not of this function.
    """
    N = modulus.N
    if d < 2:
        raise DomainError(f"alpha recursion needs d >= 2, got d={d}")
    if c == 1:
        total = Fraction(math.comb(N, d), N - 1)
        for cc in _nontrivial_orders(N, d):
            total -= alpha(modulus, d, cc) / cc
        return total
    _check_beta_pre(N, d, c)
    return _alpha(N, _case_target(d, c), c)


def count_harmonic_frames_alpha(modulus: PrimeModulus, d: int) -> Fraction:
    """Total orbit count summed from the alpha recursion (1 < d < N)."""
    N = modulus.N
    if not 1 < d < N:
        raise DomainError(f"alpha total needs 1 < d < N, got d={d}, N={N}")
    return alpha(modulus, d, 1) + sum(
        (alpha(modulus, d, c) for c in _nontrivial_orders(N, d)), Fraction(0)
    )
