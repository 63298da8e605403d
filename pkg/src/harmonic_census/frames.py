"""Frame matrices built from generator sets, and their exact verification.

A generator set [n_1, ..., n_d] in Z_N selects d rows of the N x N
character table of Z_N; reading off columns gives N vectors
phi_m = (1/sqrt(d)) (w^(m n_1), ..., w^(m n_d)),  m = 0, ..., N-1,
which always form a unit-norm tight frame for C^d with frame bound N/d.

Everything exact is done on the UNSCALED matrix Phi with entries w^(m n_k):
the tight-frame identity becomes Phi Phi^* = N I_d entrywise in Z[w], which
is decidable, while the 1/sqrt(d) factor is irrational and therefore kept as
a symbolic tag, applied only in floating-point exports.

The Gram matrix Phi^* Phi is circulant with entries
(1/d) sum_l w^(n_l (k-j)); each diagonal carries the difference label
sorted((k-j) . [n]), and two entries are equal exactly when their labels
coincide (sums of fewer than N roots of unity separate multisets).  That
label structure is what the symmetry search consumes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .cyclotomic import (
    CyclotomicInt,
    ScaledCyclotomic,
    canonicalize_array,
    exponent_counts,
    root_power,
)
from .errors import ContractViolationError, DomainError
from .orbits import GeneratorSet

NORMALIZATION_TAG = "1/sqrt(d)"


class FrameMatrix:
    """The d x N unscaled frame matrix; entry (k, m) is w^(m n_k).

    Exponents are stored as a read-only integer matrix; cyclotomic entries
    are materialized on demand.  Rows are indexed by generator position
    (generators sorted ascending), columns by m = 0, ..., N-1.
    """

    normalization = NORMALIZATION_TAG

    def __init__(self, generators: GeneratorSet):
        self.generators = generators
        self.modulus = generators.modulus
        N = self.modulus.N
        gens = np.array(generators.elems, dtype=np.int64)
        exps = np.outer(gens, np.arange(N, dtype=np.int64)) % N
        exps.setflags(write=False)
        self.exponents = exps

    @property
    def d(self) -> int:
        return self.generators.d

    @property
    def N(self) -> int:
        return self.modulus.N

    def entry(self, k: int, m: int) -> CyclotomicInt:
        return root_power(self.modulus, int(self.exponents[k, m]))

    def column_exponents(self, m: int) -> tuple[int, ...]:
        return tuple(int(e) for e in self.exponents[:, m])

    def __repr__(self) -> str:
        return f"FrameMatrix(N={self.N}, generators={list(self.generators.elems)})"


def build_frame(s: GeneratorSet) -> FrameMatrix:
    return FrameMatrix(s)


@dataclass(frozen=True)
class FuntfReport:
    """Outcome of the exact tight-frame verification.

    unit_norm: every unscaled column has squared norm exactly d.
    tight: Phi Phi^* = N I_d entrywise in Z[w].
    frame_bound: the implied bound N/d, exact.
    """

    unit_norm: bool
    tight: bool
    frame_bound: Fraction

    @property
    def ok(self) -> bool:
        return self.unit_norm and self.tight


def verify_funtf(f: FrameMatrix) -> FuntfReport:
    """Check the tight-frame identities in exact cyclotomic arithmetic.

    A False anywhere signals an implementation bug, never a property of the
    input: every generator set yields a tight frame.
    """
    N, d = f.N, f.d
    E = f.exponents

    # column squared norms: sum_k w^(m n_k) * conj(w^(m n_k)), conj(w^e) = w^(-e)
    col_exps = (E + (-E) % N).T % N  # (N, d)
    col_coeffs = exponent_counts(col_exps, N)
    want_norm = np.zeros((N, N), dtype=np.int64)
    want_norm[:, 0] = d
    unit_norm = bool(np.array_equal(col_coeffs, canonicalize_array(want_norm)))

    # row Gram: (Phi Phi^*)[k, l] = sum_m w^(m (n_k - n_l))
    gens = np.array(f.generators.elems, dtype=np.int64)
    diff = (gens[:, None] - gens[None, :]) % N  # (d, d)
    exps = (diff[:, :, None] * np.arange(N, dtype=np.int64)) % N  # (d, d, N)
    coeffs = exponent_counts(exps, N)
    expected = np.zeros((d, d, N), dtype=np.int64)
    expected[np.arange(d), np.arange(d), 0] = N
    tight = bool(np.array_equal(coeffs, canonicalize_array(expected)))

    return FuntfReport(unit_norm=unit_norm, tight=tight, frame_bound=Fraction(N, d))


class GramMatrix:
    """Circulant Gram matrix of a frame, exact entries plus difference labels.

    entry(j, k) = (1/d) sum_l w^(n_l (k-j)) and label(j, k) is the sorted
    tuple of (k-j) . [n]; the all-zeros label marks the diagonal.  Entries
    are stored once per difference, which is what makes the matrix circulant
    by construction; the constructor re-derives every entry from the column
    inner products and checks the equal-entry/equal-label criterion, so the
    stored form is verified rather than assumed.
    """

    def __init__(self, frame: FrameMatrix):
        self.generators = frame.generators
        self.modulus = frame.modulus
        N, d = frame.N, frame.d
        gens = np.array(frame.generators.elems, dtype=np.int64)
        t = np.arange(N, dtype=np.int64)

        diff_exps = (t[:, None] * gens[None, :]) % N  # (N, d): t . [n]
        coeffs = exponent_counts(diff_exps, N)  # (N, N)
        self._labels = [tuple(int(x) for x in sorted(row)) for row in diff_exps]
        self._numerators = [
            CyclotomicInt(self.modulus, tuple(int(c) for c in row)) for row in coeffs
        ]
        self.denominator = d

        # re-derive entries directly from <phi_k, phi_j>; exhaustive over all
        # (j, k) pairs up to N = 128, row-sampled beyond (memory: N^3 ints)
        E = frame.exponents
        rows = range(N) if N <= 128 else (0, 1, N // 2, N - 1)
        for j in rows:
            row_exps = (E.T[None, :, :] - E.T[j : j + 1, None, :]) % N  # (1, N, d)
            row = exponent_counts(row_exps, N)[0]  # (N, N)
            want = coeffs[(t - j) % N]
            if not np.array_equal(row, want):
                raise ContractViolationError("Gram matrix is not circulant")

        # equal entries <=> equal labels, across all difference pairs
        by_coeffs: dict[tuple, tuple] = {}
        by_label: dict[tuple, tuple] = {}
        for row, label in zip(coeffs, self._labels):
            key = tuple(int(c) for c in row)
            if by_coeffs.setdefault(key, label) != label:
                raise ContractViolationError("equal Gram entries with distinct labels")
            if by_label.setdefault(label, key) != key:
                raise ContractViolationError("equal labels with distinct Gram entries")

    @property
    def N(self) -> int:
        return self.modulus.N

    def entry(self, j: int, k: int) -> ScaledCyclotomic:
        return ScaledCyclotomic(
            self._numerators[(k - j) % self.N], self.denominator
        )

    def label(self, j: int, k: int) -> tuple[int, ...]:
        return self._labels[(k - j) % self.N]

    def difference_numerator(self, t: int) -> CyclotomicInt:
        return self._numerators[t % self.N]

    def difference_label(self, t: int) -> tuple[int, ...]:
        return self._labels[t % self.N]


def gram(f: FrameMatrix) -> GramMatrix:
    return GramMatrix(f)


def _round12(x: float) -> float:
    v = float(f"{x:.12g}")
    return 0.0 if v == 0.0 else v


def _complex_entries(f: FrameMatrix) -> tuple[list[list[float]], list[list[float]]]:
    scale = 1.0 / math.sqrt(f.d)
    real, imag = [], []
    for k in range(f.d):
        re_row, im_row = [], []
        for m in range(f.N):
            z = f.entry(k, m).to_complex() * scale
            re_row.append(_round12(z.real))
            im_row.append(_round12(z.imag))
        real.append(re_row)
        imag.append(im_row)
    return real, imag


def export_frame(f: FrameMatrix, format: str) -> bytes:
    """Serialize a frame; byte-stable across runs.

    json: N, d, generators, the exact exponent matrix, and 1/sqrt(d)-scaled
    floating entries rounded to 12 significant digits.
    csv: d rows x N columns of "re+imi" cells.
    """
    if format == "json":
        real, imag = _complex_entries(f)
        obj = {
            "N": f.N,
            "d": f.d,
            "generators": list(f.generators.elems),
            "exponents": f.exponents.tolist(),
            "real": real,
            "imag": imag,
        }
        return (json.dumps(obj, separators=(",", ":")) + "\n").encode("utf-8")
    if format == "csv":
        real, imag = _complex_entries(f)
        lines = []
        for re_row, im_row in zip(real, imag):
            cells = []
            for re, im in zip(re_row, im_row):
                sign = "-" if im < 0 else "+"
                cells.append(f"{re:.12g}{sign}{abs(im):.12g}i")
            lines.append(",".join(cells))
        return ("\n".join(lines) + "\n").encode("utf-8")
    raise DomainError(f"unsupported export format {format!r}")
