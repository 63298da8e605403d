"""Command-line front end: counting, enumeration, frame export, equivalence
decisions, and symmetry analysis with stable machine-readable output.

Exit codes: 0 success (or equivalent frames), 1 mismatch or inequivalence,
2 usage error, 3 enumeration budget exceeded, 4 symmetry-conjecture
counterexample discovered (notable, not fatal).

All output is UTF-8 with newline-terminated records, and identical
invocations produce byte-identical output regardless of --threads.
Integers too large for a double are emitted as decimal strings in JSON.
The HC_MAX_SUBSETS environment variable overrides the default enumeration
budget; an explicit --max-subsets beats both.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from .census import count_harmonic_frames, count_unordered_dft, full_census
from .equivalence import are_equivalent
from .errors import BudgetExceededError, DomainError, ModulusMismatchError
from .frames import build_frame, export_frame
from .number_theory import PrimeModulus, is_prime
from .orbits import DEFAULT_MAX_SUBSETS, GeneratorSet, enumerate_orbits, structured_form
from .symmetry import DEFAULT_SYMMETRY_MAX_N, conjecture_scan, full_symmetry_group

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_COUNTEREXAMPLE = 4

_JSON_SAFE_BOUND = 2**53


@dataclass(frozen=True)
class Budgets:
    enumeration_max_subsets: int = DEFAULT_MAX_SUBSETS
    symmetry_max_N: int = DEFAULT_SYMMETRY_MAX_N


@dataclass(frozen=True)
class RunConfig:
    command: str
    N: int
    d: int | None = None
    generators: tuple[int, ...] | None = None
    gens_a: tuple[int, ...] | None = None
    gens_b: tuple[int, ...] | None = None
    output_format: str = "table"
    budgets: Budgets = field(default_factory=Budgets)
    output_path: str | None = None
    threads: int | None = None


def _json_int(v: int):
    return v if abs(v) < _JSON_SAFE_BOUND else str(v)


def _fraction_json(fr: Fraction):
    if fr.denominator == 1:
        return _json_int(int(fr))
    return f"{fr.numerator}/{fr.denominator}"


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _parse_gens(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise DomainError(f"malformed generator list {text!r}")


def _emit(payload: str | bytes, path: str | None) -> None:
    if isinstance(payload, str):
        payload = payload.encode("utf-8")
    if path is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(payload)


def _validated_modulus(N: int) -> PrimeModulus:
    if N < 2 or not is_prime(N):
        raise DomainError("N must be prime")
    return PrimeModulus(N)


def _generator_set(modulus: PrimeModulus, gens: tuple[int, ...]) -> GeneratorSet:
    # any residue representatives are accepted; GeneratorSet reduces mod N,
    # sorts, and rejects duplicates, and outputs echo the normalized form
    return GeneratorSet(modulus, gens)


# -- commands ----------------------------------------------------------------


def cmd_count(cfg: RunConfig) -> int:
    modulus = _validated_modulus(cfg.N)
    if cfg.d is None or not 1 <= cfg.d <= modulus.N:
        raise DomainError(f"need 1 <= d <= N, got d={cfg.d}")
    census = full_census(modulus, cfg.d)
    total = count_harmonic_frames(modulus, cfg.d)
    note = None
    if cfg.d == 1:
        note = "d=1: two orbits, one of them the degenerate single-vector frame"
    elif cfg.d == modulus.N:
        note = "d=N: a single orbit"
    orders = sorted(census.gamma)
    rows = [
        {
            "c": c,
            "beta": _fraction_json(census.beta[c]),
            "gamma": _json_int(census.gamma[c]),
            "orbit_size": census.orbit_size(c),
        }
        for c in orders
    ]
    if cfg.output_format == "json":
        obj = {"N": cfg.N, "d": cfg.d, "total": _json_int(total), "rows": rows}
        if note:
            obj["note"] = note
        _emit(_dumps(obj) + "\n", cfg.output_path)
    elif cfg.output_format == "csv":
        lines = ["N,d,c,beta,gamma,orbit_size"]
        for c in orders:
            lines.append(
                f"{cfg.N},{cfg.d},{c},{census.beta[c]},{census.gamma[c]},{census.orbit_size(c)}"
            )
        _emit("\n".join(lines) + "\n", cfg.output_path)
    else:
        lines = [f"N={cfg.N} d={cfg.d} total={total}"]
        lines.append(f"{'c':>8} {'beta':>16} {'gamma':>16} {'orbit_size':>12}")
        for c in orders:
            lines.append(
                f"{c:>8} {str(census.beta[c]):>16} {census.gamma[c]:>16} "
                f"{census.orbit_size(c):>12}"
            )
        if note:
            lines.append(f"note: {note}")
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK


def _record_json(N: int, d: int, rec) -> dict:
    form = structured_form(rec.rep)
    return {
        "N": N,
        "d": d,
        "generators": list(rec.rep.elems),
        "size": rec.size,
        "stab_order": rec.stab_order,
        "stabilizer": list(rec.stabilizer),
        "structured_form": {
            "kind": form.kind,
            "c": form.c,
            "block_leaders": list(form.block_leaders),
        },
    }


def cmd_enumerate(cfg: RunConfig) -> int:
    modulus = _validated_modulus(cfg.N)
    if cfg.d is None or not 1 <= cfg.d <= modulus.N:
        raise DomainError(f"need 1 <= d <= N, got d={cfg.d}")
    records = enumerate_orbits(
        modulus,
        cfg.d,
        max_subsets=cfg.budgets.enumeration_max_subsets,
        threads=cfg.threads,
    )
    lines = []
    for rec in records:
        obj = _record_json(cfg.N, cfg.d, rec)
        if cfg.output_format == "json":
            lines.append(_dumps(obj))
        elif cfg.output_format == "csv":
            sf = obj["structured_form"]
            lines.append(
                ",".join(
                    [
                        "|".join(str(x) for x in rec.rep.elems),
                        str(rec.size),
                        str(rec.stab_order),
                        "|".join(str(x) for x in rec.stabilizer),
                        sf["kind"],
                        "|".join(str(x) for x in sf["block_leaders"]),
                    ]
                )
            )
        else:
            sf = obj["structured_form"]
            lines.append(
                f"rep=[{','.join(str(x) for x in rec.rep.elems)}] "
                f"size={rec.size} c={rec.stab_order} "
                f"stabilizer=[{','.join(str(x) for x in rec.stabilizer)}] "
                f"kind={sf['kind']} "
                f"leaders=[{','.join(str(x) for x in sf['block_leaders'])}]"
            )
    if cfg.output_format == "csv":
        lines.insert(0, "generators,size,stab_order,stabilizer,kind,block_leaders")
    _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    modulus = _validated_modulus(cfg.N)
    if cfg.d is None or not 1 <= cfg.d <= modulus.N:
        raise DomainError(f"need 1 <= d <= N, got d={cfg.d}")
    census = full_census(modulus, cfg.d)
    records = enumerate_orbits(
        modulus,
        cfg.d,
        max_subsets=cfg.budgets.enumeration_max_subsets,
        threads=cfg.threads,
    )
    hist: dict[int, int] = {}
    for rec in records:
        hist[rec.stab_order] = hist.get(rec.stab_order, 0) + 1
    orders = sorted(set(census.gamma) | set(hist))
    rows = []
    all_match = True
    for c in orders:
        formula = census.gamma.get(c, 0)
        brute = hist.get(c, 0)
        match = formula == brute
        all_match &= match
        rows.append({"c": c, "formula": formula, "bruteforce": brute, "match": match})
    total_match = census.total == len(records)
    all_match &= total_match

    if cfg.output_format == "json":
        obj = {
            "N": cfg.N,
            "d": cfg.d,
            "total_formula": _json_int(census.total),
            "total_bruteforce": len(records),
            "match": all_match,
            "rows": [
                {
                    "c": r["c"],
                    "formula": _json_int(r["formula"]),
                    "bruteforce": r["bruteforce"],
                    "match": r["match"],
                }
                for r in rows
            ],
        }
        _emit(_dumps(obj) + "\n", cfg.output_path)
    else:
        lines = [
            f"N={cfg.N} d={cfg.d} formula_total={census.total} "
            f"bruteforce_total={len(records)} match={'yes' if all_match else 'NO'}"
        ]
        lines.append(f"{'c':>8} {'formula':>16} {'bruteforce':>16} {'match':>8}")
        for r in rows:
            lines.append(
                f"{r['c']:>8} {r['formula']:>16} {r['bruteforce']:>16} "
                f"{'yes' if r['match'] else 'NO':>8}"
            )
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK if all_match else EXIT_MISMATCH


def cmd_frame(cfg: RunConfig) -> int:
    modulus = _validated_modulus(cfg.N)
    if not cfg.generators:
        raise DomainError("frame requires --gens")
    s = _generator_set(modulus, cfg.generators)
    f = build_frame(s)
    if cfg.output_format in ("json", "csv"):
        _emit(export_frame(f, cfg.output_format), cfg.output_path)
    else:
        lines = [
            f"N={f.N} d={f.d} generators=[{','.join(str(x) for x in s.elems)}] "
            f"normalization={f.normalization}"
        ]
        lines.append("exponent matrix (entry (k,m) = m*n_k mod N):")
        for k in range(f.d):
            lines.append("  " + " ".join(f"{int(e):>3}" for e in f.exponents[k]))
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK


def cmd_equivalent(cfg: RunConfig) -> int:
    modulus = _validated_modulus(cfg.N)
    if not cfg.gens_a or not cfg.gens_b:
        raise DomainError("equivalent requires --a and --b")
    a = _generator_set(modulus, cfg.gens_a)
    b = _generator_set(modulus, cfg.gens_b)
    if a.d != b.d:
        raise DomainError(f"generator lists have different sizes {a.d} and {b.d}")
    verdict = are_equivalent(a, b)
    if cfg.output_format == "json":
        if verdict.equivalent:
            obj = {
                "equivalent": True,
                "m0": verdict.witness.m0,
                "coordinate_perm": list(verdict.witness.coordinate_perm),
            }
        else:
            obj = {"equivalent": False, "certificate": verdict.certificate}
        _emit(_dumps(obj) + "\n", cfg.output_path)
    else:
        if verdict.equivalent:
            _emit(
                f"equivalent m0={verdict.witness.m0} "
                f"coordinate_perm=[{','.join(str(x) for x in verdict.witness.coordinate_perm)}]\n",
                cfg.output_path,
            )
        else:
            _emit(f"inequivalent certificate={verdict.certificate}\n", cfg.output_path)
    return EXIT_OK if verdict.equivalent else EXIT_MISMATCH


def _symmetry_json(s: GeneratorSet, report) -> dict:
    return {
        "N": s.modulus.N,
        "generators": list(s.elems),
        "stabilizer_order": report.stabilizer_order,
        "subgroup_order": _json_int(report.subgroup_order),
        "full_group_order": (
            None
            if report.full_group_order is None
            else _json_int(report.full_group_order)
        ),
        "conjecture_holds": report.conjecture_holds,
        "generators_found": list(report.generators_found),
        "note": report.note,
    }


def cmd_symmetry(cfg: RunConfig) -> int:
    modulus = _validated_modulus(cfg.N)
    if not cfg.generators:
        raise DomainError("symmetry requires --gens")
    s = _generator_set(modulus, cfg.generators)
    report = full_symmetry_group(s, max_N=cfg.budgets.symmetry_max_N)
    if cfg.output_format == "json":
        _emit(_dumps(_symmetry_json(s, report)) + "\n", cfg.output_path)
    else:
        lines = [
            f"N={cfg.N} generators=[{','.join(str(x) for x in s.elems)}] "
            f"c={report.stabilizer_order} subgroup_order={report.subgroup_order} "
            f"full_order={report.full_group_order} "
            f"conjecture_holds={report.conjecture_holds}"
        ]
        if report.note:
            lines.append(f"note: {report.note}")
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_OK


def cmd_scan(cfg: RunConfig) -> int:
    modulus = _validated_modulus(cfg.N)
    if cfg.d is None or not 1 <= cfg.d <= modulus.N:
        raise DomainError(f"need 1 <= d <= N, got d={cfg.d}")
    report = conjecture_scan(
        modulus,
        cfg.d,
        max_subsets=cfg.budgets.enumeration_max_subsets,
        max_N=cfg.budgets.symmetry_max_N,
        threads=cfg.threads,
    )
    rows_json = [
        {
            "rep": list(r.rep.elems),
            "c": r.stabilizer_order,
            "subgroup_order": _json_int(r.subgroup_order),
            "full_group_order": _json_int(r.full_group_order),
            "conjecture_holds": r.conjecture_holds,
            "note": r.note,
        }
        for r in report.rows
    ]
    if cfg.output_format == "json":
        obj = {
            "N": cfg.N,
            "d": cfg.d,
            "rows": rows_json,
            "counterexamples": [
                list(r.rep.elems) for r in report.counterexamples
            ],
        }
        _emit(_dumps(obj) + "\n", cfg.output_path)
    else:
        lines = [f"N={cfg.N} d={cfg.d} orbits={len(report.rows)}"]
        for r in report.rows:
            mark = "" if r.conjecture_holds else "  <-- counterexample"
            lines.append(
                f"rep=[{','.join(str(x) for x in r.rep.elems)}] c={r.stabilizer_order} "
                f"subgroup={r.subgroup_order} full={r.full_group_order} "
                f"holds={'yes' if r.conjecture_holds else 'NO'}{mark}"
            )
        _emit("\n".join(lines) + "\n", cfg.output_path)
    return EXIT_COUNTEREXAMPLE if report.counterexamples else EXIT_OK


# -- built-in reference checks ------------------------------------------------


def seed_check() -> int:
    """Re-derive the worked reference values and exit nonzero on mismatch."""
    checks: list[tuple[str, bool]] = []

    def check(desc: str, cond: bool) -> None:
        checks.append((desc, cond))

    m5, m7 = PrimeModulus(5), PrimeModulus(7)
    check("count(5,2) == 3", count_harmonic_frames(m5, 2) == 3)
    check("count(5,3) == 3", count_harmonic_frames(m5, 3) == 3)
    check("count(7,3) == 7", count_harmonic_frames(m7, 3) == 7)
    c73 = full_census(m7, 3)
    check("census(7,3) gamma", c73.gamma == {1: 5, 2: 1, 3: 1})
    check("census(7,3) beta", (c73.beta[2], c73.beta[3]) == (3, 2))
    for N in (7, 13, 19, 31):
        cen = full_census(PrimeModulus(N), 3)
        check(
            f"worked example N={N} d=3",
            cen.beta[3] == Fraction(N - 1, 3)
            and cen.beta[2] == Fraction(N - 1, 2)
            and cen.gamma[3] == 1
            and cen.gamma[2] == 1
            and cen.gamma[1] == (N * N - 2 * N - 5) // 6,
        )
    for N in (3, 5, 11, 97, 9973):
        check(
            f"d=2 closed form N={N}",
            count_harmonic_frames(PrimeModulus(N), 2) == (N + 1) // 2,
        )
    for N, expected in ((7, 7), (13, 25), (5, 3), (11, 17)):
        check(
            f"d=3 closed form N={N}",
            count_harmonic_frames(PrimeModulus(N), 3) == expected,
        )
    check("ordered count (5,3) == 15", count_unordered_dft(m5, 3) == 15)
    check("ordered count (2,2) == 2", count_unordered_dft(PrimeModulus(2), 2) == 2)
    check("ordered count (7,2) == 7", count_unordered_dft(m7, 2) == 7)

    failed = [desc for desc, ok in checks if not ok]
    for desc, ok in checks:
        print(f"{'PASS' if ok else 'FAIL'}: {desc}")
    print(f"seed-check: {len(checks) - len(failed)}/{len(checks)} passed")
    return EXIT_OK if not failed else EXIT_MISMATCH


# -- argument plumbing --------------------------------------------------------


def _add_common(sp, *, d=False, gens=False, ab=False):
    sp.add_argument("--N", type=int, required=True, help="prime modulus")
    if d:
        sp.add_argument("--d", type=int, required=True, help="dimension")
    if gens:
        sp.add_argument("--gens", type=str, help="comma-separated generators")
    if ab:
        sp.add_argument("--a", type=str, required=True, help="first generator list")
        sp.add_argument("--b", type=str, required=True, help="second generator list")
    sp.add_argument(
        "--format",
        choices=("json", "csv", "table"),
        default="table",
        dest="output_format",
    )
    sp.add_argument("--out", type=str, default=None, help="write output to file")
    sp.add_argument("--max-subsets", type=int, default=None)
    sp.add_argument("--threads", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="harmonic-census",
        description=(
            "Exact counting, enumeration, construction, and symmetry analysis "
            "of prime-order harmonic frames."
        ),
    )
    parser.add_argument("--seed-check", action="store_true", help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command")
    _add_common(sub.add_parser("count", help="closed-form orbit census"), d=True)
    _add_common(sub.add_parser("enumerate", help="brute-force orbit listing"), d=True)
    _add_common(
        sub.add_parser("verify", help="formula vs brute-force cross-check"), d=True
    )
    _add_common(sub.add_parser("frame", help="construct and export a frame"), gens=True)
    _add_common(
        sub.add_parser("equivalent", help="decide unitary equivalence"), ab=True
    )
    _add_common(
        sub.add_parser("symmetry", help="symmetry group of one frame"), gens=True
    )
    _add_common(sub.add_parser("scan", help="conjecture scan over all orbits"), d=True)
    return parser


def _resolve_budget(args) -> int:
    explicit = getattr(args, "max_subsets", None)
    if explicit is not None:
        return explicit
    env = os.environ.get("HC_MAX_SUBSETS")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise DomainError(f"HC_MAX_SUBSETS={env!r} is not an integer")
    return DEFAULT_MAX_SUBSETS


_DISPATCH = {
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
    "frame": cmd_frame,
    "equivalent": cmd_equivalent,
    "symmetry": cmd_symmetry,
    "scan": cmd_scan,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed_check:
        return seed_check()
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        cfg = RunConfig(
            command=args.command,
            N=args.N,
            d=getattr(args, "d", None),
            generators=(
                _parse_gens(args.gens) if getattr(args, "gens", None) else None
            ),
            gens_a=_parse_gens(args.a) if getattr(args, "a", None) else None,
            gens_b=_parse_gens(args.b) if getattr(args, "b", None) else None,
            output_format=args.output_format,
            budgets=Budgets(enumeration_max_subsets=_resolve_budget(args)),
            output_path=args.out,
            threads=getattr(args, "threads", None),
        )
        return _DISPATCH[args.command](cfg)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (DomainError, ModulusMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
