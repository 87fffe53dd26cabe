"""Job dispatch and the line-delimited report format used by the CLI."""

from __future__ import annotations

import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields

from .cohomology import MAX_DIM, recheck_at, stabilized_h1
from .errors import InputError, TorsionError
from .extension import ExtensionSpec, build_extension, ramification_profile
from .sen import example_closed_form, sen_partition

MODES = ("formula", "oracle", "both")
GRID_LIMITS = {"p": 97, "m": 200, "d": 96, "points": 5000}


@dataclass(frozen=True)
class JobSpec:
    mode: str
    p: int
    m: int | None = None
    tame_d: int = 1
    n: int = 1
    breaks: tuple[int, ...] | None = None
    precision: str | int = "auto"
    max_dim: int = MAX_DIM
    timing: bool = False
    recheck: bool = False

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"mode must be one of {MODES}")
        if self.breaks is not None and self.mode != "formula":
            raise InputError("explicit breaks are only accepted in formula mode")
        if self.mode != "formula" and self.n != 1:
            raise InputError("the oracle only handles cyclic wild parts of order p (n = 1)")
        if self.breaks is None and self.m is None and self.tame_d == 1:
            raise InputError("nothing to compute: give m, breaks or a tame degree > 1")
        if self.precision != "auto" and (not isinstance(self.precision, int) or self.precision < 1):
            raise InputError("precision must be 'auto' or a positive integer")

    @property
    def explicit_extension(self) -> bool:
        return self.breaks is None


@dataclass
class Report:
    mode: str
    p: int
    n: int
    d: int
    m: int | None
    breaks: list[int] | None
    partition: list[int] | None
    agree: bool | None
    stabilization_N: int | None
    elapsed_ms: int | None
    formula_partition: list[int] | None = None
    oracle_partition: list[int] | None = None
    i_table: dict[int, int] | None = None
    label: str | None = None
    status: str = "ok"
    error: str | None = None

    @property
    def exit_status(self) -> int:
        if self.status == "ok":
            return 0
        if self.status == "mismatch":
            return 1
        if self.status in ("resource", "no-stabilization", "precision"):
            return 3
        return 2


def render_json(report: Report) -> str:
    d = asdict(report)
    if d["i_table"] is not None:
        d["i_table"] = {str(k): v for k, v in sorted(d["i_table"].items())}
    return json.dumps(d, sort_keys=False, separators=(", ", ": "))


def parse_json(line: str) -> Report:
    d = json.loads(line)
    unknown = set(d) - {f.name for f in fields(Report)}
    if unknown:
        raise InputError(f"unknown report fields {sorted(unknown)}")
    if d.get("i_table") is not None:
        d["i_table"] = {int(k): v for k, v in d["i_table"].items()}
    return Report(**d)


def _fmt(part):
    return "[" + ",".join(map(str, part)) + "]" if part is not None else "-"


def render_text(report: Report) -> str:
    head = f"{report.mode:7s} p={report.p} n={report.n} d={report.d} m={report.m if report.m is not None else '-'}"
    if report.status not in ("ok", "mismatch"):
        return f"{head}  ERROR[{report.status}] {report.error}"
    parts = [head, f"breaks={_fmt(report.breaks)}"]
    if report.formula_partition is not None:
        parts.append(f"formula={_fmt(report.formula_partition)}")
    if report.oracle_partition is not None:
        parts.append(f"oracle={_fmt(report.oracle_partition)}")
        parts.append(f"stabilized@N={report.stabilization_N}")
    if report.agree is not None:
        parts.append("agree" if report.agree else "MISMATCH")
    if report.label:
        parts.append(f"({report.label})")
    if report.elapsed_ms is not None:
        parts.append(f"{report.elapsed_ms}ms")
    return "  ".join(parts)


def _error_report(spec_like: dict, exc: TorsionError) -> Report:
    return Report(
        mode=spec_like["mode"],
        p=spec_like["p"],
        n=spec_like.get("n", 1),
        d=spec_like.get("tame_d", 1),
        m=spec_like.get("m"),
        breaks=list(spec_like["breaks"]) if spec_like.get("breaks") else None,
        partition=None,
        agree=None,
        stabilization_N=None,
        elapsed_ms=None,
        status=exc.code,
        error=str(exc),
    )


def run_job(spec: JobSpec) -> Report:
    start = time.perf_counter()
    try:
        report = _run(spec)
    except TorsionError as exc:
        report = _error_report(asdict(spec), exc)
    if spec.timing:
        report.elapsed_ms = round((time.perf_counter() - start) * 1000)
    return report


def _run(spec: JobSpec) -> Report:
    p, d, n = spec.p, spec.tame_d, spec.n
    breaks = list(spec.breaks) if spec.breaks is not None else None
    formula = oracle = None
    i_table = None
    stab = None
    label = None
    explicit = spec.precision != "auto"

    ext = None
    if spec.explicit_extension:
        ext_spec = ExtensionSpec(p, d, spec.m)
        ext = build_extension(ext_spec, spec.precision if explicit else None)
        if ext_spec.wild:
            profile = ramification_profile(ext, retries=0 if explicit else 3)
            i_table = dict(profile.i_table)
            breaks = list(profile.breaks)
        else:
            breaks = []
            n = 0

    if spec.mode in ("formula", "both"):
        if breaks:
            formula = list(sen_partition(p, n, d, breaks).lengths)
        else:
            # no wild inertia: |G| is invertible in R' and the sum over l is empty
            formula = []
        if n >= 2:
            label = "unverified-by-oracle"

    if spec.mode in ("oracle", "both"):
        if explicit:
            result = stabilized_h1(ext, lift=spec.precision, max_dim=spec.max_dim, doublings=0)
        else:
            result = stabilized_h1(ext, max_dim=spec.max_dim)
        oracle = list(result.partition)
        stab = result.stabilization_level
        if spec.recheck:
            again = recheck_at(ext, result)
            if again.partition != result.partition:
                raise TorsionError(f"partition changed at level {again.level}: {again.partition}")

    agree = None
    if formula is not None and oracle is not None:
        agree = formula == oracle
    partition = oracle if oracle is not None else formula
    return Report(
        mode=spec.mode,
        p=p,
        n=n,
        d=d,
        m=spec.m,
        breaks=breaks,
        partition=partition,
        agree=agree,
        stabilization_N=stab,
        elapsed_ms=None,
        formula_partition=formula,
        oracle_partition=oracle,
        i_table=i_table,
        label=label,
        status="mismatch" if agree is False else "ok",
    )


@dataclass(frozen=True)
class Grid:
    ps: tuple[int, ...]
    ms: tuple[int | None, ...]
    ds: tuple[int, ...] = (1,)
    mode: str = "both"
    precision: str | int = "auto"
    max_dim: int = MAX_DIM
    timing: bool = False
    limits: dict = field(default_factory=lambda: dict(GRID_LIMITS), compare=False)

    def points(self) -> list[JobSpec]:
        if any(p > self.limits["p"] for p in self.ps):
            raise InputError(f"p exceeds grid limit {self.limits['p']}")
        if any(m is not None and m > self.limits["m"] for m in self.ms):
            raise InputError(f"m exceeds grid limit {self.limits['m']}")
        if any(d > self.limits["d"] for d in self.ds):
            raise InputError(f"d exceeds grid limit {self.limits['d']}")
        out = []
        for p in sorted(set(self.ps)):
            for d in sorted(set(self.ds)):
                if math.gcd(d, p) != 1:
                    continue
                for m in sorted(set(self.ms), key=lambda x: -1 if x is None else x):
                    if m is not None and math.gcd(m, p) != 1:
                        continue
                    if m is None and d == 1:
                        continue
                    out.append(JobSpec(self.mode, p, m, d, precision=self.precision, max_dim=self.max_dim, timing=self.timing))
        if len(out) > self.limits["points"]:
            raise InputError(f"grid has {len(out)} points, limit {self.limits['points']}")
        return out


def sweep(grid: Grid, workers: int = 1) -> list[Report]:
    """One report per grid point, in grid order regardless of completion order."""
    points = grid.points()
    if workers <= 1 or len(points) <= 1:
        return [run_job(s) for s in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_job, points))


def summarize(reports: list[Report]) -> dict[str, int]:
    out = {"points": len(reports), "agree": 0, "mismatch": 0, "errors": 0}
    for r in reports:
        if r.status == "mismatch":
            out["mismatch"] += 1
        elif r.status != "ok":
            out["errors"] += 1
        elif r.agree:
            out["agree"] += 1
    return out


def exit_status(reports: list[Report]) -> int:
    codes = {r.exit_status for r in reports}
    for c in (3, 2, 1):
        if c in codes:
            return c
    return 0


def example_arbitration(p: int, m: int) -> dict:
    """Displayed closed form for break m next to the formula and the oracle."""
    cmp = example_closed_form(p, m)
    result = stabilized_h1(build_extension(ExtensionSpec(p, 1, m)))
    oracle = list(result.partition)
    formula = list(cmp.formula.lengths)
    return {
        "p": p,
        "m": m,
        "q_m": cmp.quotient,
        "r_m": cmp.remainder,
        "displayed": list(cmp.displayed.lengths),
        "formula": formula,
        "oracle": oracle,
        "displayed_agrees": cmp.agree,
        "formula_agrees_with_oracle": formula == oracle,
        "stabilization_N": result.stabilization_level,
    }
