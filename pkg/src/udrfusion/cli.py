"""Command-line driver: one subcommand per computation, flat record output."""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field, fields
from typing import Any, Iterable

from .cohomology import CohomDims, classify_udr, d1_multiplicity, d2_invariants, kernel_set
from .errors import ConsistencyError, ParameterError, UDRError, UnsupportedRegimeError
from .ffield import PrimeField, is_prime, select_prime
from .fusion import fusion_bruteforce, fusion_closed_form, recover_gcd_from_kernel_set
from .groups import ExtensionParams, embeddable, normalize_beta
from .reps import (
    base_exponents,
    character_case,
    characters_closed_form,
    ell_range,
    enumerate_characters,
    enumerate_irreps2,
    embedding_witness_search,
    kernel_diophantine,
    kernel_direct,
    rep_id,
    theta_on_G,
    twist_count,
    twisted_rho,
)
from .verify import (
    EXAMPLE_ELLS,
    EXAMPLE_PARAMS,
    REFUTED,
    UNSUPPORTED,
    VERIFIED,
    VerificationReport,
    reproduce_example,
    verify_theorem1,
    verify_theorem2,
)

TASKS = (
    "check-embeddable",
    "enumerate-reps",
    "characters",
    "udr-table",
    "fusion",
    "kernels",
    "verify-thm1",
    "verify-thm2",
    "paper-example",
    "sweep",
)
FIELDS = (
    "task", "n", "m", "alpha", "beta", "gamma", "p", "ell", "rep_id", "d1", "d2", "udr",
    "kernel", "dioph_A", "dioph_B", "fusion_gcd", "verdict", "detail",
)
DEFAULT_MAX_PRIME = 1_000_000
SWEEP_DEFAULT_TASKS = ("verify-thm1", "verify-thm2")


@dataclass
class JobConfig:
    n: list[int] = field(default_factory=list)
    m: list[int] = field(default_factory=list)
    alpha: list[int] = field(default_factory=list)
    beta: list[int] = field(default_factory=list)
    gamma: list[int] = field(default_factory=list)
    p: int | None = None
    ell_list: list[int] = field(default_factory=list)
    tasks: list[str] = field(default_factory=list)
    output: str = "table"
    max_prime: int = DEFAULT_MAX_PRIME


_LIST_KEYS = {"n", "m", "alpha", "beta", "gamma", "ell_list"}


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def parse_config(text: str) -> dict[str, Any]:
    """Flat key = value lines; '#' starts a comment; lists are comma separated."""
    names = {f.name for f in fields(JobConfig)}
    out: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"config line {lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in names:
            raise ParameterError(f"config line {lineno}: unknown key {key!r}")
        try:
            if key in _LIST_KEYS:
                out[key] = _int_list(value)
            elif key == "tasks":
                out[key] = [t.strip() for t in value.split(",") if t.strip()]
            elif key in ("p", "max_prime"):
                out[key] = int(value) if value else None
            else:
                out[key] = value
        except ValueError as exc:
            raise ParameterError(f"config line {lineno}: {exc}") from None
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="udrfusion",
        description="Deformation rings, kernels and fusion for central extensions of dihedral groups.",
    )
    ap.add_argument("command", nargs="?", choices=TASKS, help="task to run (default: tasks from --config/--task)")
    ap.add_argument("--config", help="flat key = value job file")
    for name in ("n", "m", "alpha", "beta", "gamma"):
        ap.add_argument(f"--{name}", type=_int_list, help="integer or comma-separated list")
    ap.add_argument("--p", type=int, help="prime (default: least valid prime)")
    ap.add_argument("--ell", type=_int_list, dest="ell_list", help="comma-separated ell values")
    ap.add_argument("--task", dest="tasks", type=lambda s: [t for t in s.split(",") if t], help="comma-separated tasks")
    ap.add_argument("--output", choices=("table", "records", "csv"))
    ap.add_argument("--out", help="write output here instead of stdout")
    ap.add_argument("--max-prime", type=int, dest="max_prime", help="search bound for the automatic prime")
    return ap


def config_from_args(args: argparse.Namespace) -> JobConfig:
    values: dict[str, Any] = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                values.update(parse_config(fh.read()))
        except OSError as exc:
            raise ParameterError(f"cannot read config: {exc}") from None
    for f in fields(JobConfig):
        v = getattr(args, f.name, None)
        if v is not None:
            values[f.name] = v
    cfg = JobConfig(**values)
    if args.command:
        cfg.tasks = [args.command] if args.command != "sweep" else ["sweep"] + [t for t in cfg.tasks if t != "sweep"]
    for t in cfg.tasks:
        if t not in TASKS:
            raise ParameterError(f"unknown task {t!r}")
    if cfg.output not in ("table", "records", "csv"):
        raise ParameterError(f"unknown output format {cfg.output!r}")
    return cfg


# parameter handling


def _single(cfg: JobConfig, name: str, default: int | None = None) -> int:
    vals = getattr(cfg, name)
    if not vals:
        if default is None:
            raise ParameterError(f"--{name} is required")
        return default
    if len(vals) != 1:
        raise ParameterError(f"--{name} takes a single value for this task")
    return vals[0]


def params_from_config(cfg: JobConfig) -> ExtensionParams:
    P = ExtensionParams(
        _single(cfg, "n"), _single(cfg, "m"),
        _single(cfg, "alpha", 0), _single(cfg, "beta", 0), _single(cfg, "gamma", 0),
    )
    P.require_consistent()
    return P


def field_for(params: ExtensionParams, p: int | None, max_prime: int) -> PrimeField:
    if p is None:
        return PrimeField(select_prime(params, max_prime))
    modulus = math.lcm(2 * params.n, 2 * params.m)
    if not is_prime(p) or p == 2:
        raise ParameterError(f"p = {p} is not an odd prime")
    if (p - 1) % modulus or (2 * params.n * params.m) % p == 0:
        raise ParameterError(f"p = {p} must satisfy p = 1 mod {modulus} and not divide {2 * params.n * params.m}")
    return PrimeField(p)


def _base_record(task: str, P: ExtensionParams, F: PrimeField | None) -> dict[str, Any]:
    return {
        "task": task, "n": P.n, "m": P.m, "alpha": P.alpha, "beta": P.beta, "gamma": P.gamma,
        "p": F.p if F else "",
    }


def _json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":"), default=str)


def _report_record(rep: VerificationReport) -> dict[str, Any]:
    P = rep.params
    rec = {
        "task": rep.task, "n": P.n, "m": P.m, "alpha": P.alpha, "beta": P.beta, "gamma": P.gamma,
        "p": rep.p if rep.p is not None else "", "verdict": rep.verdict,
    }
    detail = dict(rep.detail)
    if rep.witness:
        detail["witness"] = rep.witness
    rec["detail"] = _json(detail)
    return rec


def _matrix_text(rep) -> str:
    names = ("X", "Y", "Z")
    return ";".join(f"{nm}=[{a},{b};{c},{d}]" for nm, (a, b, c, d) in zip(names, rep.images))


def _ells(cfg: JobConfig, P: ExtensionParams) -> list[int]:
    ells = cfg.ell_list or list(ell_range(P.n))
    for ell in ells:
        if not 1 <= ell < P.n or 2 * ell % P.n == 0:
            raise ParameterError(f"ell = {ell} does not give an irreducible theta_ell for n = {P.n}")
    return ells


# tasks


def task_check_embeddable(cfg: JobConfig, P: ExtensionParams, F: PrimeField) -> list[dict]:
    emb = embeddable(P)
    Q = normalize_beta(P)
    witness = embedding_witness_search(Q, F)
    rec = _base_record("check-embeddable", P, F)
    rec["verdict"] = VERIFIED if emb == (witness is not None) else REFUTED
    rec["detail"] = _json({"embeddable": emb, "witness_exponents": list(witness) if witness else None})
    return [rec]


def task_enumerate_reps(cfg: JobConfig, P: ExtensionParams, F: PrimeField) -> list[dict]:
    out = []
    for rep in enumerate_irreps2(P, F):
        rec = _base_record("enumerate-reps", P, F)
        rec.update(rep_id=rep_id(rep), kernel=kernel_direct(P, rep).format(), detail=_matrix_text(rep))
        out.append(rec)
    return out


def task_characters(cfg: JobConfig, P: ExtensionParams, F: PrimeField) -> list[dict]:
    chars = enumerate_characters(P, F)
    agree = chars == characters_closed_form(P, F)
    case = character_case(normalize_beta(P))
    out = []
    for c in chars:
        rec = _base_record("characters", P, F)
        rec.update(
            rep_id=f"chi:{c.cX},{c.cY},{c.cZ}",
            verdict=VERIFIED if agree else REFUTED,
            detail=_json({"case": case}),
        )
        out.append(rec)
    return out


def task_udr_table(cfg: JobConfig, P: ExtensionParams, F: PrimeField) -> list[dict]:
    sigma = enumerate_irreps2(P, F)
    out = []
    for ell in _ells(cfg, P):
        phi = theta_on_G(P, F, ell)
        for rho in sigma:
            d1 = d1_multiplicity(phi, rho)
            d2 = d2_invariants(phi, rho) if d1 >= 1 else None
            cls = classify_udr(CohomDims(d1, d2))
            rec = _base_record("udr-table", P, F)
            rec.update(ell=ell, rep_id=rep_id(rho), d1=d1, d2="" if d2 is None else d2, udr=str(cls))
            out.append(rec)
    return out


def task_fusion(cfg: JobConfig, P: ExtensionParams, F: PrimeField) -> list[dict]:
    out = []
    for ell in _ells(cfg, P):
        phi = theta_on_G(P, F, ell)
        brute = fusion_bruteforce(phi)
        closed = fusion_closed_form(P.n, F, ell)
        K = kernel_set(P, F, phi)
        sizes: dict[int, int] = {}
        for s in brute.sizes():
            sizes[s] = sizes.get(s, 0) + 1
        rec = _base_record("fusion", P, F)
        rec.update(
            ell=ell,
            fusion_gcd=math.gcd(P.n, ell),
            verdict=VERIFIED if brute == closed else REFUTED,
            detail=_json({
                "orbits": len(brute),
                "orbit_sizes": {str(k): v for k, v in sorted(sizes.items())},
                "recovered_gcd": recover_gcd_from_kernel_set(P, K),
            }),
        )
        out.append(rec)
    return out


def task_kernels(cfg: JobConfig, P: ExtensionParams, F: PrimeField) -> list[dict]:
    if P.beta not in (0, 1):
        raise ParameterError("kernels task needs beta in {0, 1}")
    base = base_exponents(P, F)
    out = []
    for ell in _ells(cfg, P):
        for k in range(twist_count(P)):
            eq, sub = kernel_diophantine(P, ell, k)
            direct = kernel_direct(P, twisted_rho(P, F, base, ell, k))
            rec = _base_record("kernels", P, F)
            rec.update(
                ell=ell, rep_id=f"twist{k}", kernel=sub.format(), dioph_A=eq.A, dioph_B=eq.B,
                verdict=VERIFIED if sub == direct else REFUTED,
            )
            out.append(rec)
    return out


def task_paper_example(cfg: JobConfig) -> list[dict]:
    res = reproduce_example()
    P = EXAMPLE_PARAMS
    out = []
    for k, row in enumerate(res.table):
        for ell, (A, B) in zip(EXAMPLE_ELLS, row):
            rec = _base_record("paper-example", P, None)
            bad = any(mm.get("row") == k and mm.get("ell") == ell for mm in res.mismatches)
            rec.update(ell=ell, rep_id=f"chi^{k}", dioph_A=A, dioph_B=B, verdict=REFUTED if bad else VERIFIED)
            out.append(rec)
    summary = _report_record(res.report)
    summary["detail"] = _json({
        "step": res.step_text(),
        "ell5_same_list": res.remark_same_list,
        "ell5_distinct_kernels": res.remark_distinct_kernels,
        "mismatches": res.mismatches,
    })
    out.append(summary)
    return out


def _with_params(task, cfg: JobConfig) -> list[dict]:
    P = params_from_config(cfg)
    if task in ("verify-thm1", "verify-thm2"):
        if P.n % 2 or P.m % 2 or not embeddable(P):
            return [_report_record(VerificationReport(
                task, P, None, UNSUPPORTED,
                detail={"reason": "needs n, m even and an embeddable presentation"},
            ))]
        Q = normalize_beta(P)
        F = field_for(Q, cfg.p, cfg.max_prime)
        fn = verify_theorem1 if task == "verify-thm1" else verify_theorem2
        rep = fn(Q, F)
        rep.params = P
        return [_report_record(rep)]
    F = field_for(P, cfg.p, cfg.max_prime)
    return HANDLERS[task](cfg, P, F)


HANDLERS = {
    "check-embeddable": task_check_embeddable,
    "enumerate-reps": task_enumerate_reps,
    "characters": task_characters,
    "udr-table": task_udr_table,
    "fusion": task_fusion,
    "kernels": task_kernels,
}


def sweep_params(cfg: JobConfig) -> list[ExtensionParams]:
    """Consistent embeddable presentations over the given n, m lists (all alpha, beta, gamma unless given)."""
    if not cfg.n or not cfg.m:
        raise ParameterError("sweep needs --n and --m lists")
    out = []
    for n in cfg.n:
        for m in cfg.m:
            if n % 2 or m % 2:
                raise UnsupportedRegimeError(f"sweep needs even n, m (got n={n}, m={m})")
            for a in cfg.alpha or range(m):
                for b in cfg.beta or (0, 1):
                    for g in cfg.gamma or range(m):
                        P = ExtensionParams(n, m, a, b, g)
                        if P.consistent and embeddable(P) and P not in out:
                            out.append(P)
    return out


def task_sweep(cfg: JobConfig) -> list[dict]:
    tasks = [t for t in cfg.tasks if t != "sweep"] or list(SWEEP_DEFAULT_TASKS)
    out = []
    for P in sweep_params(cfg):
        sub = JobConfig(
            n=[P.n], m=[P.m], alpha=[P.alpha], beta=[P.beta], gamma=[P.gamma],
            p=None, ell_list=cfg.ell_list, tasks=tasks, output=cfg.output, max_prime=cfg.max_prime,
        )
        for t in tasks:
            if t in ("sweep", "paper-example"):
                raise ParameterError(f"task {t!r} cannot run inside a sweep")
            out.extend(_with_params(t, sub))
    return out


def run(cfg: JobConfig) -> tuple[int, list[dict]]:
    """Execute the configured tasks in order; returns (exit status, records)."""
    records: list[dict] = []
    if "sweep" in cfg.tasks:
        records = task_sweep(cfg)
    else:
        for t in cfg.tasks:
            records.extend(task_paper_example(cfg) if t == "paper-example" else _with_params(t, cfg))
    verdicts = {r.get("verdict", "") for r in records}
    if REFUTED in verdicts:
        return 1, records
    if UNSUPPORTED in verdicts:
        return 2, records
    return 0, records


# output


def _row(rec: dict) -> list[str]:
    return ["" if rec.get(k) is None else str(rec.get(k, "")) for k in FIELDS]


def format_records(records: Iterable[dict], output: str) -> str:
    records = list(records)
    if output == "records":
        return "".join(_json({k: rec.get(k, "") for k in FIELDS}) + "\n" for rec in records)
    if output == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(FIELDS)
        for rec in records:
            w.writerow(_row(rec))
        return buf.getvalue()
    if not records:
        return ""
    rows = [list(FIELDS)] + [_row(r) for r in records]
    widths = [max(len(r[i]) for r in rows) for i in range(len(FIELDS))]
    return "".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in rows)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        status, records = run(cfg)
    except ConsistencyError as exc:
        print(f"internal consistency error: {exc}", file=sys.stderr)
        return 3
    except UDRError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = format_records(records, cfg.output)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
