"""Report records, canonical serialization, and sampling harness plumbing.

Reports are plain dicts with a fixed schema version.  JSON output is
canonical (sorted keys, fixed separators, no timestamps), so identical
configurations produce byte-identical reports.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor

from .padic_core import UnramifiedCtx, WittApprox

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Invalid parameter combination (CLI exit code 2, not a check failure)."""


def run_samples(count: int, fn, jobs: int = 1) -> list:
    """Evaluate fn(0..count-1); order of the result is always by index."""
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(fn, range(count)))
    else:
        records = [fn(i) for i in range(count)]
    return sorted(records, key=lambda r: r["index"])


def assemble(command: str, params: dict, ctx: UnramifiedCtx | None, records: list,
             extra: dict | None = None) -> dict:
    report = {
        "schemaVersion": SCHEMA_VERSION,
        "command": command,
        "params": params,
        "perSample": records,
        "failures": sum(1 for r in records if not r.get("pass")),
        "pass": all(r.get("pass") for r in records) if records else True,
    }
    if ctx is not None:
        report["ctx"] = ctx.metadata()
    if extra:
        report.update(extra)
        if "pass" in extra:
            report["pass"] = extra["pass"] and all(r.get("pass") for r in records)
    return report


def witt_from_record(ctx: UnramifiedCtx, rec: dict) -> WittApprox:
    if rec.get("exactZero"):
        return ctx.exact_zero()
    if (rec["p"], rec["k"]) != (ctx.p, ctx.k):
        raise ConfigError("record does not match the requested context")
    if rec["prec"] == 0:
        return ctx.zero_approx(rec["scale"])
    return ctx.make(rec["scale"], tuple(rec["coeffs"]), rec["prec"])


def point_from_record(ctx: UnramifiedCtx, rec: dict, with_wz: bool = False):
    """Rebuild the sampled inputs of a perSample record for replay."""
    zbar = ctx.residue_field.element(rec["zbar"])
    w = witt_from_record(ctx, rec["w"])
    if with_wz:
        wz = witt_from_record(ctx, rec["wz"])
        return zbar, wz, w
    return zbar, w


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, separators=(",", ":"))


def _flat(value):
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return value


def to_csv(report: dict) -> str:
    """Flat projection of the per-sample records, one row per sample."""
    records = report.get("perSample", [])
    meta = {f"param_{k}": v for k, v in report.get("params", {}).items()}
    fields = sorted({key for r in records for key in r} | set(meta))
    out = io.StringIO()
    writer = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for rec in records:
        row = {**meta, **{k: _flat(v) for k, v in rec.items()}}
        writer.writerow(row)
    return out.getvalue()


def text_summary(report: dict) -> str:
    params = report.get("params", {})
    shown = ", ".join(f"{k}={v}" for k, v in sorted(params.items()))
    lines = [f"[{'PASS' if report['pass'] else 'FAIL'}] {report['command']} ({shown})"]
    records = report.get("perSample", [])
    if records:
        lines.append(f"  samples: {len(records)}, failures: {report['failures']}")
        for rec in records:
            if not rec.get("pass"):
                lines.append(f"  FAILED sample {rec.get('index')}: {_flat(rec)}")
    for key, value in report.items():
        if key in {"schemaVersion", "command", "params", "perSample", "failures",
                   "pass", "ctx"}:
            continue
        lines.append(f"  {key}: {_flat(value)}")
    return "\n".join(lines)
