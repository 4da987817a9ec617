"""Command line driver: census runs, caching, diffing, artifact export.

Per-degree results persist as canonical JSON (sorted keys, fixed
indent), so identical configuration and code reproduce identical bytes.
Wall-clock timings are deliberately kept out of those artifacts; they go
to a sidecar log, `timings.json`, which is the one file in the cache
directory that is not deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .actions import brace_from_regular, bracoid_from_subgroup, ybe_solution
from .catalog import CayleyGroup, groups_of_order
from .counts import DegreeCensus, DegreeReportRow, build_degree_census
from .degree2pq import build_family, witness_M_series, witness_four_types
from .enumeration import DEFAULT_NODE_BUDGET, DEFAULT_TIME_BUDGET
from .errors import ConsistencyError, StructureError, UnsupportedOrderError
from .expected import MAX_EXPECTED_DEGREE, expected_row, is_disputed, DISPUTED
from .holomorph import HolomorphContext, build_holomorph
from .perm import PermGroup, format_cycles, parse_cycles

SCHEMA_VERSION = 1
CACHE_ENV = "HGCENSUS_CACHE_DIR"
DEFAULT_CACHE = "hgcensus-cache"

_HEADERS = (
    "Degree",
    "Types",
    "#HGS",
    "#Sbracoids",
    "#Gal",
    "#Sbraces",
    "#AC HGS",
    "#AC Sbracoids",
    "#BC HGS",
)


def _engine_version() -> str:
    try:
        from importlib.metadata import version

        return version("hgcensus")
    except Exception:
        return "unpackaged"


ENGINE_VERSION = _engine_version()


@dataclass
class RunConfig:
    """Options shared by the cache-backed subcommands."""

    degrees: list[int]
    fmt: str = "md"
    cache_dir: Path = Path(DEFAULT_CACHE)
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: float = DEFAULT_TIME_BUDGET
    skip_ac: bool = False
    skip_bc: bool = False
    list_classes: bool = False
    emit_actions: bool = False

    def validate(self) -> None:
        if not self.degrees:
            raise StructureError("no degrees requested")
        for d in self.degrees:
            if d < 2:
                raise StructureError(f"degree {d} is below 2")
        if self.node_budget <= 0:
            raise StructureError("node budget must be positive")
        if self.time_budget <= 0:
            raise StructureError("time budget must be positive")
        if self.fmt not in ("json", "csv", "md"):
            raise StructureError(f"unknown format {self.fmt!r}")


def parse_degrees(spec: str) -> list[int]:
    """Parse "8", "4,6,8", "2-12", or mixtures like "2-6,9"."""
    out: set[int] = set()
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo_s, _, hi_s = part.partition("-")
            try:
                lo, hi = int(lo_s), int(hi_s)
            except ValueError:
                raise StructureError(f"bad degree range {part!r}") from None
            if lo > hi:
                raise StructureError(f"empty degree range {part!r}")
            out.update(range(lo, hi + 1))
        else:
            try:
                out.add(int(part))
            except ValueError:
                raise StructureError(f"bad degree {part!r}") from None
    if not out:
        raise StructureError(f"no degrees in {spec!r}")
    return sorted(out)


def _default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV, DEFAULT_CACHE))


def _degree_path(cache_dir: Path, degree: int) -> Path:
    return cache_dir / f"degree-{degree:03d}.json"


def _dump_canonical(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _row_dict(row: DegreeReportRow) -> dict:
    d: dict = {"degree": row.degree, "partial": row.partial}
    for cell in DegreeReportRow.CELLS:
        d[cell] = getattr(row, cell)
    return d


def _census_payload(census: DegreeCensus, cfg: RunConfig) -> dict:
    rec_index = {id(rec): i for i, rec in enumerate(census.records)}
    classes = []
    for cls in census.classes:
        members = []
        seen_per_type: dict[str, int] = {}
        for tname, rec in cls.members:
            i = rec_index[id(rec)]
            j = seen_per_type.get(tname, 0)
            seen_per_type[tname] = j + 1
            bc_pair = census.bc_counts[i]
            members.append(
                {
                    "label": f"{cls.label}-{tname}-m{j}",
                    "type": tname,
                    "class_size": rec.class_size,
                    "normalizer_order": rec.normalizer_order,
                    "regular": rec.regular,
                    "almost_classical": census.ac_flags[i],
                    "bijective_correspondence": census.bc_flags[i],
                    "intermediate_fields": bc_pair[0] if bc_pair else None,
                    "hopf_subalgebras": bc_pair[1] if bc_pair else None,
                    "generators": [format_cycles(p) for p in rec.rep.generators],
                }
            )
        classes.append(
            {
                "label": cls.label,
                "order": cls.order,
                "stabilizer_order": cls.stabilizer_order,
                "regular": cls.regular,
                "members": members,
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "engine_version": ENGINE_VERSION,
        "degree": census.row.degree,
        "flags": {
            "skip_ac": cfg.skip_ac,
            "skip_bc": cfg.skip_bc,
            "node_budget": cfg.node_budget,
            "time_budget": cfg.time_budget,
        },
        "types": [ctx.group.name for ctx in census.contexts],
        "row": _row_dict(census.row),
        "classes": classes,
    }


def _read_payload(path: Path) -> Optional[dict]:
    """Cached payload if present and version-compatible, else None."""
    if not path.exists():
        return None
    try:
        payload = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    if payload.get("schema_version") != SCHEMA_VERSION:
        return None
    if payload.get("engine_version") != ENGINE_VERSION:
        return None
    return payload


def _cache_satisfies(payload: dict, cfg: RunConfig) -> bool:
    """Whether a cached payload already covers what cfg asks for.

    A cache computed with more columns or bigger budgets is accepted
    as-is; one whose skipped or budget-starved cells the current run
    would fill forces a recompute.
    """
    flags = payload.get("flags", {})
    if flags.get("skip_ac", False) and not cfg.skip_ac:
        return False
    if flags.get("skip_bc", False) and not cfg.skip_bc:
        return False
    row = payload.get("row", {})
    starved = row.get("hgs_total") is None or (
        row.get("bc_hgs") is None and not flags.get("skip_bc", False)
    )
    if starved and (
        cfg.node_budget > flags.get("node_budget", 0)
        or cfg.time_budget > flags.get("time_budget", 0)
    ):
        return False
    return True


def _cell_str(value) -> str:
    return "?" if value is None else str(value)


def _emit_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2, sort_keys=True) + "\n")
        return
    if fmt == "csv":
        for r in rows:
            cells = [r["degree"]] + [r[c] for c in DegreeReportRow.CELLS]
            out.write(",".join(_cell_str(c) for c in cells) + "\n")
        return
    out.write("| " + " | ".join(_HEADERS) + " |\n")
    out.write("|" + " --- |" * len(_HEADERS) + "\n")
    for r in rows:
        cells = [r["degree"]] + [r[c] for c in DegreeReportRow.CELLS]
        out.write("| " + " | ".join(_cell_str(c) for c in cells) + " |\n")


def _print_classes(payload: dict, out) -> None:
    for cls in payload["classes"]:
        parts = []
        for m in cls["members"]:
            tags = ""
            if m["almost_classical"]:
                tags += ",AC"
            if m["bijective_correspondence"]:
                tags += ",BC"
            parts.append(f"{m['type']}:{m['class_size']}{tags}")
        kind = "regular" if cls["regular"] else f"stab={cls['stabilizer_order']}"
        out.write(
            f"  {cls['label']}  order={cls['order']} {kind}  members=[{'; '.join(parts)}]\n"
        )


def _merge_timings(cache_dir: Path, new_seconds: dict[str, float]) -> None:
    path = cache_dir / "timings.json"
    seconds: dict[str, float] = {}
    if path.exists():
        try:
            seconds = json.loads(path.read_text()).get("seconds", {})
        except (OSError, json.JSONDecodeError):
            seconds = {}
    seconds.update(new_seconds)
    body = {"engine_version": ENGINE_VERSION, "seconds": seconds}
    path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")


class _MemberRebuilder:
    """Reconstructs live subgroups from cached cycle-notation generators."""

    def __init__(self, degree: int):
        self.degree = degree
        self._ctx_cache: dict[str, HolomorphContext] = {}

    def context(self, type_name: str) -> HolomorphContext:
        ctx = self._ctx_cache.get(type_name)
        if ctx is None:
            for g in groups_of_order(self.degree):
                if g.name == type_name:
                    ctx = build_holomorph(g)
                    break
            else:
                raise LookupError(f"no group named {type_name!r} of order {self.degree}")
            self._ctx_cache[type_name] = ctx
        return ctx

    def subgroup(self, member: dict) -> tuple[HolomorphContext, PermGroup]:
        ctx = self.context(member["type"])
        gens = [parse_cycles(s, self.degree) for s in member["generators"]]
        return ctx, PermGroup(gens, self.degree)


def _export_class_actions(
    cls: dict, out_dir: Path, rebuilder: _MemberRebuilder, err
) -> list[Path]:
    """Bracoid artifact for the class representative, brace + solution
    artifacts for every regular member."""
    written: list[Path] = []
    rep_member = cls["members"][0]
    ctx, M = rebuilder.subgroup(rep_member)
    bracoid = bracoid_from_subgroup(ctx, M)
    path = out_dir / f"{cls['label']}-bracoid.json"
    path.write_text(_dump_canonical(bracoid.to_json_dict()))
    written.append(path)
    written.extend(_export_member_braces(cls, out_dir, rebuilder))
    err.write(f"  {cls['label']}: wrote {len(written)} artifact file(s)\n")
    return written


def _export_member_braces(cls: dict, out_dir: Path, rebuilder: _MemberRebuilder) -> list[Path]:
    written: list[Path] = []
    for member in cls["members"]:
        if not member["regular"]:
            continue
        ctx, M = rebuilder.subgroup(member)
        brace = brace_from_regular(ctx, M)
        bpath = out_dir / f"{member['label']}-brace.json"
        bpath.write_text(_dump_canonical(brace.to_json_dict()))
        ypath = out_dir / f"{member['label']}-ybe.json"
        ypath.write_text(_dump_canonical(ybe_solution(brace).to_json_dict()))
        written.extend([bpath, ypath])
    return written


def cmd_enumerate(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    cfg.validate()
    cfg.cache_dir.mkdir(parents=True, exist_ok=True)
    rows: list[dict] = []
    payloads: list[dict] = []
    new_seconds: dict[str, float] = {}
    for degree in cfg.degrees:
        path = _degree_path(cfg.cache_dir, degree)
        payload = _read_payload(path)
        if payload is not None and _cache_satisfies(payload, cfg):
            err.write(f"degree {degree}: cache hit ({path.name})\n")
        else:
            started = time.perf_counter()
            census = build_degree_census(
                degree,
                node_budget=cfg.node_budget,
                time_budget=cfg.time_budget,
                skip_ac=cfg.skip_ac,
                skip_bc=cfg.skip_bc,
            )
            elapsed = round(time.perf_counter() - started, 3)
            new_seconds[str(degree)] = elapsed
            payload = _census_payload(census, cfg)
            path.write_text(_dump_canonical(payload))
            err.write(f"degree {degree}: computed in {elapsed}s -> {path.name}\n")
            if census.row.partial:
                err.write(f"degree {degree}: budget or skip left cells unknown\n")
        rows.append(payload["row"])
        payloads.append(payload)
    if new_seconds:
        _merge_timings(cfg.cache_dir, new_seconds)
    _emit_rows(rows, cfg.fmt, out)
    if cfg.list_classes:
        for payload in payloads:
            err.write(f"degree {payload['degree']} classes:\n")
            _print_classes(payload, err)
    if cfg.emit_actions:
        actions_dir = cfg.cache_dir / "actions"
        actions_dir.mkdir(parents=True, exist_ok=True)
        for payload in payloads:
            rebuilder = _MemberRebuilder(payload["degree"])
            count = 0
            for cls in payload["classes"]:
                count += len(_export_member_braces(cls, actions_dir, rebuilder))
            err.write(f"degree {payload['degree']}: wrote {count} action file(s)\n")
    return 0


def _require_payload(cfg: RunConfig, degree: int) -> dict:
    path = _degree_path(cfg.cache_dir, degree)
    payload = _read_payload(path)
    if payload is None:
        raise LookupError(
            f"no usable results for degree {degree} at {path}; run "
            f"`hgcensus enumerate --degrees {degree}` first"
        )
    return payload


def cmd_diff(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    matched = mismatched = unknown = disputed = 0
    for degree in cfg.degrees:
        payload = _require_payload(cfg, degree)
        row = payload["row"]
        reference: dict[str, Optional[int]]
        if degree <= MAX_EXPECTED_DEGREE:
            exp = expected_row(degree)
            reference = {c: getattr(exp, c) for c in DegreeReportRow.CELLS}
        else:
            reference = {c: None for c in DegreeReportRow.CELLS}
        row_notes = []
        for cell in DegreeReportRow.CELLS:
            got = row[cell]
            want = reference[cell]
            if want is None:
                unknown += 1
                row_notes.append(f"{cell}: no reference (computed {_cell_str(got)})")
            elif got is None:
                unknown += 1
                row_notes.append(f"{cell}: not computed (reference {want})")
            elif got == want:
                matched += 1
            elif is_disputed(degree, cell):
                disputed += 1
                note = DISPUTED[(degree, cell)]
                row_notes.append(
                    f"{cell}: DISPUTED reference={want} computed={got} ({note})"
                )
            else:
                mismatched += 1
                row_notes.append(f"{cell}: MISMATCH reference={want} computed={got}")
        if row_notes:
            out.write(f"degree {degree}:\n")
            for line in row_notes:
                out.write(f"  {line}\n")
        else:
            out.write(f"degree {degree}: all cells match\n")
    out.write(
        f"summary: {matched} matched, {mismatched} mismatched, "
        f"{disputed} disputed, {unknown} unknown\n"
    )
    return 1 if mismatched else 0


def cmd_actions(
    cfg: RunConfig,
    degree: int,
    label: Optional[str] = None,
    all_braces: bool = False,
    out=None,
    err=None,
) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    payload = _require_payload(cfg, degree)
    actions_dir = cfg.cache_dir / "actions"
    actions_dir.mkdir(parents=True, exist_ok=True)
    rebuilder = _MemberRebuilder(degree)
    written: list[Path] = []
    if all_braces:
        for cls in payload["classes"]:
            written.extend(_export_member_braces(cls, actions_dir, rebuilder))
    else:
        for cls in payload["classes"]:
            if cls["label"] == label:
                written.extend(_export_class_actions(cls, actions_dir, rebuilder, err))
                break
        else:
            known = ", ".join(c["label"] for c in payload["classes"])
            raise LookupError(
                f"no class labeled {label!r} at degree {degree}; known labels: {known}"
            )
    for path in written:
        out.write(f"{path}\n")
    return 0


def cmd_verify_2pq(p: int, q: int, out=None) -> int:
    out = out or sys.stdout
    fam = build_family(p, q)
    out.write(
        f"family p={p} q={q}: degree {2 * p * q}, {len(fam.members)} group types, "
        f"q divides p-1: {'yes' if fam.k is not None else 'no'}\n"
    )
    four = witness_four_types(fam)
    for name in sorted(four):
        rep = four[name]
        out.write(
            f"  {name}: host={rep.host} order={rep.subgroup.order} "
            f"normalizer={rep.normalizer_order} type={rep.abstract}\n"
        )
    series = witness_M_series(fam)
    for rep in series:
        out.write(
            f"  {rep.name}: host={rep.host} order={rep.subgroup.order} "
            f"type={rep.abstract} stabilizer-matched\n"
        )
    out.write("all witnesses verified\n")
    return 0


def _group_summary(g: CayleyGroup) -> str:
    t = g.as_table()
    mul = t.mul
    n = t.order
    abelian = bool(np.array_equal(mul, mul.T))
    orders = np.ones(n, dtype=np.int64)
    cur = np.arange(n)
    base = np.arange(n)
    for _ in range(n):
        unfinished = cur != 0
        if not unfinished.any():
            break
        cur[unfinished] = mul[cur[unfinished], base[unfinished]]
        orders[unfinished] += 1
    exponent = int(np.lcm.reduce(orders))
    center = int(sum(1 for a in range(n) if np.array_equal(mul[a], mul[:, a])))
    return (
        f"{g.name}  order={n} abelian={'yes' if abelian else 'no'} "
        f"exponent={exponent} center={center}"
    )


def cmd_catalog_list(order: int, out=None) -> int:
    out = out or sys.stdout
    for g in groups_of_order(order):
        out.write(_group_summary(g) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="hgcensus",
        description="Census of structures on transitive holomorph subgroups.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def add_cache(p):
        p.add_argument(
            "--cache-dir",
            type=Path,
            default=None,
            help=f"result cache directory (default ${CACHE_ENV} or ./{DEFAULT_CACHE})",
        )

    pe = sub.add_parser("enumerate", help="run the census over degrees")
    pe.add_argument("--degrees", required=True, help='e.g. "8", "2-12", "4,6,8"')
    pe.add_argument("--format", dest="fmt", choices=("json", "csv", "md"), default="md")
    pe.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    pe.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET)
    pe.add_argument("--skip-ac", action="store_true", help="leave the AC columns unknown")
    pe.add_argument("--skip-bc", action="store_true", help="leave the BC column unknown")
    pe.add_argument("--list-classes", action="store_true", help="print per-class detail")
    pe.add_argument(
        "--emit-actions", action="store_true", help="also export brace/solution files"
    )
    add_cache(pe)

    pd = sub.add_parser("diff", help="compare cached results with the reference table")
    pd.add_argument("--degrees", required=True)
    add_cache(pd)

    pa = sub.add_parser("actions", help="export bracoid/brace/solution artifacts")
    pa.add_argument("--degree", type=int, required=True)
    target = pa.add_mutually_exclusive_group(required=True)
    target.add_argument("--class", dest="label", help="class label from the cache")
    target.add_argument(
        "--all-braces",
        action="store_true",
        help="braces + solutions for every regular record of the degree",
    )
    add_cache(pa)

    pv = sub.add_parser("verify-2pq", help="verify the order-2pq witness subgroups")
    pv.add_argument("--p", type=int, required=True)
    pv.add_argument("--q", type=int, required=True)

    pc = sub.add_parser("catalog", help="inspect the group catalog")
    csub = pc.add_subparsers(dest="catalog_command", required=True)
    pcl = csub.add_parser("list", help="list the group types of one order")
    pcl.add_argument("--order", type=int, required=True)

    return ap


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cache_dir = args.cache_dir if args.cache_dir is not None else _default_cache_dir()
    cfg = RunConfig(
        degrees=parse_degrees(args.degrees) if hasattr(args, "degrees") else [],
        cache_dir=cache_dir,
    )
    for name in ("fmt", "node_budget", "time_budget", "skip_ac", "skip_bc",
                 "list_classes", "emit_actions"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    return cfg


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "enumerate":
            return cmd_enumerate(_config_from_args(args))
        if args.command == "diff":
            return cmd_diff(_config_from_args(args))
        if args.command == "actions":
            cfg = RunConfig(degrees=[args.degree], cache_dir=args.cache_dir or _default_cache_dir())
            return cmd_actions(cfg, args.degree, label=args.label, all_braces=args.all_braces)
        if args.command == "verify-2pq":
            return cmd_verify_2pq(args.p, args.q)
        if args.command == "catalog":
            return cmd_catalog_list(args.order)
    except (StructureError, UnsupportedOrderError, LookupError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"consistency error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable command dispatch")


if __name__ == "__main__":
    sys.exit(main())


__all__ = [
    "ENGINE_VERSION",
    "SCHEMA_VERSION",
    "CACHE_ENV",
    "RunConfig",
    "parse_degrees",
    "build_parser",
    "cmd_enumerate",
    "cmd_diff",
    "cmd_actions",
    "cmd_verify_2pq",
    "cmd_catalog_list",
    "main",
]
