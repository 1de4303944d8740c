"""Command line interface: ``starlhd construct | lhd | evaluate | simulate``.

Exit codes: 0 success, 2 invalid input, 3 infeasible construction.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from pathlib import Path

from . import __version__
from .arrays import (
    GeneratorAssignment,
    assignment_from_rays,
    read_csv,
    star_to_noa,
    verify_strength,
)
from .geometry import InfeasibleConstructionError, construct_star
from .guidelines import InfeasibleReport, run_simulation, search_compliant
from .lhd import MIDPOINT, UNIFORM, build_lhd, provenance_json, read_lhd_csv
from .metrics import projection_summary

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3

MANIFEST_SCHEMA = 1


class Infeasible(Exception):
    pass


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def write_atomic(path: Path, text: str) -> str:
    """Write ``text`` via a temporary file and rename; returns its sha256."""
    path.parent.mkdir(parents=True, exist_ok=True)
    data = text.encode()
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return _sha256(data)


def _manifest(command: str, params: dict, seeds: dict, inputs: dict, outputs: dict) -> str:
    return json.dumps(
        {
            "schema_version": MANIFEST_SCHEMA,
            "command": command,
            "parameters": params,
            "seeds": seeds,
            "inputs": inputs,
            "outputs": outputs,
            "version": __version__,
        },
        indent=2,
        sort_keys=True,
    ) + "\n"


def _read(path: str) -> tuple[str, str]:
    data = Path(path).read_bytes()
    return data.decode(), _sha256(data)


def cmd_construct(args) -> int:
    star = construct_star(args.p, args.t, args.t0)
    if args.policy == "compliant":
        gens = search_compliant(star, args.seed, args.max_tries)
        if isinstance(gens, InfeasibleReport):
            raise Infeasible(f"no G1-G3 compliant generators: {gens.reason}")
    else:
        gens = GeneratorAssignment.from_star(star)
    arr = star_to_noa(star, gens)
    out = Path(args.out)
    outputs = {
        "star.json": write_atomic(out / "star.json", json.dumps(star.to_dict(), indent=2) + "\n"),
        "assignment.json": write_atomic(
            out / "assignment.json", json.dumps(gens.to_dict(), indent=2) + "\n"
        ),
        "noa.csv": write_atomic(out / "noa.csv", arr.to_csv()),
    }
    report = verify_strength(arr, 2) if arr.d >= 2 else None
    params = {"p": args.p, "t": args.t, "t0": args.t0, "policy": args.policy,
              "max_tries": args.max_tries}
    write_atomic(out / "manifest.json",
                 _manifest("construct", params, {"seed": args.seed}, {}, outputs))
    exact = report.is_exact if report else True
    print(f"{arr.kind}({arr.n},{'x'.join(map(str, arr.levels))},2) written to {out}"
          f" (mu={star.mu}, exact strength 2: {exact})")
    return EXIT_OK


def cmd_lhd(args) -> int:
    text, h = _read(args.array)
    arr = read_csv(text)
    lhd = build_lhd(arr, args.seed, args.mode)
    out = Path(args.out)
    outputs = {out.name: write_atomic(out, lhd.to_csv())}
    prov = out.with_name(out.stem + ".provenance.json")
    outputs[prov.name] = write_atomic(prov, provenance_json(lhd) + "\n")
    write_atomic(
        out.with_name(out.stem + ".manifest.json"),
        _manifest("lhd", {"mode": args.mode}, {"seed": args.seed},
                  {Path(args.array).name: h}, outputs),
    )
    print(f"{lhd.n}x{lhd.d} LHD written to {out}")
    return EXIT_OK


def _format_rows(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_evaluate(args) -> int:
    text, _ = _read(args.design)
    pts = read_lhd_csv(text)
    k = args.k if args.k is not None else pts.shape[1]
    rows = []
    for s in projection_summary(pts, k):
        rows.append({
            "columns": " ".join(str(c + 1) for c in s.columns),
            "n": s.n, "k": s.d, "mid": repr(s.mid), "aid": repr(s.aid),
        })
    if args.format == "json":
        for r in rows:
            r["mid"], r["aid"] = float(r["mid"]), float(r["aid"])
    body = _format_rows(rows, args.format)
    if args.out:
        write_atomic(Path(args.out), body)
    else:
        sys.stdout.write(body)
    return EXIT_OK


def load_simulation_config(text: str) -> dict:
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"config line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if "p" not in cfg or "configurations" not in cfg:
        raise ValueError("config needs 'p' and 'configurations'")
    return cfg


def cmd_simulate(args) -> int:
    text, h = _read(args.config)
    cfg = load_simulation_config(text)
    p = int(cfg["p"])
    reps = args.reps if args.reps is not None else int(cfg.get("reps", 100))
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 0))
    labelled = []
    for i, c in enumerate(cfg["configurations"], 1):
        try:
            gens = assignment_from_rays(c["generators"], p)
            labelled.append((c.get("label", f"config{i}"), gens))
        except (KeyError, ValueError) as exc:
            raise ValueError(f"configuration {i}: {exc}") from None
    star = labelled[0][1].star
    results = run_simulation(star, labelled, reps, seed)

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["configuration", "replicate", "mid", "aid"])
    for res in results:
        for r, (m, a) in enumerate(zip(res.mid_samples, res.aid_samples), 1):
            w.writerow([res.label, r, repr(m), repr(a)])
    sbuf = io.StringIO()
    sw = csv.writer(sbuf, lineterminator="\n")
    sw.writerow(["configuration", "metric", "q1", "median", "q3"])
    for res in results:
        for metric in ("mid", "aid"):
            sw.writerow([res.label, metric, *map(repr, res.quantiles(metric))])

    out = Path(args.out)
    outputs = {
        "simulation.csv": write_atomic(out / "simulation.csv", buf.getvalue()),
        "summary.csv": write_atomic(out / "summary.csv", sbuf.getvalue()),
    }
    write_atomic(out / "manifest.json",
                 _manifest("simulate", {"p": p, "reps": reps}, {"seed": seed},
                           {Path(args.config).name: h}, outputs))
    print(f"{len(results)} configurations x {reps} replicates written to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="starlhd", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a covering star, generators and its NOA")
    c.add_argument("-p", "--p", type=int, required=True, help="number of base factors")
    c.add_argument("-t", "--t", type=int, required=True, help="ray rank")
    c.add_argument("--t0", type=int, default=None, help="nucleus rank (default t-1)")
    c.add_argument("--policy", choices=["star", "compliant"], default="star",
                   help="generator order: the star's own, or a G1-G3 compliant search")
    c.add_argument("--seed", type=int, default=None, help="shuffle search candidates")
    c.add_argument("--max-tries", type=int, default=100_000)
    c.add_argument("-o", "--out", default=".", help="output directory")
    c.set_defaults(func=cmd_construct)

    l = sub.add_parser("lhd", help="expand an array CSV into a Latin hypercube design")
    l.add_argument("array", help="array CSV (header of level counts, then rows)")
    l.add_argument("--mode", choices=[UNIFORM, MIDPOINT], default=UNIFORM)
    l.add_argument("--seed", type=int, default=0)
    l.add_argument("-o", "--out", default="lhd.csv")
    l.set_defaults(func=cmd_lhd)

    e = sub.add_parser("evaluate", help="MID/AID of every k-dimensional projection")
    e.add_argument("design", help="LHD CSV")
    e.add_argument("-k", "--k", type=int, default=None, help="projection size (default d)")
    e.add_argument("--format", choices=["json", "csv"], default="csv")
    e.add_argument("-o", "--out", default=None)
    e.set_defaults(func=cmd_evaluate)

    s = sub.add_parser("simulate", help="replicate MID/AID study over generator assignments")
    s.add_argument("config", help="JSON config with p and labelled generator lists")
    s.add_argument("--reps", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("-o", "--out", default=".")
    s.set_defaults(func=cmd_simulate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "t0", 0) is None:
        args.t0 = args.t - 1
    try:
        return args.func(args)
    except (InfeasibleConstructionError, Infeasible) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
