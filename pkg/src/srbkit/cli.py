"""Command-line front end: roots, arr, srb, verify, freeness.

Exit codes: 0 success, 2 usage or validation error, 3 a theorem-level check
failed, 4 a freeness verdict came back Unknown.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .arrangement import (
    b_gamma,
    catalan_arrangement,
    cone,
    cone_form,
    shi_arrangement,
    ziegler_multiplicity,
)
from .logmod import DEFAULT_SEED, decide_freeness
from .rootsys import UnsupportedRootSystem, build_root_system
from .srb import SrbResult, TheoremFalsified, compute_srb
from .verify import SUITES, run_suites

EXIT_OK, EXIT_USAGE, EXIT_FALSIFIED, EXIT_UNKNOWN = 0, 2, 3, 4
MAX_DEFAULT_K = 2
ARR_KINDS = ("shi", "catalan", "shi-cone", "catalan-cone", "bplus", "bminus", "ziegler")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    family: str
    rank: int
    k: int = 1
    gamma: tuple = ()
    json: bool = False
    out: str | None = None
    suites: list = field(default_factory=list)
    seed: int = DEFAULT_SEED
    extra: dict = field(default_factory=dict)

    def root_system(self):
        try:
            return build_root_system(self.family, self.rank)
        except UnsupportedRootSystem as exc:
            raise UsageError(str(exc)) from None


def _parse_vector(text: str, rank: int) -> tuple:
    try:
        vec = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None
    if len(vec) != rank:
        raise UsageError(f"root vector {text!r} needs {rank} coordinates")
    return vec


def _parse_exponents(text: str) -> list:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"--exponents expects comma-separated integers, got {text!r}") from None


def _parse_gamma(text: str | None, rank: int) -> tuple:
    if not text:
        return ()
    try:
        idx = sorted({int(t) for t in text.split(",") if t.strip()})
    except ValueError:
        raise UsageError(f"--gamma expects 1-based simple-root indices, got {text!r}") from None
    if any(not 1 <= i <= rank for i in idx):
        raise UsageError(f"--gamma indices must lie in 1..{rank}")
    return tuple(i - 1 for i in idx)


def _common(p: argparse.ArgumentParser, with_k: bool = True):
    p.add_argument("--family", required=True, help="root system family letter (A, B, C, D, G)")
    p.add_argument("--rank", required=True, type=int)
    if with_k:
        p.add_argument("-k", type=int, default=1, help="Shi parameter k (default 1)")
        p.add_argument("--allow-large-k", action="store_true", help=f"permit k > {MAX_DEFAULT_K}")
    p.add_argument("--json", action="store_true", help="emit JSON instead of text")
    p.add_argument("--out", metavar="PATH", help="write the result to PATH instead of stdout")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for generic combinations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="srbkit", description="Simple-root bases of extended Shi arrangements.")
    sub = parser.add_subparsers(dest="command", required=True)

    _common(sub.add_parser("roots", help="print a root system"), with_k=False)

    p = sub.add_parser("arr", help="print an arrangement")
    _common(p)
    p.add_argument("--kind", choices=ARR_KINDS, default="shi-cone")
    p.add_argument("--gamma", help="simple-root indices for bplus/bminus, e.g. 1,2")

    _common(sub.add_parser("srb", help="compute SRB+, SRB- and the k-Euler derivation"))

    p = sub.add_parser("verify", help="run verification suites")
    _common(p)
    p.add_argument("--suite", action="append", choices=SUITES + ("all",), required=True,
                   help="suite to run (repeatable, or 'all')")
    p.add_argument("--input", metavar="PATH", help="verify an SRB JSON file instead of recomputing")

    p = sub.add_parser("freeness", help="decide freeness of an edited Shi cone")
    _common(p)
    edit = p.add_mutually_exclusive_group()
    edit.add_argument("--add-root", metavar="VEC", help="add the hyperplane a + kz for the root a")
    edit.add_argument("--delete-root", metavar="VEC", help="delete the hyperplane a - kz for the root a")
    edit.add_argument("--gamma", help="simple-root indices defining B^+ or B^-, with --sign")
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.add_argument("--exponents", help="hypothesized exponents, comma separated (default from theory)")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(
        command=args.command,
        family=args.family.upper(),
        rank=args.rank,
        k=getattr(args, "k", 1),
        json=args.json,
        out=args.out,
        seed=args.seed,
    )
    cfg.root_system()
    if cfg.command != "roots":
        if cfg.k < 1:
            raise UsageError("k must be a positive integer")
        if cfg.k > MAX_DEFAULT_K and not args.allow_large_k:
            raise UsageError(f"k > {MAX_DEFAULT_K} needs --allow-large-k")
    gamma = getattr(args, "gamma", None)
    cfg.gamma = _parse_gamma(gamma, cfg.rank)
    if cfg.command == "verify":
        cfg.suites = list(SUITES) if "all" in args.suite else list(dict.fromkeys(args.suite))
        cfg.extra["input"] = args.input
    if cfg.command == "arr":
        cfg.extra["kind"] = args.kind
    if cfg.command == "freeness":
        cfg.extra.update(add=args.add_root, delete=args.delete_root, sign=args.sign,
                         exponents=args.exponents, has_gamma=gamma is not None)
    return cfg


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def cmd_roots(cfg: RunConfig) -> tuple[int, str]:
    rs = cfg.root_system()
    return EXIT_OK, _dump(rs.to_json()) if cfg.json else rs.to_text()


def cmd_arr(cfg: RunConfig) -> tuple[int, str]:
    rs = cfg.root_system()
    kind = cfg.extra["kind"]
    if kind == "shi":
        arr = shi_arrangement(rs, cfg.k)
    elif kind == "catalan":
        arr = catalan_arrangement(rs, cfg.k)
    elif kind == "shi-cone":
        arr = cone(shi_arrangement(rs, cfg.k))
    elif kind == "catalan-cone":
        arr = cone(catalan_arrangement(rs, cfg.k))
    elif kind == "ziegler":
        arr = ziegler_multiplicity(cone(shi_arrangement(rs, cfg.k)))
    else:
        arr = b_gamma(rs, cfg.k, cfg.gamma, "+" if kind == "bplus" else "-")
    if cfg.json:
        if kind in ("shi", "catalan"):
            data = {"rank": arr.rank, "hyperplanes": [{"root": list(a), "level": j} for a, j in arr.hyperplanes]}
        else:
            data = arr.to_json()
        return EXIT_OK, _dump(data)
    return EXIT_OK, arr.to_text()


def cmd_srb(cfg: RunConfig) -> tuple[int, str]:
    result = compute_srb(cfg.root_system(), cfg.k)
    return EXIT_OK, _dump(result.to_json()) if cfg.json else result.to_text()


def _load_result(path: str) -> SrbResult:
    try:
        return SrbResult.from_json(json.loads(Path(path).read_text()))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read SRB JSON from {path}: {exc}") from None


def cmd_verify(cfg: RunConfig) -> tuple[int, str]:
    rs = cfg.root_system()
    if cfg.extra.get("input"):
        result = _load_result(cfg.extra["input"])
        if (result.rs.family, result.rs.rank, result.k) != (rs.family, rs.rank, cfg.k):
            raise UsageError("input JSON does not match --family/--rank/-k")
    else:
        result = compute_srb(rs, cfg.k)

    def progress(msg: str):
        print(f"[{rs.name} k={cfg.k}] {msg}", file=sys.stderr, flush=True)

    reports = run_suites(result, cfg.suites, seed=cfg.seed, progress=progress)
    if cfg.json:
        text = _dump([r.to_json() for r in reports])
    else:
        text = "\n".join(r.to_text() for r in reports)
    bad = [rec for r in reports for rec in r.failures()]
    if bad:
        first = bad[0]
        print(f"first failing check: {first.statement} witness={json.dumps(first.witness)}",
              file=sys.stderr)
    if any(rec.status == "fail" for rec in bad):
        return EXIT_FALSIFIED, text
    if bad:
        return EXIT_UNKNOWN, text
    return EXIT_OK, text


def cmd_freeness(cfg: RunConfig) -> tuple[int, str]:
    rs = cfg.root_system()
    k, l = cfg.k, rs.rank
    kh = k * rs.coxeter_number
    base = cone(shi_arrangement(rs, k))
    ex = cfg.extra
    edit: dict = {}
    if ex["add"] or ex["delete"]:
        vec = _parse_vector(ex["add"] or ex["delete"], l)
        if vec not in rs.positive_roots:
            raise UsageError(f"{list(vec)} is not a positive root of {rs.name}")
        if ex["add"]:
            arr, exps = base.union([cone_form(vec, -k)]), [1, kh + 1] + [kh] * (l - 1)
            edit = {"add": list(vec)}
        else:
            arr, exps = base.minus([cone_form(vec, k)]), [1, kh - 1] + [kh] * (l - 1)
            edit = {"delete": list(vec)}
    elif ex["has_gamma"]:
        step = 1 if ex["sign"] == "+" else -1
        n = len(cfg.gamma)
        arr, exps = b_gamma(rs, k, cfg.gamma, ex["sign"]), [1] + [kh + step] * n + [kh] * (l - n)
        edit = {"gamma": [i + 1 for i in cfg.gamma], "sign": ex["sign"]}
    else:
        arr, exps = base, [1] + [kh] * l
    if ex["exponents"]:
        exps = _parse_exponents(ex["exponents"])
    if sum(exps) != arr.total_multiplicity():
        raise UsageError(f"exponents sum to {sum(exps)} but the arrangement has {arr.total_multiplicity()} hyperplanes")
    verdict = decide_freeness(arr, exps, seed=cfg.seed)
    data = {"family": rs.family, "rank": l, "k": k, "edit": edit, "hyperplanes": len(arr)}
    data.update(verdict.to_json())
    code = EXIT_UNKNOWN if verdict.status == "Unknown" else EXIT_OK
    return code, _dump(data)


COMMANDS = {"roots": cmd_roots, "arr": cmd_arr, "srb": cmd_srb, "verify": cmd_verify, "freeness": cmd_freeness}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        code, text = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"srbkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TheoremFalsified as exc:
        print(f"srbkit: theorem falsified: {exc}", file=sys.stderr)
        return EXIT_FALSIFIED
    if cfg.out:
        Path(cfg.out).write_text(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code
