"""Command-line front end.

Exit status: 0 on success, 2 when a verification fails, 1 on usage or input
errors. Human-readable results go to stdout (JSON with ``--emit json``),
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .admissible import DEFAULT_SEARCH_BUDGET, AdmissibleTriple, cstar_search
from .construct import (
    FormulaParams,
    build_extremal,
    build_Hn,
    erdos_gallai_bound,
    ex_formula,
    g_formula,
    mixed_ex_formula,
    zhu_chen_formula,
)
from .families import (
    BRUTEFORCE_MAX_DELTA,
    BRUTEFORCE_MAX_NU,
    PK_DEFAULT_BUDGET,
    PK_EXHAUSTIVE_MAX_K,
    FeasibilityError,
    enumerate_Pk,
    f_bruteforce,
    f_value,
)
from .graph6 import Graph6Error, encode, read_graph6
from .verify import DEFAULT_PACKING_BUDGET, explore_small_g, is_Fk_free, max_disjoint_Fk, verify_certificate

log = logging.getLogger("friendship_turan")

COMMANDS = ("fval", "pk", "cstar", "construct", "formula", "verify", "explore")


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    k: int | None = None
    t: int | None = None
    n: int | None = None
    nu: int | None = None
    delta: int | None = None
    inp: str | None = None
    out: str | None = None
    emit: str = "text"
    threads: int = 1
    budget: int | None = None
    symmetry: bool = True
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")

    def need(self, *names: str) -> None:
        missing = [f"--{x}" for x in names if getattr(self, x) is None]
        if missing:
            raise UsageError(f"{self.command} needs {' '.join(missing)}")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser, *flags: str) -> None:
    for f in flags:
        p.add_argument(f"--{f}", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="friendship-turan", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def emit_flags(p):
        p.add_argument("--emit", choices=("text", "graph6", "json"), default="text")
        p.add_argument("--out", help="write the result here instead of stdout")

    p = sub.add_parser("fval", help="Chvátal–Hanson f(nu, delta)")
    _common(p, "nu", "delta")
    p.add_argument("--bruteforce", action="store_true", help="also run the exhaustive check")
    emit_flags(p)

    p = sub.add_parser("pk", help="enumerate P_k up to isomorphism")
    _common(p, "k", "budget")
    emit_flags(p)

    p = sub.add_parser("cstar", help="exact c_k*(t) with all optimizer classes")
    _common(p, "k", "t", "threads", "budget")
    p.add_argument("--no-symmetry-pruning", action="store_true")
    p.add_argument("--pk-budget", type=int, default=PK_DEFAULT_BUDGET)
    emit_flags(p)

    p = sub.add_parser("construct", help="build H_n(P,Q,R) or K_t join H_{n-t}")
    _common(p, "k", "t", "n")
    p.add_argument("--in", dest="inp", help="certificate JSON supplying the triple")
    p.add_argument("--kind", choices=("hn", "extremal"), default="hn")
    p.add_argument("--index", type=int, default=0, help="which optimizer of the certificate")
    emit_flags(p)

    p = sub.add_parser("formula", help="closed-form evaluators")
    p.add_argument("which", choices=("ex", "g", "mixed", "zhu-chen", "erdos-gallai", "f"))
    _common(p, "k", "t", "n")
    p.add_argument("--cstar", type=int, help="c_k*(t); computed by search when omitted")
    p.add_argument("--ell", help="comma-separated nonincreasing friendship sizes (mixed)")
    emit_flags(p)

    p = sub.add_parser("verify", help="independent verification")
    p.add_argument("what", choices=("free", "packing", "certificate"))
    _common(p, "k", "n", "budget")
    p.add_argument("--in", dest="inp", required=True)
    emit_flags(p)

    p = sub.add_parser("explore", help="exhaustive small-n maximum of t e(H) + N(K3, H)")
    _common(p, "k", "t", "n")
    emit_flags(p)
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    opts = {key: v for key, v in vars(ns).items() if key not in RunConfig.__dataclass_fields__}
    return RunConfig(
        command=ns.command,
        k=getattr(ns, "k", None),
        t=getattr(ns, "t", None),
        n=getattr(ns, "n", None),
        nu=getattr(ns, "nu", None),
        delta=getattr(ns, "delta", None),
        inp=getattr(ns, "inp", None),
        out=getattr(ns, "out", None),
        emit=getattr(ns, "emit", "text"),
        threads=getattr(ns, "threads", None) or 1,
        budget=getattr(ns, "budget", None),
        symmetry=not getattr(ns, "no_symmetry_pruning", False),
        options=opts,
    )


def _write(cfg: RunConfig, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _cmd_fval(cfg: RunConfig) -> None:
    cfg.need("nu", "delta")
    value = f_value(cfg.nu, cfg.delta)
    out = {"nu": cfg.nu, "delta": cfg.delta, "value": value}
    if cfg.options.get("bruteforce"):
        bf, witness = f_bruteforce(cfg.nu, cfg.delta)
        out.update(bruteforce=bf, witness=encode(witness))
        if bf != value:
            _write(cfg, json.dumps(out) if cfg.emit == "json" else f"{value} (brute force {bf})")
            raise VerificationFailed("formula and brute force disagree")
    _write(cfg, json.dumps(out) if cfg.emit == "json" else str(value))


def _cmd_pk(cfg: RunConfig) -> None:
    cfg.need("k")
    fam = enumerate_Pk(cfg.k, budget=cfg.budget or PK_DEFAULT_BUDGET)
    if not fam.exhaustive:
        log.warning("P_%d enumeration hit its budget; the list may be incomplete", cfg.k)
    if cfg.emit == "json":
        _write(cfg, fam.to_json())
    else:
        _write(cfg, fam.graph6_lines() or "")


def _cstar(cfg: RunConfig):
    fam = enumerate_Pk(cfg.k, budget=cfg.options.get("pk_budget", PK_DEFAULT_BUDGET))
    res = cstar_search(
        cfg.k,
        cfg.t,
        fam,
        symmetry=cfg.symmetry,
        budget=cfg.budget or DEFAULT_SEARCH_BUDGET,
        threads=cfg.threads,
        allow_partial_family=True,
    )
    log.info("search took %.2fs", res.stats["wall_time"])
    return res


def _cmd_cstar(cfg: RunConfig) -> None:
    cfg.need("k", "t")
    res = _cstar(cfg)
    if cfg.emit == "json" or cfg.out:
        _write(cfg, res.to_json())
    else:
        kind = "exact" if res.exhaustive else "lower bound"
        _write(cfg, f"c_{cfg.k}*({cfg.t}) = {res.value} ({kind}; {len(res.optimizers)} optimizer classes)")


def _triple(cfg: RunConfig) -> tuple[AdmissibleTriple, int, int]:
    if cfg.inp:
        data = json.loads(_read(cfg.inp))
        k, t = int(data["k"]), int(data["t"])
        try:
            item = data["optimizers"][cfg.options.get("index", 0)]
        except IndexError as exc:
            raise UsageError("certificate has no optimizer at that index") from exc
        return AdmissibleTriple.from_dict(item, k), k, int(data["value"])
    cfg.need("k", "t")
    res = _cstar(cfg)
    return res.optimizers[0], cfg.k, res.value


def _cmd_construct(cfg: RunConfig) -> None:
    cfg.need("n")
    tr, k, _ = _triple(cfg)
    if cfg.t is None and cfg.inp:
        cfg.t = int(json.loads(_read(cfg.inp))["t"])
    if cfg.options.get("kind") == "extremal":
        G = build_extremal(tr, cfg.t, cfg.n)
        payload = {"graph6": encode(G), "n": G.n, "edges": G.edge_count(), "t": cfg.t, "k": k}
        text = json.dumps(payload, indent=2) if cfg.emit == "json" else encode(G)
    else:
        rep = build_Hn(tr, cfg.n)
        text = rep.to_json() if cfg.emit == "json" else encode(rep.graph)
    _write(cfg, text)


def _cmd_formula(cfg: RunConfig) -> None:
    which = cfg.options["which"]
    if which == "f":
        cfg.need("k")
        value = f_value(cfg.k - 1, cfg.k - 1)
    elif which == "zhu-chen":
        cfg.need("k", "n")
        value = zhu_chen_formula(cfg.k, cfg.n)
    elif which == "erdos-gallai":
        cfg.need("k", "n")
        value = erdos_gallai_bound(cfg.k, cfg.n)
    else:
        cfg.need("t", "n")
        ells = None
        if which == "mixed":
            if not cfg.options.get("ell"):
                raise UsageError("mixed needs --ell")
            ells = tuple(int(x) for x in cfg.options["ell"].split(","))
            cfg.k = ells[-1]
        cfg.need("k")
        cstar = cfg.options.get("cstar")
        if cstar is None:
            cstar = _cstar(cfg).value
        p = FormulaParams(cfg.k, cfg.t, cfg.n, cstar=cstar, ell_list=ells)
        value = {"ex": ex_formula, "g": g_formula, "mixed": mixed_ex_formula}[which](p)
    if cfg.emit == "json":
        _write(cfg, json.dumps({"formula": which, "k": cfg.k, "t": cfg.t, "n": cfg.n, "value": value}))
    else:
        _write(cfg, str(value))


def _graphs(cfg: RunConfig):
    try:
        return read_graph6(_read(cfg.inp))
    except Graph6Error as exc:
        raise UsageError(f"malformed graph6 input: {exc}") from exc


def _cmd_verify(cfg: RunConfig) -> None:
    what = cfg.options["what"]
    if what == "certificate":
        cfg.need("n")
        report = verify_certificate(_read(cfg.inp), cfg.n)
        _write(cfg, report.to_json() if cfg.emit == "json" else
               "\n".join(f"{'PASS' if c['pass'] else 'FAIL'} {c['check']}" for c in report.checks))
        if not report.passed:
            raise VerificationFailed(f"certificate rejected: {', '.join(report.failures())}")
        return
    cfg.need("k")
    results = []
    ok = True
    for idx, G in enumerate(_graphs(cfg)):
        if what == "free":
            cert = is_Fk_free(G, cfg.k)
            ok &= cert.free
            results.append({"check": f"F{cfg.k}-free", "pass": cert.free, "details": {"graph": idx, **cert.to_dict()}})
        else:
            count, witness, exact = max_disjoint_Fk(G, cfg.k, budget=cfg.budget or DEFAULT_PACKING_BUDGET)
            ok &= exact
            results.append({"check": "packing", "pass": exact,
                            "details": {"graph": idx, "count": count, "exact": exact,
                                        "copies": [[c, [list(e) for e in M]] for c, M in witness.copies]}})
    if cfg.emit == "json":
        _write(cfg, json.dumps(results, indent=2))
    else:
        lines = []
        for r in results:
            d = r["details"]
            if what == "free":
                lines.append(f"graph {d['graph']}: " + ("free" if d["free"] else f"not free, center {d['center']}"))
            else:
                lines.append(f"graph {d['graph']}: {d['count']} disjoint copies ({'exact' if d['exact'] else 'lower bound'})")
        _write(cfg, "\n".join(lines))
    if not ok:
        raise VerificationFailed(f"verify {what} failed")


def _cmd_explore(cfg: RunConfig) -> None:
    cfg.need("k", "t", "n")
    value, graphs, note = explore_small_g(cfg.k, cfg.t, cfg.n)
    if cfg.emit == "json":
        _write(cfg, json.dumps({"k": cfg.k, "t": cfg.t, "n": cfg.n, "value": value,
                                "maximizers": [encode(G) for G in graphs], "note": note}, indent=2))
    else:
        _write(cfg, f"{value}\n" + "".join(encode(G) + "\n" for G in graphs))
    print(note, file=sys.stderr)


HANDLERS = {
    "fval": _cmd_fval,
    "pk": _cmd_pk,
    "cstar": _cmd_cstar,
    "construct": _cmd_construct,
    "formula": _cmd_formula,
    "verify": _cmd_verify,
    "explore": _cmd_explore,
}


def run(cfg: RunConfig) -> int:
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            HANDLERS[cfg.command](cfg)
    except VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 2
    except FeasibilityError as exc:
        print(
            f"error: {exc} (caps: f brute force nu<={BRUTEFORCE_MAX_NU}, delta<={BRUTEFORCE_MAX_DELTA}; "
            f"exhaustive P_k for k<={PK_EXHAUSTIVE_MAX_K})",
            file=sys.stderr,
        )
        return 1
    except (UsageError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(message)s", stream=sys.stderr)
    try:
        cfg = _config(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
