"""Command-line front end.

Exit codes: 0 success, 1 engine/oracle contradiction in ``check``,
2 precision shortfall (certified digits are still printed), 3 domain error,
4 parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from typing import TextIO

from flint import arb

from . import cache
from .arith import PrecisionContext, euler_phi
from .constants import CONSTANTS, named_constant
from .engine import MemoStore, choose_r, divisor_tuples, zeta_classes
from .errors import DomainError, ParseError
from .formatting import certify, decimal_string, format_digit_blocks, format_latex
from .group import build_structure, count_cyclic_subgroups, count_cyclic_subgroups_direct
from .lfunc import as_fraction
from .oracle import DEFAULT_LIMIT, enclose, zeta_class_truncated
from .witt import euler_products_rational, prepare_inputs

log = logging.getLogger("eulerprods")

EXIT_OK, EXIT_CONTRADICTION, EXIT_SHORTFALL, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    command: str
    q: int | None = None
    s: str | None = None
    decimals: int = 100
    P: int | None = None
    limit: int = DEFAULT_LIMIT
    num: str | None = None
    den: str | None = None
    name: str | None = None
    qmax: int = 30
    verbosity: int = 1
    latex: bool = False
    json: bool = False
    cache: str | None = None
    out: TextIO = field(default=sys.stdout, repr=False)

    def __post_init__(self):
        if self.decimals < 1:
            raise DomainError(f"decimals must be >= 1, got {self.decimals}")
        if self.verbosity not in (0, 1, 2):
            raise DomainError(f"verbosity must be 0, 1 or 2, got {self.verbosity}")
        if self.s is not None:
            try:
                as_fraction(self.s)
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"cannot read s = {self.s!r} as a rational number") from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbosity", type=int, choices=(0, 1, 2), default=1)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--latex", action="store_true", help="align-ready digit blocks")
    common.add_argument("--cache", metavar="FILE", help="Gamma vector store (decimal strings)")

    p = _Parser(prog="eulerprods", description="Certified Euler products over primes in residue classes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    vs = sub.add_parser("vs", parents=[common], help="zeta_P(s; q, A) for every lattice-invariant class")
    vs.add_argument("q", type=int)
    vs.add_argument("s")
    vs.add_argument("decimals", type=int)
    vs.add_argument("P", type=int, nargs="?", default=100)

    pr = sub.add_parser("prods", parents=[common], help="prod F(1/p)/G(1/p) for every class")
    pr.add_argument("q", type=int)
    pr.add_argument("--num", required=True, help="F, e.g. '1-2*x-7*x^2-4*x^3'")
    pr.add_argument("--den", required=True, help="G, e.g. '1-2*x+x^2'")
    pr.add_argument("decimals", type=int)
    pr.add_argument("P", type=int, nargs="?", default=100)

    co = sub.add_parser("constant", parents=[common], help="named constant")
    co.add_argument("name", choices=sorted(CONSTANTS))
    co.add_argument("decimals", type=int)

    ch = sub.add_parser("check", parents=[common], help="engine against direct truncation")
    ch.add_argument("q", type=int)
    ch.add_argument("s")
    ch.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    ch.add_argument("--P", type=int, default=100)
    ch.add_argument("--decimals", type=int, default=30)

    cn = sub.add_parser("count", parents=[common], help="number of cyclic subgroups, two ways")
    cn.add_argument("q", type=int)

    st = sub.add_parser("structure", parents=[common], help="subgroups, classes and characters")
    st.add_argument("q", type=int)

    be = sub.add_parser("bench", parents=[common], help="timing table for s=2")
    be.add_argument("--qmax", type=int, default=30)
    be.add_argument("--decimals", type=int, default=100)
    be.add_argument("--P", type=int, default=300)
    return p


def parse_args(argv: list[str] | None = None, out: TextIO = sys.stdout) -> RunConfig:
    ns = build_parser().parse_args(argv)
    fields = {k: v for k, v in vars(ns).items() if v is not None}
    return RunConfig(out=out, **fields)


def _ball_record(residues, x: arb, decimals: int) -> dict:
    return {
        "class_residues": list(residues),
        "midpoint_decimal": decimal_string(x, decimals + 10),
        "radius_decimal": x.rad().str(5, radius=False),
    }


def _show(cfg: RunConfig, x: arb) -> str:
    return format_latex(x, cfg.decimals) if cfg.latex else format_digit_blocks(x, cfg.decimals)


def _shortfall(cfg: RunConfig, *balls: arb) -> bool:
    return any((c := certify(b, cfg.decimals)) is None or c.shortfall for b in balls)


def _emit(cfg: RunConfig, text: str = "") -> None:
    print(text, file=cfg.out)


def _class_rows(cfg: RunConfig, values, params: dict) -> int:
    short = False
    if cfg.json:
        rows = []
        for v in values:
            rec = _ball_record(v.residues, v.full, cfg.decimals)
            rec["tail"] = _ball_record(v.residues, v.tail, cfg.decimals)
            rec["parameters"] = params
            rows.append(rec)
        _emit(cfg, json.dumps(rows, indent=1))
    for v in values:
        short |= _shortfall(cfg, v.full, v.tail)
        if cfg.json:
            continue
        label = "{" + ", ".join(map(str, v.residues)) + "}"
        _emit(cfg, f"class {label}")
        _emit(cfg, f"  full: {_show(cfg, v.full)}")
        _emit(cfg, f"  tail: {_show(cfg, v.tail)}")
    return EXIT_SHORTFALL if short else EXIT_OK


def _memo(cfg: RunConfig, q: int, P: int) -> MemoStore:
    memo = MemoStore()
    if cfg.cache:
        n = cache.load_into(cfg.cache, q, P, memo)
        log.info("loaded %d Gamma vectors from %s", n, cfg.cache)
    return memo


def _save(cfg: RunConfig, q: int, P: int, memo: MemoStore) -> None:
    if cfg.cache:
        cache.save_from(cfg.cache, q, P, memo)
        log.info("saved %d Gamma vectors to %s", len(memo.gamma_cache), cfg.cache)


def cmd_vs(cfg: RunConfig) -> int:
    P = cfg.P or 100
    memo = _memo(cfg, cfg.q, P)
    t0 = time.perf_counter()
    T = zeta_classes(cfg.q, cfg.s, cfg.decimals, P=P, memo=memo)
    log.info("q=%d s=%s P=%d r=%d, %d tuples, %.3f s", T.q, T.s, T.P, T.r, T.n_tuples, time.perf_counter() - t0)
    _save(cfg, cfg.q, P, memo)
    params = {"q": T.q, "s": str(T.s), "P": T.P, "r": T.r, "decimals": cfg.decimals}
    return _class_rows(cfg, T.values, params)


def cmd_prods(cfg: RunConfig) -> int:
    # the run may raise P to 2 beta; the cache must be keyed by the P actually used
    F, G, _, P = prepare_inputs(cfg.num, cfg.den, cfg.P or 100)
    memo = _memo(cfg, cfg.q, P)
    t0 = time.perf_counter()
    T = euler_products_rational(cfg.q, F, G, cfg.decimals, P_init=P, memo=memo)
    log.info(
        "q=%d F=%s G=%s beta=%s P=%d r=%d J=%d, %.3f s",
        T.q, T.F, T.G, T.beta, T.P, T.r, T.J, time.perf_counter() - t0,
    )
    log.debug("|log I| bound %s", T.log_error)
    _save(cfg, cfg.q, T.P, memo)
    params = {
        "q": T.q, "F": str(T.F), "G": str(T.G), "P": T.P, "r": T.r, "J": T.J,
        "beta": str(T.beta), "decimals": cfg.decimals,
    }
    return _class_rows(cfg, T.values, params)


def cmd_constant(cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    x = named_constant(cfg.name, cfg.decimals)
    log.info("%s to %d decimals in %.3f s", cfg.name, cfg.decimals, time.perf_counter() - t0)
    if cfg.json:
        rec = _ball_record([], x, cfg.decimals)
        rec.pop("class_residues")
        rec["parameters"] = {"name": cfg.name, "decimals": cfg.decimals}
        _emit(cfg, json.dumps(rec, indent=1))
    else:
        _emit(cfg, f"{cfg.name} = {_show(cfg, x)}")
    return EXIT_SHORTFALL if _shortfall(cfg, x) else EXIT_OK


def cmd_check(cfg: RunConfig) -> int:
    s = as_fraction(cfg.s)
    P = cfg.P or 100
    T = zeta_classes(cfg.q, s, cfg.decimals, P=P)
    bad = 0
    rows = []
    for v in T.values:
        ov, tail = zeta_class_truncated(cfg.q, s, v.residues, 2, cfg.limit, PrecisionContext(cfg.decimals))
        box = enclose(ov, tail, one_sided=True)
        ok = box.overlaps(v.full)
        bad += not ok
        rows.append((v, box, ok))
    if cfg.json:
        out = [
            {
                "class_residues": list(v.residues),
                "engine": _ball_record(v.residues, v.full, cfg.decimals),
                "oracle": _ball_record(v.residues, box, cfg.decimals),
                "agree": ok,
                "parameters": {"q": cfg.q, "s": str(s), "P": P, "limit": cfg.limit},
            }
            for v, box, ok in rows
        ]
        _emit(cfg, json.dumps(out, indent=1))
    else:
        _emit(cfg, f"q={cfg.q} s={s} P={P} oracle limit={cfg.limit}")
        for v, box, ok in rows:
            label = "{" + ", ".join(map(str, v.residues)) + "}"
            _emit(cfg, f"class {label}: {'agree' if ok else 'CONTRADICTION'}")
            _emit(cfg, f"  engine: {format_digit_blocks(v.full, cfg.decimals)}")
            _emit(cfg, f"  oracle: {format_digit_blocks(box, cfg.decimals)}")
    return EXIT_CONTRADICTION if bad else EXIT_OK


def cmd_count(cfg: RunConfig) -> int:
    a = count_cyclic_subgroups(cfg.q)
    b = count_cyclic_subgroups_direct(cfg.q)
    if cfg.json:
        _emit(cfg, json.dumps({"q": cfg.q, "formula": a, "enumeration": b, "agree": a == b}))
    else:
        _emit(cfg, f"q={cfg.q}: formula {a}, enumeration {b}" + ("" if a == b else "  MISMATCH"))
    return EXIT_OK if a == b else EXIT_CONTRADICTION


def cmd_structure(cfg: RunConfig) -> int:
    S = build_structure(cfg.q)
    if cfg.json:
        _emit(
            cfg,
            json.dumps(
                {
                    "q": S.q,
                    "phi": S.phi,
                    "exponent": S.exponent,
                    "subgroups": [list(H.elements) for H in S.subgroups],
                    "classes": [list(A.elements) for A in S.classes],
                    "characters": [
                        {"label": list(c.label), "exponent": c.exponent, "values": [c.exponent_of(a) for a in S.units]}
                        for c in S.characters
                    ],
                    "annihilators": [list(a) for a in S.annihilators],
                }
            ),
        )
        return EXIT_OK
    _emit(cfg, f"q={S.q}  phi={S.phi}  exp G={S.exponent}  cyclic subgroups={S.n_classes}")
    for i, (H, A) in enumerate(zip(S.subgroups, S.classes)):
        _emit(cfg, f"  [{i}] subgroup {list(H.elements)}  class {list(A.elements)}  annihilator {list(S.annihilators[i])}")
    _emit(cfg, "characters (chi(a) = exp(2 pi i k / exp G), k shown; units " + " ".join(map(str, S.units)) + ")")
    for c in S.characters:
        ks = " ".join(f"{c.exponent_of(a):>2}" for a in S.units)
        _emit(cfg, f"  chi{list(c.label)}: {ks}")
    return EXIT_OK


def cmd_bench(cfg: RunConfig) -> int:
    rows = []
    for q in range(3, cfg.qmax + 1):
        if q % 4 == 2:
            continue
        S = build_structure(q)
        # s=2 throughout, like the reference table
        r = choose_r(S.n_classes, S.exponent, 2, cfg.P or 300, cfg.decimals)
        t0 = time.perf_counter()
        zeta_classes(q, 2, cfg.decimals, P=cfg.P or 300, r=r)
        ms = (time.perf_counter() - t0) * 1000
        rows.append({
            "q": q, "phi": euler_phi(q), "tuples": len(divisor_tuples(S.exponent, r)),
            "classes": S.n_classes, "r": r, "ms": round(ms, 1),
        })
    if cfg.json:
        _emit(cfg, json.dumps(rows, indent=1))
    else:
        _emit(cfg, f"{'q':>5} {'phi(q)':>7} {'#d_i':>6} {'|G#|':>5} {'r':>3} {'time(ms)':>10}")
        for row in rows:
            _emit(cfg, f"{row['q']:>5} {row['phi']:>7} {row['tuples']:>6} {row['classes']:>5} {row['r']:>3} {row['ms']:>10}")
    return EXIT_OK


COMMANDS = {
    "vs": cmd_vs,
    "prods": cmd_prods,
    "constant": cmd_constant,
    "check": cmd_check,
    "count": cmd_count,
    "structure": cmd_structure,
    "bench": cmd_bench,
}


def run(cfg: RunConfig) -> int:
    level = {0: logging.WARNING, 1: logging.INFO, 2: logging.DEBUG}[cfg.verbosity]
    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)
    try:
        return COMMANDS[cfg.command](cfg)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = parse_args(argv)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
