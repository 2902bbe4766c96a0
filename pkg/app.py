"""
ghcodes – command-line console for multi-point AG codes on generalized
Hermitian curves.

  params      curve invariants and special places
  points      affine rational points (CSV alpha,beta)
  omega       lattice point set of a divisor (CSV i,j,k)
  code        build C_{v,r,s,t}; summary line `n k goppa_lb degG`
  dual        dual divisor parameters
  table       dimension / dual sweep over v
  gv-compare  rate vs Gilbert-Varshamov sweep over v
  verify      invariant battery; exit 1 on any failure
"""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import nullcontext
from dataclasses import dataclass
from typing import Callable, Sequence, TextIO

from handler.code_handler import DEFAULT_BUDGET
from handler.lattice_handler import DivisorSpec
from pages.codes import show_code, show_dual, show_table
from pages.curve import show_params, show_points
from pages.gv_compare import show_gv_compare
from pages.lattice import show_omega
from pages.verify import show_verify

log = logging.getLogger("ghcodes")

# ───────────────────── config ─────────────────────
LOG_FORMAT = "[%(asctime)s %(levelname)s] %(message)s"

COMMANDS: dict[str, Callable[["RunConfig", TextIO], int]] = {
    "params": show_params,
    "points": show_points,
    "omega": show_omega,
    "code": show_code,
    "dual": show_dual,
    "table": show_table,
    "gv-compare": show_gv_compare,
    "verify": show_verify,
}
SWEEP_COMMANDS = {"table", "gv-compare"}


@dataclass(frozen=True)
class RunConfig:
    command: str
    q: int
    c: int
    v: int = 0
    r: int = 0
    s: int = 0
    t: int = 0
    out: str | None = None
    verbose: int = 0
    seed: int = 0
    prime: bool = False
    check: bool = False
    check_dual: bool = False
    min_dist: bool = False
    budget: int = DEFAULT_BUDGET
    sweep: str | None = None
    quick: bool = False

    @property
    def spec(self) -> DivisorSpec:
        return DivisorSpec(self.v, self.r, self.s, self.t)


# ───────────────────── parser ─────────────────────
def build_parser() -> argparse.ArgumentParser:
    curve = argparse.ArgumentParser(add_help=False)
    curve.add_argument("--q", type=int, required=True, help="prime power q")
    curve.add_argument("--c", type=int, required=True, help="odd extension degree c >= 3")
    curve.add_argument("-v", "--verbose", action="count", default=0)
    curve.add_argument("--out", help="output file (matrix file for `code`)")

    divisor = argparse.ArgumentParser(add_help=False)
    for name in ("v", "r", "s", "t"):
        divisor.add_argument(f"--{name}", type=int, default=0)

    parser = argparse.ArgumentParser(prog="ghcodes", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("params", parents=[curve], help="curve invariants")
    sub.add_parser("points", parents=[curve], help="rational points CSV")

    p = sub.add_parser("omega", parents=[curve, divisor], help="lattice point set CSV")
    p.add_argument("--prime", action="store_true", help="emit Ω′ triples (x^i y^j u^k)")

    p = sub.add_parser("code", parents=[curve, divisor], help="build a code")
    p.add_argument("--check-dual", action="store_true")
    p.add_argument("--min-dist", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="max codewords for the exhaustive distance sweep")

    p = sub.add_parser("dual", parents=[curve, divisor], help="dual parameters")
    p.add_argument("--check", action="store_true", help="build both codes and test duality")

    for name in sorted(SWEEP_COMMANDS):
        p = sub.add_parser(name, parents=[curve, divisor], help=f"{name} sweep over v")
        p.add_argument("--sweep", required=True, metavar="VMIN:VMAX:STEP")

    p = sub.add_parser("verify", parents=[curve], help="run the invariant battery")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quick", action="store_true", help="small battery sizes")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    fields = set(RunConfig.__dataclass_fields__)
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in fields})


# ───────────────────── runner ─────────────────────
def run(config: RunConfig, stdout: TextIO | None = None) -> int:
    """Execute one command; 0 success, 1 verification failure, 2 usage error."""
    stdout = stdout or sys.stdout
    view = COMMANDS.get(config.command)
    if view is None:
        print(f"error: unknown command {config.command!r}", file=sys.stderr)
        return 2

    redirect = config.out is not None and config.command != "code"
    sink = open(config.out, "w", encoding="utf-8", newline="\n") if redirect else nullcontext(stdout)
    try:
        with sink as out:
            return view(config, out)
    except ValueError as exc:
        log.debug("usage error", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    config = config_from_args(build_parser().parse_args(argv))
    level = {0: logging.WARNING, 1: logging.INFO}.get(config.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
