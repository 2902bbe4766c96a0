"""
📈 Curve views – ``params`` and ``points``
"""

from __future__ import annotations

from typing import TYPE_CHECKING, TextIO

from handler.curve_handler import CurveHandler

if TYPE_CHECKING:
    from app import RunConfig


def show_params(config: "RunConfig", out: TextIO) -> int:
    """Curve invariants, field modulus and the special-place report."""
    curve = CurveHandler(config.q, config.c)
    cp, ctx = curve.cp, curve.ctx
    out.write(" ".join(f"{k}={v}" for k, v in cp.summary().items()) + "\n")
    out.write(f"p={ctx.p} e={ctx.e} c={ctx.c} R={cp.R} modulus={ctx.modulus_str}\n")

    places = curve.special_places()
    out.write(f"P1 rational={'yes' if places.P1_exists else 'no'} gamma={places.gamma}\n")
    out.write(f"Q1 rational={'yes' if places.Q1_exists else 'no'}\n")
    out.write(f"V rational places={places.V_rational_count}\n")
    return 0


def show_points(config: "RunConfig", out: TextIO) -> int:
    curve = CurveHandler(config.q, config.c)
    curve.points_frame().to_csv(out, index=False, lineterminator="\n")
    return 0
