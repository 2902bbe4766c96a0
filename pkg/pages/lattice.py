"""
🔢 ``omega`` – the lattice point set Ω (or Ω′ with --prime) as CSV
"""

from __future__ import annotations

from typing import TYPE_CHECKING, TextIO

from handler.lattice_handler import LatticeHandler

if TYPE_CHECKING:
    from app import RunConfig


def show_omega(config: "RunConfig", out: TextIO) -> int:
    lattice = LatticeHandler(config.q, config.c)
    omega = lattice.omega_enumerate(config.spec)
    if config.prime:
        omega = lattice.omega_prime_transform(omega)
    omega.frame().to_csv(out, index=False, lineterminator="\n")
    return 0
