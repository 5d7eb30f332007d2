"""Generators acting on V(a1,a2)* through the antipode: (y.f)(x) = (-1)^{|y||f|} f(S(y) x)."""

from functools import lru_cache
from typing import Optional

from app.superalg.graded_matrix import GradedMatrix
from app.superalg.typical_module import (
    GENERATOR_PARITY,
    TypicalColor,
    generator,
    parity_vector,
    q_power_h,
)


def antipode(color: TypicalColor, name: str) -> GradedMatrix:
    """S(g) as a matrix on V: S(E_i) = -K_i E_i, S(F_i) = -F_i K_i^-1, S(h_i) = -h_i."""
    if name in ("h1", "h2"):
        return -generator(color, name)
    if name in ("E1", "E2"):
        return -(q_power_h(color, int(name[1]), 1) @ generator(color, name))
    if name in ("F1", "F2"):
        return -(generator(color, name) @ q_power_h(color, int(name[1]), -1))
    raise ValueError(f"no antipode rule for {name!r}")


@lru_cache(maxsize=None)
def dual_generator(color: TypicalColor, name: str, power: Optional[int] = None) -> GradedMatrix:
    """
    Matrix of a generator on the dual module in the dual basis f_l.

    ``name`` is one of h1, h2, E1, E2, F1, F2; for the group-like
    q^{power * h_i} pass name="qh1"/"qh2" together with ``power``.
    Entry (k, l) is (-1)^{|g| p(l)} S(g)[l, k].
    """
    if name in ("qh1", "qh2"):
        if power is None:
            raise ValueError("q-power generators need an integer power")
        return q_power_h(color, int(name[2]), power, dual=True)

    s_matrix = antipode(color, name)
    g_parity = GENERATOR_PARITY[name]
    parities = parity_vector(color)
    entries = []
    for row, col, value in s_matrix.entries():
        sign = -1 if g_parity and parities[row] else 1
        entries.append((col, row, value if sign > 0 else -value))
    return GradedMatrix.from_entries(parities, parities, entries)
