"""Closed-form predictions for the coded transmission scheme.

Formulas are evaluated exactly as displayed, including the ones that do not
survive comparison with simulation:

* The periodic-correction forms carry ``exp(-lam)`` per round. A round whose
  channel has exponent ``mu`` reproduces them with ``lam = 2 * mu``; see
  :func:`watchdog_forms`.
* The quadratic-schedule expansions exceed 1 for ``eps > 0``.
* The two-qubit fidelity ``1 - 2|c0|^2|c1|^2 / cosh(lam)`` is below 1 at
  ``lam = 0``. The simulated value is ``1 - 2|c0|^2|c1|^2 (1 - 1/cosh(lam))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple


def _check_n(n: int) -> None:
    if int(n) != n or n < 2 or n % 2:
        raise ValueError(f"N must be an even integer >= 2, got {n}")


def _check_lam(lam: float) -> None:
    if not math.isfinite(lam) or lam < 0:
        raise ValueError(f"damping must be finite and >= 0, got {lam}")


def _check_probs(c0sq: float, c1sq: float) -> None:
    if c0sq < 0 or c1sq < 0 or abs(c0sq + c1sq - 1) > 1e-9:
        raise ValueError(f"|c0|^2 and |c1|^2 must be a probability pair, got {c0sq}, {c1sq}")


def cosh(x: float) -> float:
    return (math.exp(x) + math.exp(-x)) / 2


def p_accept_form(n: int, lam: float) -> float:
    """Acceptance probability ``2/N + (1 - 2/N) exp(-2 lam)``."""
    _check_n(n)
    _check_lam(lam)
    return 2 / n + (1 - 2 / n) * math.exp(-2 * lam)


def j_form(n: int, lam: float) -> float:
    """Residual coherence of the accepted qubit, ``N / (2 exp(2 lam) - 2 + N)``."""
    _check_n(n)
    _check_lam(lam)
    return n / (2 * math.expm1(2 * lam) + n)


def j_form_linear(n: int, lam: float) -> float:
    """Small-damping expansion ``1 - 4 lam / N``."""
    return 1 - 4 * lam / n


def j_standard(lam: float) -> float:
    """Coherence left in an unencoded qubit, ``exp(-lam)``."""
    _check_lam(lam)
    return math.exp(-lam)


def crossover_n(lam: float) -> float:
    """The symmetric code beats the bare qubit iff ``N > 2 (1 + exp(lam))``."""
    _check_lam(lam)
    return 2 * (1 + math.exp(lam))


def fidelity_form(j: float, c0sq: float, c1sq: float) -> float:
    """``1 - 2|c0|^2|c1|^2 (1 - J)``; never below ``(1 + J) / 2``."""
    if not 0 <= j <= 1 + 1e-12:
        raise ValueError(f"J must be in [0, 1], got {j}")
    _check_probs(c0sq, c1sq)
    return 1 - 2 * c0sq * c1sq * (1 - j)


def watchdog_forms(n: int, lam: float, k: int) -> tuple[float, float]:
    """``k``-round acceptance and coherence, as displayed.

    Returns ``([2/N + (1-2/N) e^{-lam}]^k, [N / (2 e^{lam} - 2 + N)]^k)``.
    Each round contributes ``exp(-lam)`` where a single pass contributes
    ``exp(-2 lam)``, so a round whose channel exponent is ``mu`` matches
    these forms at ``lam = 2 * mu``.
    """
    _check_n(n)
    _check_lam(lam)
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    p = (2 / n + (1 - 2 / n) * math.exp(-lam)) ** k
    j = (n / (2 * math.expm1(lam) + n)) ** k
    return p, j


class QuadraticWatchdog(NamedTuple):
    j_unsliced: float
    j_k: float
    j_unsliced_expansion: float
    j_k_expansion: float


def quadratic_watchdog_forms(n: int, eps: float, k: int) -> QuadraticWatchdog:
    """Coherence forms for an error that grows as ``1 - eps t^2``.

    ``j_unsliced = N / (2(1 - k^2 eps) - 2 + N)`` and
    ``j_k = [N / (2(1 - eps) - 2 + N)]^k`` together with their printed
    expansions ``1 + 2 k^2 eps / N`` and ``1 + 2 k eps / N``.
    """
    _check_n(n)
    if int(k) != k or k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if not math.isfinite(eps) or eps < 0:
        raise ValueError(f"eps must be finite and >= 0, got {eps}")
    if k * k * eps >= 1:
        raise ValueError("k^2 eps must be < 1")
    return QuadraticWatchdog(
        n / (2 * (1 - k * k * eps) - 2 + n),
        (n / (2 * (1 - eps) - 2 + n)) ** k,
        1 + 2 * k * k * eps / n,
        1 + 2 * k * eps / n,
    )


def two_qubit_forms(lam: float, c0sq: float, c1sq: float) -> tuple[float, float]:
    """Acceptance ``(1 + e^{-2 lam}) / 2`` and fidelity ``1 - 2|c0|^2|c1|^2 / cosh lam``."""
    _check_lam(lam)
    _check_probs(c0sq, c1sq)
    return (1 + math.exp(-2 * lam)) / 2, 1 - 2 * c0sq * c1sq / cosh(lam)


def two_qubit_j(lam: float) -> float:
    """Coherence the two-qubit code actually retains, ``1 / cosh lam``.

    Not one of the displayed formulas; derived from the accepted block and
    used to explain the fidelity discrepancy.
    """
    _check_lam(lam)
    return 1 / cosh(lam)


@dataclass(frozen=True)
class ClosedForm:
    name: str
    inputs: dict
    value: float


# Name -> (callable, ordered input names); outputs that are tuples are split
# into "<name>.<field>" entries by evaluate().
FORMULAS = {
    "p_accept": (p_accept_form, ("N", "lam")),
    "J": (j_form, ("N", "lam")),
    "J_linear": (j_form_linear, ("N", "lam")),
    "J_standard": (j_standard, ("lam",)),
    "crossover_N": (crossover_n, ("lam",)),
    "fidelity": (fidelity_form, ("J", "c0sq", "c1sq")),
    "watchdog": (watchdog_forms, ("N", "lam", "k")),
    "quadratic_watchdog": (quadratic_watchdog_forms, ("N", "eps", "k")),
    "two_qubit": (two_qubit_forms, ("lam", "c0sq", "c1sq")),
    "two_qubit_J": (two_qubit_j, ("lam",)),
}

_FIELDS = {
    "watchdog": ("p_accept_k", "J_k"),
    "quadratic_watchdog": QuadraticWatchdog._fields,
    "two_qubit": ("p_accept", "fidelity"),
}


def evaluate(name: str, **inputs) -> list[ClosedForm]:
    """Evaluate a registered formula by name; tuple outputs become several rows."""
    try:
        fn, args = FORMULAS[name]
    except KeyError:
        raise ValueError(f"unknown formula {name!r}; choose from {sorted(FORMULAS)}") from None
    missing = [a for a in args if a not in inputs]
    if missing:
        raise ValueError(f"{name} needs inputs {missing}")
    used = {a: inputs[a] for a in args}
    out = fn(*used.values())
    if name in _FIELDS:
        return [ClosedForm(f"{name}.{f}", used, float(v)) for f, v in zip(_FIELDS[name], out)]
    return [ClosedForm(name, used, float(out))]
