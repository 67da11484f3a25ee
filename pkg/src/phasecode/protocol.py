"""Encode, transmit, decode and post-select a single logical qubit.

One round: the logical qubit sits on the data bit with ground-state
ancillas, the encoder ``U`` spreads it over the code, the channel acts,
``U^dagger`` decodes, and the transmission is accepted only if every ancilla
reads 0 (projection onto ``{|e0>, |e1>}``). The acceptance probability is
the trace of the projected state before renormalisation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from phasecode import analytics
from phasecode.channels import (
    AmplitudeDampingChannel,
    Channel,
    PhaseDampingChannel,
    apply_channel,
    phase_damp_supported,
)
from phasecode.codes import E0, E1, Code, _check_coefficients, encode, symmetric_codewords
from phasecode.qstate import DensityMatrix, project_keep, qubit_state
from phasecode.trajectories import TrajectoryEnsemble, decompose, sample_indices

J_IMAG_ATOL = 1e-10
_DEGENERATE_P = 1e-300
_DEGENERATE_C = 1e-12

CSV_FIELDS = (
    "code_name",
    "N",
    "channel",
    "lambda_or_gamma",
    "k",
    "c0_re",
    "c0_im",
    "c1_re",
    "c1_im",
    "p_accept_meas",
    "p_accept_form",
    "J_meas",
    "J_form",
    "fidelity_meas",
    "fidelity_form",
)


@dataclass(frozen=True)
class ProtocolRun:
    """``channel`` is the noise of one round; ``k`` rounds are chained."""

    code: Code
    channel: Channel
    c0: complex
    c1: complex
    k: int = 1

    def __post_init__(self) -> None:
        _check_coefficients(self.c0, self.c1)
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if self.channel.width is not None and self.channel.width != self.code.width:
            raise ValueError("channel width does not match code width")


@dataclass(frozen=True)
class ProtocolReport:
    code_name: str
    width: int
    channel: str
    strength: float
    k: int
    c0: complex
    c1: complex
    p_accept_measured: float
    p_accept_closed_form: float | None
    rho5: DensityMatrix | None
    J_measured: complex | None
    J_closed_form: float | None
    fidelity_measured: float
    fidelity_closed_form: float | None

    @property
    def degenerate(self) -> bool:
        """Nothing was ever accepted."""
        return self.rho5 is None

    @property
    def j_defined(self) -> bool:
        """J is 0/0 when either logical amplitude vanishes."""
        return self.J_measured is not None

    def to_record(self) -> dict:
        return {
            "code_name": self.code_name,
            "N": self.width,
            "channel": self.channel,
            "lambda_or_gamma": self.strength,
            "k": self.k,
            "c0_re": self.c0.real,
            "c0_im": self.c0.imag,
            "c1_re": self.c1.real,
            "c1_im": self.c1.imag,
            "p_accept_meas": self.p_accept_measured,
            "p_accept_form": self.p_accept_closed_form,
            "J_meas": None if self.J_measured is None else self.J_measured.real,
            "J_form": self.J_closed_form,
            "fidelity_meas": self.fidelity_measured,
            "fidelity_form": self.fidelity_closed_form,
        }


def transmit_round(
    code: Code, channel: Channel, logical: np.ndarray, decode: str = "block"
) -> tuple[float, np.ndarray]:
    """Send a 2x2 logical density matrix through one round.

    Returns the acceptance probability and the accepted, unnormalised 2x2
    block on ``{|e0>, |e1>}``. ``decode="full"`` forms ``U^dagger rho U`` and
    projects it; ``decode="block"`` computes only the two decoded rows and
    columns that survive the projection, which is the same matrix at
    ``O(4^N)`` instead of ``O(8^N)`` cost.
    """
    n = code.width
    u = code.encoder
    v = u[:, [E0, E1]]
    # Fresh ancillas: the input lives on span{e0, e1}, so U rho1 U^dagger = V rho V^dagger.
    rho2 = DensityMatrix(v @ logical @ v.conj().T, n)
    rho3 = apply_channel(channel, rho2)
    if decode == "full":
        rho4 = DensityMatrix(u.conj().T @ rho3.entries @ u, n)
        kept = project_keep(rho4, [E0, E1])
        block = kept.entries[np.ix_([E0, E1], [E0, E1])].copy()
        return kept.trace(), block
    if decode != "block":
        raise ValueError(f"decode must be 'full' or 'block', got {decode!r}")
    block = v.conj().T @ rho3.entries @ v
    return float(np.trace(block).real), block


def _closed_forms(code: Code, channel: Channel, k: int, c0sq: float, c1sq: float):
    """(p_accept, J, fidelity) predictions, or None where nothing is stated."""
    s = channel.strength
    name = code.name
    if isinstance(channel, PhaseDampingChannel):
        if name.startswith("symmetric"):
            # One round with channel exponent s matches the displayed
            # periodic forms at lam = 2 s; at k = 1 these equal the
            # single-pass forms.
            p, j = analytics.watchdog_forms(code.width, 2 * s, k)
            return p, j, analytics.fidelity_form(min(j, 1.0), c0sq, c1sq)
        if name == "standard":
            j = analytics.j_standard(k * s)
            return 1.0, j, analytics.fidelity_form(j, c0sq, c1sq)
        if name == "two_qubit" and k == 1:
            p, f = analytics.two_qubit_forms(s, c0sq, c1sq)
            return p, None, f
    elif isinstance(channel, AmplitudeDampingChannel) and name.startswith("symmetric"):
        return (1 - s) ** k, 1.0, 1.0
    return None, None, None


def _report(run_desc: dict, p_total: float, logical: np.ndarray | None, forms) -> ProtocolReport:
    c0, c1 = run_desc["c0"], run_desc["c1"]
    if logical is None:
        rho5 = None
        j = None
        fid = math.nan
    else:
        rho5 = DensityMatrix(logical, 1)
        psi0 = qubit_state(c0, c1).amplitudes
        fid = float(np.vdot(psi0, logical @ psi0).real)
        denom = c0 * np.conj(c1)
        j = complex(logical[0, 1] / denom) if abs(denom) > _DEGENERATE_C else None
    return ProtocolReport(
        p_accept_measured=p_total,
        p_accept_closed_form=forms[0],
        rho5=rho5,
        J_measured=j,
        J_closed_form=forms[1],
        fidelity_measured=fid,
        fidelity_closed_form=forms[2],
        **run_desc,
    )


def run_periodic(run: ProtocolRun, decode: str = "block") -> ProtocolReport:
    """Chain ``run.k`` rounds, re-encoding the accepted qubit with fresh ancillas.

    The reported acceptance probability is the product over rounds and J is
    read off the final accepted qubit.
    """
    c0, c1 = complex(run.c0), complex(run.c1)
    psi0 = qubit_state(c0, c1).amplitudes
    logical = np.outer(psi0, psi0.conj())
    p_total = 1.0
    for _ in range(run.k):
        p, block = transmit_round(run.code, run.channel, logical, decode)
        p_total *= p
        if p <= _DEGENERATE_P:
            logical = None
            p_total = 0.0
            break
        logical = block / p
    desc = dict(
        code_name=run.code.name,
        width=run.code.width,
        channel=run.channel.kind,
        strength=float(run.channel.strength),
        k=run.k,
        c0=c0,
        c1=c1,
    )
    forms = _closed_forms(run.code, run.channel, run.k, abs(c0) ** 2, abs(c1) ** 2)
    return _report(desc, p_total, logical, forms)


def run_once(run: ProtocolRun, decode: str = "block") -> ProtocolReport:
    if run.k != 1:
        raise ValueError("run_once is a single round; use run_periodic for k > 1")
    return run_periodic(run, decode)


def run_amplitude(run: ProtocolRun, decode: str = "block") -> ProtocolReport:
    if not isinstance(run.channel, AmplitudeDampingChannel):
        raise ValueError("run_amplitude needs an amplitude-damping channel")
    if not run.code.name.startswith("symmetric"):
        raise ValueError("run_amplitude is defined for the symmetric code")
    return run_periodic(run, decode)


def run_symmetric_sparse(n: int, lam: float, c0: complex, c1: complex, k: int = 1) -> ProtocolReport:
    """Phase-damping protocol for the symmetric code without dense matrices.

    Dephasing keeps the state on the ``N`` one-hot labels of the code words,
    and decoding followed by the ancilla projection reduces to overlaps with
    ``|0_L>`` and ``|1_L>``. Cost is ``O(N^2)`` per round, so any even ``N``
    is reachable.
    """
    _check_coefficients(c0, c1)
    c0, c1 = complex(c0), complex(c1)
    low, high, amp = symmetric_codewords(n)
    support = low + high
    half = n // 2
    v = np.zeros((n, 2))
    v[:half, 0] = amp
    v[half:, 1] = amp
    psi0 = np.array([c0, c1])
    logical = np.outer(psi0, psi0.conj())
    p_total = 1.0
    for _ in range(k):
        rho2 = v @ logical @ v.T
        rho3 = phase_damp_supported(rho2, np.array(support, dtype=object), lam)
        block = v.T @ rho3 @ v
        p = float(np.trace(block).real)
        p_total *= p
        logical = block / p
    desc = dict(
        code_name=f"symmetric{n}", width=n, channel="phase", strength=float(lam), k=k, c0=c0, c1=c1
    )
    p_form, j_form = analytics.watchdog_forms(n, 2 * lam, k)
    forms = (p_form, j_form, analytics.fidelity_form(j_form, abs(c0) ** 2, abs(c1) ** 2))
    return _report(desc, p_total, logical, forms)


def accept_probability_from_branches(code: Code, ens: TrajectoryEnsemble) -> float:
    """Acceptance probability summed over trajectory branches.

    Uses ``|<a|psi_pd>|^2 = sum_n |<a|phi_n>|^2`` on the decoded branches.
    """
    udag = code.encoder.conj().T
    total = 0.0
    for n in range(len(ens)):
        d = udag @ ens.dense(n).amplitudes
        total += abs(d[E0]) ** 2 + abs(d[E1]) ** 2
    return total


@dataclass(frozen=True)
class MonteCarloEstimate:
    p_accept: float
    stderr: float
    samples: int


def monte_carlo_accept(
    code: Code, c0: complex, c1: complex, lam: float, samples: int, seed: int
) -> MonteCarloEstimate:
    """Estimate the acceptance probability by sampling trajectories.

    Each sample draws a branch with probability ``p_n``, decodes the
    normalised branch state, and draws Bob's ancilla measurement outcome.
    """

    rng = np.random.default_rng(seed)
    ens = decompose(encode(code, c0, c1), lam)
    udag = code.encoder.conj().T
    cond = np.zeros(len(ens))
    for n, br in enumerate(ens.branches):
        w = br.weight
        if w > 0:
            d = udag @ ens.dense(n).amplitudes
            cond[n] = (abs(d[E0]) ** 2 + abs(d[E1]) ** 2) / w
    idx = sample_indices(ens, samples, rng)
    accepted = rng.random(samples) < cond[idx]
    p = float(accepted.mean())
    return MonteCarloEstimate(p, math.sqrt(p * (1 - p) / samples), samples)
