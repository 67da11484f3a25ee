import math
from pathlib import Path

import numpy as np
import pytest

from phasecode.bitstring import popcount
from phasecode.channels import PhaseDampingChannel, apply_phase_damping
from phasecode.codes import (
    E0,
    E1,
    complete_encoder,
    encode,
    format_state,
    parse_state,
    representation_manifold_projector,
    standard_code,
    symmetric_code,
    two_qubit_code,
    unencoded,
)
from phasecode.qstate import pure_to_density
from phasecode.trajectories import decompose

GOLDEN = Path(__file__).parent / "golden"
S = 1 / math.sqrt(2)


def test_symmetric6_matches_golden_files():
    code = symmetric_code(6)
    zero = parse_state((GOLDEN / "symmetric6_zero.txt").read_text())
    one = parse_state((GOLDEN / "symmetric6_one.txt").read_text())
    assert code.zero_logical.allclose(zero, atol=1e-15)
    assert code.one_logical.allclose(one, atol=1e-15)


def test_format_round_trip():
    code = symmetric_code(4)
    text = format_state(code.one_logical, "symmetric4 one_logical")
    assert "4 0100 0.70710678118654757 0" in text
    assert parse_state(text).allclose(code.one_logical, atol=0)


def test_symmetric2_is_dual_rail():
    code = symmetric_code(2)
    assert np.allclose(code.zero_logical.amplitudes, [0, 1, 0, 0])
    assert np.allclose(code.one_logical.amplitudes, [0, 0, 1, 0])


def test_symmetric4_amplitudes():
    code = symmetric_code(4)
    for s in (code.zero_logical, code.one_logical):
        nz = s.amplitudes[np.flatnonzero(s.amplitudes)]
        assert len(nz) == 2 and np.allclose(nz, S)


@pytest.mark.parametrize("n", [1, 3, 0, 14, 2.0])
def test_symmetric_rejects_bad_n(n):
    with pytest.raises(ValueError):
        symmetric_code(n)


@pytest.mark.parametrize("code", [standard_code(), two_qubit_code()] + [symmetric_code(n) for n in (2, 4, 6, 8)])
def test_code_invariants(code):
    code.check()
    assert np.allclose(code.encoder[:, E0], code.zero_logical.amplitudes)
    assert np.allclose(code.encoder[:, E1], code.one_logical.amplitudes)
    p = representation_manifold_projector(code)
    assert np.allclose(p @ p, p) and np.allclose(p, p.conj().T)
    assert np.linalg.matrix_rank(p) == 2
    assert np.allclose(p @ code.zero_logical.amplitudes, code.zero_logical.amplitudes)


def test_two_qubit_code():
    code = two_qubit_code()
    assert code.zero_logical.inner(code.one_logical) == 0
    assert np.allclose(encode(code, 1, 0).amplitudes, [S, 0, 0, S])
    assert np.allclose(encode(code, S, S).amplitudes, [0.5, 0.5, 0.5, 0.5])


def test_standard_code():
    code = standard_code()
    assert np.array_equal(code.encoder, np.eye(2))
    assert np.allclose(encode(code, 0.6, 0.8j).amplitudes, [0.6, 0.8j])


def test_standard_code_jump_is_undetectable():
    lam = 0.3
    ens = decompose(encode(standard_code(), 0.6, 0.8j), lam)
    jump = ens.dense(1).amplitudes
    assert np.allclose(jump, [0, 0.8j * math.sqrt(1 - math.exp(-2 * lam))])
    p = representation_manifold_projector(standard_code())
    assert np.allclose(p @ jump, jump)  # stays inside the logical span
    rho = apply_phase_damping(PhaseDampingChannel(lam), pure_to_density(encode(standard_code(), 0.6, 0.8j)))
    assert rho.entries[0, 1] == pytest.approx(0.6 * np.conj(0.8j) * math.exp(-lam))


@pytest.mark.parametrize("code", [two_qubit_code(), symmetric_code(4), symmetric_code(6)])
def test_encode_equals_encoder_action_and_inverts(code):
    c0, c1 = 0.6, 0.8 * np.exp(0.4j)
    psi = encode(code, c0, c1)
    e = unencoded(code, c0, c1)
    assert np.allclose(code.encoder @ e.amplitudes, psi.amplitudes, atol=1e-12)
    assert np.allclose(code.encoder.conj().T @ psi.amplitudes, e.amplitudes, atol=1e-12)
    assert encode(code, 1, 0).allclose(code.zero_logical)


def test_encode_rejects_unnormalised():
    with pytest.raises(ValueError):
        encode(symmetric_code(4), 1, 1)


def test_jump_branches_leave_manifold():
    code = symmetric_code(4)
    ens = decompose(encode(code, 0.6, 0.8), 0.2)
    p = representation_manifold_projector(code)
    for n in range(1, 16):
        v = ens.dense(n).amplitudes
        w = np.linalg.norm(v)
        if w > 0:
            assert np.linalg.norm(p @ v) < w - 1e-6


@pytest.mark.parametrize("n", [2, 4, 6, 8])
@pytest.mark.parametrize("lam", [0.05, 0.5, 2.0])
def test_no_jump_branch_is_the_scaled_code_state(n, lam):
    code = symmetric_code(n)
    psi = encode(code, 0.6, 0.8j)
    ens = decompose(psi, lam)
    assert np.allclose(ens.dense(0).amplitudes, math.exp(-lam) * psi.amplitudes, rtol=0, atol=1e-12)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_only_single_bit_jumps_survive(n):
    code = symmetric_code(n)
    c0, c1, lam = 0.6, 0.8, 0.3
    ens = decompose(encode(code, c0, c1), lam)
    half = n // 2
    amp = math.sqrt(2 / n) * math.sqrt(1 - math.exp(-2 * lam))
    for m in range(1, 1 << n):
        v = ens.dense(m).amplitudes
        if popcount(m) != 1:
            assert not v.any()
            continue
        bit = m.bit_length() - 1
        expected = np.zeros_like(v)
        expected[m] = (c0 if bit < half else c1) * amp
        assert np.allclose(v, expected, atol=1e-15)
        other = code.one_logical if bit < half else code.zero_logical
        assert abs(np.vdot(other.amplitudes, v)) == 0


def test_uniform_amplitudes_over_support():
    for n in (4, 6, 8, 10):
        code = symmetric_code(n)
        for s in (code.zero_logical, code.one_logical):
            nz = s.amplitudes[np.abs(s.amplitudes) > 0]
            assert np.allclose(nz, nz[0]) and len(nz) == n // 2


def test_alternative_completion_is_unitary():
    code = symmetric_code(4)
    u = complete_encoder(code.zero_logical.amplitudes, code.one_logical.amplitudes, order=range(15, -1, -1))
    assert np.allclose(u.conj().T @ u, np.eye(16), atol=1e-12)
    assert np.allclose(u[:, [E0, E1]], code.logical_matrix)
    assert not np.allclose(u, code.encoder)


def test_completion_handles_codewords_on_e1():
    # |0_L> of N=4 overlaps label 1, so skipping e0 and e1 outright would leave label 0 unspanned.
    code = symmetric_code(4)
    assert code.zero_logical.amplitudes[1] != 0
    code.check()
    with pytest.raises(ValueError):
        complete_encoder(code.zero_logical.amplitudes, code.one_logical.amplitudes, order=range(2, 16))


def test_all_logical_pairs_orthonormal():
    for n in range(2, 13, 2):
        v = np.stack([symmetric_code(n).zero_logical.amplitudes, symmetric_code(n).one_logical.amplitudes], 1)
        assert np.allclose(v.conj().T @ v, np.eye(2), atol=1e-12)
