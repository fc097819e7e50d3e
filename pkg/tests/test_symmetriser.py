"""The operator symmetriser, ~-equivalence, superselection, SP and IP."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from permsym import casebook as cb
from permsym import hilbert as hb
from permsym import sectors as sec
from permsym import symmetriser as sym

COIN = hb.AssemblyConfig(2, 2)


def heads_count(config):
    diag = [sum(1 for i in config.letters(k) if i == 0) for k in range(config.dim)]
    return np.diag(np.array(diag, dtype=complex))


def underdetermined_mixture():
    """3/4 |HT><HT| + 1/4 |TH><TH| and its swap conjugate: distinct states
    with the same symmetrisation."""
    ht = hb.basis_state(COIN, (0, 1))
    th = hb.basis_state(COIN, (1, 0))
    w1 = hb.DensityOperator.from_mixture([(0.75, ht), (0.25, th)]).matrix
    w2 = hb.DensityOperator.from_mixture([(0.25, ht), (0.75, th)]).matrix
    return w1, w2


def test_symmetrise_exact_on_basis_projector():
    ht = hb.basis_state(COIN, (0, 1)).projector()
    th = hb.basis_state(COIN, (1, 0)).projector()
    assert np.array_equal(sym.symmetrise(COIN, ht), (ht + th) / 2)


def test_symmetrise_fixes_symmetric_operators():
    q = heads_count(COIN)
    assert np.max(np.abs(sym.symmetrise(COIN, q) - q)) < 1e-15
    cfg = hb.AssemblyConfig(3, 2)
    fam = sec.SectorProjectors.build(cfg)
    for e in fam.family():
        assert np.max(np.abs(sym.symmetrise(cfg, e) - e)) < 1e-12


def test_symmetrise_is_linear_trace_preserving_positive():
    cfg = hb.AssemblyConfig(3, 2)
    rng = hb.rng_for(17)
    a = hb.random_observable(cfg, rng)
    b = hb.random_observable(cfg, rng)
    lhs = sym.symmetrise(cfg, 2.0 * a - 1j * b)
    rhs = 2.0 * sym.symmetrise(cfg, a) - 1j * sym.symmetrise(cfg, b)
    assert np.max(np.abs(lhs - rhs)) < 1e-12
    w = hb.random_density(cfg, rng)
    sw = sym.symmetrise(cfg, w)
    hb.DensityOperator(cfg, sw)  # still a valid state
    assert abs(np.trace(sw) - np.trace(w)) < 1e-12


def test_symmetrise_output_is_symmetric_and_idempotent():
    cfg = hb.AssemblyConfig(3, 3)
    a = hb.random_observable(cfg, hb.rng_for(2))
    sa = sym.symmetrise(cfg, a)
    assert hb.is_symmetric_operator(cfg, sa, tol=1e-12)
    assert np.max(np.abs(sym.symmetrise(cfg, sa) - sa)) < 1e-12


def test_projector_on_operator_space_report():
    report = sym.is_projector_on_operator_space(
        hb.AssemblyConfig(3, 2), samples=10, seed=1
    )
    assert report.ok
    assert report.max_idempotence_residual <= 1e-10
    assert report.max_selfadjoint_residual <= 1e-10


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_trace_identities_on_random_pairs(seed):
    cfg = hb.AssemblyConfig(2, 3)
    rng = hb.rng_for(seed)
    w = hb.random_density(cfg, rng)
    q = hb.random_observable(cfg, rng)
    assert sym.verify_identity_a(cfg, w, q) <= 1e-10
    assert sym.verify_identity_b(cfg, w, q) <= 1e-10


def test_trace_identities_three_slots():
    cfg = hb.AssemblyConfig(3, 2)
    rng = hb.rng_for(40)
    for _ in range(5):
        w = hb.random_density(cfg, rng)
        q = hb.random_observable(cfg, rng)
        assert sym.verify_identity_a(cfg, w, q) <= 1e-10
        assert sym.verify_identity_b(cfg, w, q) <= 1e-10


def test_hs_inner_is_the_trace_pairing():
    rng = hb.rng_for(8)
    x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    y = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    assert sym.hs_inner(x, y) == pytest.approx(complex(np.trace(x.conj().T @ y)), abs=1e-12)


# ---------------------------------------------------------------------------
# ~-equivalence

def test_underdetermined_mixture_is_sim_equivalent_but_distinct():
    w1, w2 = underdetermined_mixture()
    assert np.max(np.abs(w1 - w2)) == pytest.approx(0.5)
    assert sym.sim_equivalent(COIN, w1, w2)
    # equal statistics on symmetric observables, detectably different on
    # a slot-resolving one
    q = heads_count(COIN)
    assert hb.expectation(w1, q) == pytest.approx(hb.expectation(w2, q), abs=1e-12)
    ht_proj = hb.basis_state(COIN, (0, 1)).projector()
    assert abs(hb.expectation(w1, ht_proj) - hb.expectation(w2, ht_proj)) == pytest.approx(0.5)


def test_sim_equivalence_reflexive_and_respects_twirl():
    cfg = hb.AssemblyConfig(3, 2)
    w = hb.random_density(cfg, hb.rng_for(3))
    assert sym.sim_equivalent(cfg, w, w)
    assert sym.sim_equivalent(cfg, w, sym.symmetrise(cfg, w))
    for op in hb.all_perm_operators(cfg):
        assert sym.sim_equivalent(cfg, w, op.conjugate(w))


def test_sym_class_membership():
    w1, w2 = underdetermined_mixture()
    cls1 = sym.SymClass.of(COIN, w1)
    assert cls1.contains(w2)
    assert cls1.same_class(sym.SymClass.of(COIN, w2))
    tt = hb.basis_state(COIN, (1, 1)).projector()
    assert not cls1.contains(tt)
    assert not cls1.same_class(sym.SymClass.of(COIN, tt))


def test_phase_family_is_one_sim_class():
    """(psi_s + e^{i theta} psi_a)/sqrt(2) all symmetrise to the same state,
    but none of them is ~ to psi_s itself."""
    psi_s, psi_a = cb.symmetry_basis()
    thetas = [0.0, math.pi / 3, math.pi]
    projs = []
    for theta in thetas:
        v = (psi_s + np.exp(1j * theta) * psi_a) / math.sqrt(2)
        projs.append(np.outer(v, v.conj()))
    for a in projs:
        for b in projs:
            assert sym.sim_equivalent(COIN, a, b)
    s_proj = np.outer(psi_s, psi_s.conj())
    for a in projs:
        assert not sym.sim_equivalent(COIN, a, s_proj)


def test_block_truncation_is_sim_equivalent_to_original():
    cfg = hb.AssemblyConfig(3, 2)
    fam = sec.SectorProjectors.build(cfg)
    rng = hb.rng_for(12)
    for _ in range(4):
        w = hb.random_density(cfg, rng)
        cut = sym.block_truncate(fam, w)
        assert sym.sim_equivalent(cfg, w, cut)
        hb.DensityOperator(cfg, cut)
        assert np.max(np.abs(sym.block_truncate(fam, cut) - cut)) < 1e-12
    q = sym.symmetrise(cfg, hb.random_observable(cfg, rng))
    assert np.max(np.abs(sym.block_truncate(fam, q) - q)) < 1e-12


# ---------------------------------------------------------------------------
# superselection

def test_superselect_family_validation():
    eye = np.eye(4, dtype=complex)
    w = eye / 4
    with pytest.raises(ValueError):  # does not sum to identity
        sym.superselect(w, [eye / 2, eye / 2])
    with pytest.raises(ValueError):  # not a projector family
        sym.superselect(w, [np.diag([0.7, 0, 0, 0]).astype(complex), eye - np.diag([0.7, 0, 0, 0])])
    with pytest.raises(ValueError):  # wrong shape
        sym.superselect(w, [np.eye(3, dtype=complex)])
    with pytest.raises(ValueError):  # overlapping members
        p = np.diag([1.0, 1, 0, 0]).astype(complex)
        q = np.diag([0.0, 1, 1, 1]).astype(complex)
        sym.superselect(w, [p, q])


def test_pinch_preserves_commuting_expectations():
    cfg = hb.AssemblyConfig(3, 2)
    fam = sec.SectorProjectors.build(cfg)
    rng = hb.rng_for(6)
    w = hb.random_density(cfg, rng)
    pinched = sym.sector_superselect(fam, w)
    hb.DensityOperator(cfg, pinched)
    for _ in range(5):
        q = sym.symmetrise(cfg, hb.random_observable(cfg, rng))
        assert hb.expectation(w, q) == pytest.approx(hb.expectation(pinched, q), abs=1e-10)
    # a non-commuting observable can tell the difference
    probe = hb.basis_state(cfg, (0, 1, 1)).projector() @ fam.symmetric
    probe = probe + probe.conj().T
    assert abs(hb.expectation(w, probe) - hb.expectation(pinched, probe)) > 1e-4


def test_pinch_by_trivial_family_is_identity():
    w = hb.random_density(COIN, hb.rng_for(9))
    assert np.array_equal(sym.superselect(w, [np.eye(4, dtype=complex)]), w)


def test_block_truncate_agrees_with_sector_superselect():
    cfg = hb.AssemblyConfig(3, 2)
    fam = sec.SectorProjectors.build(cfg)
    w = hb.random_density(cfg, hb.rng_for(15))
    assert np.max(np.abs(sym.block_truncate(fam, w) - sym.sector_superselect(fam, w))) < 1e-12


# ---------------------------------------------------------------------------
# SP and IP

def test_sp_accepts_sector_supported_commuting_states():
    fam = sec.SectorProjectors.build(COIN)
    psi_s, psi_a = cb.symmetry_basis()
    hh = hb.basis_state(COIN, (0, 0))
    sym_state = hb.StateVector(COIN, psi_s)
    anti_state = hb.StateVector(COIN, psi_a)
    bose = hb.DensityOperator.from_mixture(
        [(1 / 3, hh), (1 / 3, sym_state), (1 / 3, hb.basis_state(COIN, (1, 1)))]
    )
    assert sym.satisfies_sp(fam, bose.matrix)
    assert sym.satisfies_sp(fam, anti_state.projector())
    mixed = 0.5 * sym_state.projector() + 0.5 * anti_state.projector()
    assert sym.satisfies_sp(fam, mixed)


def test_sp_rejects_support_without_commutation():
    """A coherent superposition across the sectors lives inside their span
    but fails to commute with the swap."""
    fam = sec.SectorProjectors.build(COIN)
    psi_s, psi_a = cb.symmetry_basis()
    v = (psi_s + psi_a) / math.sqrt(2)  # this is |HT> again
    w = np.outer(v, v.conj())
    assert np.max(np.abs(fam.para @ w)) < 1e-14  # support is fine
    assert not sym.satisfies_sp(fam, w)


def test_sp_rejects_para_support():
    cfg = hb.AssemblyConfig(3, 2)
    fam = sec.SectorProjectors.build(cfg)
    maximally_mixed = np.eye(cfg.dim, dtype=complex) / cfg.dim
    # commutes with everything, but a quarter of it sits in the para sector
    assert hb.is_symmetric_operator(cfg, maximally_mixed)
    assert not sym.satisfies_sp(fam, maximally_mixed)
    bose = fam.symmetric / np.trace(fam.symmetric).real
    assert sym.satisfies_sp(fam, bose)


def test_ip_against_symmetric_observables_holds_for_any_state():
    cfg = hb.AssemblyConfig(3, 2)
    rng = hb.rng_for(21)
    observables = [
        sym.symmetrise(cfg, hb.random_observable(cfg, rng)) for _ in range(4)
    ]
    for _ in range(4):
        w = hb.random_density(cfg, rng)
        assert sym.satisfies_ip(cfg, w, observables)


def test_ip_depends_on_the_observable_list():
    ht = hb.basis_state(COIN, (0, 1)).projector()
    assert sym.satisfies_ip(COIN, ht, [heads_count(COIN)])
    assert not sym.satisfies_ip(COIN, ht, [ht])


def test_sp_implies_ip_for_arbitrary_observables():
    fam = sec.SectorProjectors.build(COIN)
    rng = hb.rng_for(30)
    observables = [hb.random_observable(COIN, rng) for _ in range(5)]
    w1, _ = underdetermined_mixture()
    bose = sym.symmetrise(COIN, w1)
    assert sym.satisfies_sp(fam, bose)
    assert sym.satisfies_ip(COIN, bose, observables)
    # while the non-symmetric preimage fails IP on the same list
    assert not sym.satisfies_ip(COIN, w1, observables)
