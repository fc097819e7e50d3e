"""Sector projectors, isotypic components, seeded irreducible rays."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from permsym import hilbert as hb
from permsym import sectors as sec

# closed forms: bosonic rank C(d+n-1, n), fermionic rank C(d, n)
SECTOR_RANK_CASES = [
    # (n, d, sym, anti)
    (2, 2, 3, 1),
    (2, 3, 6, 3),
    (3, 2, 4, 0),
    (3, 3, 10, 1),
    (4, 2, 5, 0),
    (4, 3, 15, 0),
]


@pytest.mark.parametrize("n,d,r_sym,r_anti", SECTOR_RANK_CASES)
def test_sector_ranks_match_closed_forms(n, d, r_sym, r_anti):
    cfg = hb.AssemblyConfig(n, d)
    fam = sec.SectorProjectors.build(cfg)
    assert math.comb(d + n - 1, n) == r_sym
    assert math.comb(d, n) == r_anti
    assert fam.ranks() == (r_sym, r_anti, cfg.dim - r_sym - r_anti)
    # independent rank route
    assert np.linalg.matrix_rank(fam.symmetric, tol=1e-8) == r_sym
    assert np.linalg.matrix_rank(fam.antisymmetric, tol=1e-8) == r_anti


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (3, 3), (4, 2)])
def test_sector_family_partitions_identity(n, d):
    cfg = hb.AssemblyConfig(n, d)
    fam = sec.SectorProjectors.build(cfg)
    total = np.zeros((cfg.dim, cfg.dim), dtype=complex)
    for p in fam.family():
        assert np.max(np.abs(p - p.conj().T)) < 1e-12
        assert np.max(np.abs(p @ p - p)) < 1e-12
        total += p
    assert np.max(np.abs(total - np.eye(cfg.dim))) < 1e-12
    for a in fam.family():
        for b in fam.family():
            if a is not b:
                assert np.max(np.abs(a @ b)) < 1e-12


def test_sector_projectors_commute_with_representation():
    cfg = hb.AssemblyConfig(3, 2)
    fam = sec.SectorProjectors.build(cfg)
    for op in hb.all_perm_operators(cfg):
        for p in fam.family():
            assert np.max(np.abs(op.conjugate(p) - p)) < 1e-12


def test_single_slot_family_is_rejected():
    with pytest.raises(ValueError):
        sec.SectorProjectors.build(hb.AssemblyConfig(1, 4))


def test_projector_rank_guards_spectrum():
    assert sec.projector_rank(np.diag([1.0, 1.0, 0.0]).astype(complex)) == 2
    with pytest.raises(ValueError):
        sec.projector_rank(np.diag([1.0, 0.4, 0.0]).astype(complex))


def test_two_coin_sector_projectors_exact():
    cfg = hb.AssemblyConfig(2, 2)
    fam = sec.SectorProjectors.build(cfg)
    e_s = np.array(
        [
            [1, 0, 0, 0],
            [0, 0.5, 0.5, 0],
            [0, 0.5, 0.5, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )
    assert np.allclose(fam.symmetric, e_s, atol=1e-15)
    assert np.allclose(fam.antisymmetric, np.eye(4) - e_s, atol=1e-15)
    assert np.max(np.abs(fam.para)) < 1e-15


# ---------------------------------------------------------------------------
# isotypic components

def test_isotypic_projectors_resolve_identity():
    cfg = hb.AssemblyConfig(3, 2)
    comps = sec.all_isotypic(cfg)
    total = sum(c.projector for c in comps)
    assert np.max(np.abs(total - np.eye(cfg.dim))) < 1e-12
    for i, a in enumerate(comps):
        for j, b in enumerate(comps):
            prod = a.projector @ b.projector
            ref = a.projector if i == j else 0.0
            assert np.max(np.abs(prod - ref)) < 1e-12


def test_isotypic_ranks_three_coins():
    cfg = hb.AssemblyConfig(3, 2)
    by_shape = {c.shape: c for c in sec.all_isotypic(cfg)}
    assert by_shape[(3,)].rank == 4
    assert by_shape[(2, 1)].rank == 4
    assert by_shape[(1, 1, 1)].rank == 0
    assert by_shape[(2, 1)].dim_irrep == 2
    assert by_shape[(2, 1)].copies == 2


def test_isotypic_ranks_four_slots_dim_two():
    # multiplicity of lambda in (C^2)^{x4} is the number of semistandard
    # tableaux of shape lambda with entries in {1, 2}; rank = that times dim.
    cfg = hb.AssemblyConfig(4, 2)
    by_shape = {c.shape: c.rank for c in sec.all_isotypic(cfg)}
    assert by_shape == {
        (4,): 5,
        (3, 1): 9,
        (2, 2): 2,
        (2, 1, 1): 0,
        (1, 1, 1, 1): 0,
    }
    assert sum(by_shape.values()) == cfg.dim


def test_isotypic_matches_sector_projectors():
    cfg = hb.AssemblyConfig(3, 3)
    fam = sec.SectorProjectors.build(cfg)
    assert np.max(np.abs(sec.isotypic_projector(cfg, (3,)) - fam.symmetric)) < 1e-12
    assert np.max(np.abs(sec.isotypic_projector(cfg, (1, 1, 1)) - fam.antisymmetric)) < 1e-12
    assert np.max(np.abs(sec.isotypic_projector(cfg, (2, 1)) - fam.para)) < 1e-12


def test_isotypic_projector_commutes_with_representation():
    cfg = hb.AssemblyConfig(3, 2)
    p = sec.isotypic_projector(cfg, (2, 1))
    for op in hb.all_perm_operators(cfg):
        assert np.max(np.abs(op.conjugate(p) - p)) < 1e-12


def test_isotypic_rejects_non_partition():
    cfg = hb.AssemblyConfig(3, 2)
    with pytest.raises(ValueError):
        sec.isotypic_projector(cfg, (2, 2))


# ---------------------------------------------------------------------------
# generalised rays

def test_single_copy_component_is_its_own_ray():
    cfg = hb.AssemblyConfig(3, 3)
    comp = sec.isotypic_component(cfg, (1, 1, 1))
    assert comp.copies == 1
    rays = sec.generalised_rays(comp)
    assert len(rays) == 1
    assert rays[0].dim == 1
    assert np.max(np.abs(rays[0].projector() - comp.projector)) < 1e-10


def test_bosonic_component_splits_into_ordinary_rays():
    # the trivial irrep is one-dimensional, so the symmetric component of
    # three coins is four ordinary rays
    cfg = hb.AssemblyConfig(3, 2)
    comp = sec.isotypic_component(cfg, (3,))
    rays = sec.generalised_rays(comp)
    assert [r.dim for r in rays] == [1, 1, 1, 1]
    total = sum(r.projector() for r in rays)
    assert np.max(np.abs(total - comp.projector)) < 1e-10


def test_multi_copy_split_three_coins():
    cfg = hb.AssemblyConfig(3, 2)
    comp = sec.isotypic_component(cfg, (2, 1))
    rays = sec.generalised_rays(comp, seed=0)
    assert [r.dim for r in rays] == [2, 2]
    total = sum(r.projector() for r in rays)
    assert np.max(np.abs(total - comp.projector)) < 1e-10
    # pairwise orthogonal
    assert np.max(np.abs(rays[0].basis.conj().T @ rays[1].basis)) < 1e-10
    for r in rays:
        assert sec.invariance_residual(cfg, r.basis) < 1e-10
        assert sec.compressed_commutant_dimension(cfg, r.basis) == 1


def test_ray_split_is_seed_deterministic():
    cfg = hb.AssemblyConfig(3, 2)
    comp = sec.isotypic_component(cfg, (2, 1))
    a = sec.generalised_rays(comp, seed=7)
    b = sec.generalised_rays(comp, seed=7)
    for ra, rb in zip(a, b):
        assert np.array_equal(ra.basis, rb.basis)
    # a different seed still splits the same subspace
    c = sec.generalised_rays(comp, seed=8)
    assert np.max(np.abs(sum(r.projector() for r in a) - sum(r.projector() for r in c))) < 1e-9


@pytest.mark.parametrize("n,d", [(2, 2), (3, 2), (2, 3), (3, 3)])
def test_assembly_rays_exhaust_the_space(n, d):
    cfg = hb.AssemblyConfig(n, d)
    rays = sec.assembly_rays(cfg)
    assert sum(r.dim for r in rays) == cfg.dim
    stacked = np.hstack([r.basis for r in rays]) if rays else np.zeros((cfg.dim, 0))
    gram = stacked.conj().T @ stacked
    assert np.max(np.abs(gram - np.eye(cfg.dim))) < 1e-9


def test_ray_count_matches_multiplicities():
    cfg = hb.AssemblyConfig(3, 3)
    rays = sec.assembly_rays(cfg)
    counts: dict[tuple[int, ...], int] = {}
    for r in rays:
        counts[r.shape] = counts.get(r.shape, 0) + 1
    assert counts == {(3,): 10, (2, 1): 8, (1, 1, 1): 1}
    dims = {r.shape: r.dim for r in rays}
    assert dims == {(3,): 1, (2, 1): 2, (1, 1, 1): 1}


# ---------------------------------------------------------------------------
# classification and Schur scalars

def test_classify_vector_labels():
    cfg = hb.AssemblyConfig(2, 2)
    fam = sec.SectorProjectors.build(cfg)
    hh = hb.basis_state(cfg, (0, 0)).amplitudes
    assert sec.classify_vector(fam, hh).label == "bosonic"
    singlet = (hb.basis_state(cfg, (0, 1)).amplitudes - hb.basis_state(cfg, (1, 0)).amplitudes) / math.sqrt(2)
    got = sec.classify_vector(fam, singlet)
    assert got.label == "fermionic"
    assert got.antisymmetric_weight == pytest.approx(1.0, abs=1e-12)
    ht = hb.basis_state(cfg, (0, 1)).amplitudes
    skew = sec.classify_vector(fam, ht)
    assert skew.label == "skew"
    assert skew.symmetric_weight == pytest.approx(0.5, abs=1e-12)
    assert skew.antisymmetric_weight == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(ValueError):
        sec.classify_vector(fam, 2 * hh)


def test_classify_vector_paraparticle():
    cfg = hb.AssemblyConfig(3, 2)
    fam = sec.SectorProjectors.build(cfg)
    v = np.zeros(8, dtype=complex)
    v[cfg.flat_index((0, 0, 1))] = 1 / math.sqrt(2)
    v[cfg.flat_index((0, 1, 0))] = -1 / math.sqrt(2)
    got = sec.classify_vector(fam, v)
    assert got.label == "paraparticle"
    assert got.para_weight == pytest.approx(1.0, abs=1e-12)


def test_schur_scalars_on_symmetric_operator():
    cfg = hb.AssemblyConfig(3, 2)
    rays = sec.assembly_rays(cfg)
    q = hb.group_average(cfg, hb.random_observable(cfg, hb.rng_for(3)))
    report = sec.schur_check(q, rays)
    assert report.ok
    assert report.max_residual < 1e-10
    assert len(report.scalars) == len(rays)
    # trace decomposes through the scalars
    recon = sum(c * r.dim for c, r in zip(report.scalars, rays))
    assert recon == pytest.approx(float(np.trace(q).real), abs=1e-9)


def test_schur_check_flags_non_symmetric_operator():
    cfg = hb.AssemblyConfig(3, 2)
    rays = sec.assembly_rays(cfg)
    q = hb.random_observable(cfg, hb.rng_for(3))  # not twirled
    report = sec.schur_check(q, rays, tol=1e-10)
    assert not report.ok
    assert report.max_residual > 1e-3


@given(st.integers(min_value=0, max_value=500))
def test_twirled_operators_are_schur_scalar(seed):
    cfg = hb.AssemblyConfig(2, 2)
    rays = sec.assembly_rays(cfg)
    q = hb.group_average(cfg, hb.random_observable(cfg, hb.rng_for(seed)))
    assert sec.schur_check(q, rays).ok
