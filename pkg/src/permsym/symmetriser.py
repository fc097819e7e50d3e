"""The symmetriser on operators and what expectation values can see.

Sigma(A) = (1/n!) sum_pi P(pi) A P(pi)^dagger averages an operator over
the permutation representation.  It is an orthogonal projector on the
operator space End(H) with the Hilbert-Schmidt inner product, fixes
exactly the symmetric (permutation-commuting) operators, and preserves
trace, self-adjointness and positivity.  Two trace identities follow and
are exposed as residual checks:

    (a)  Tr(Sigma(W) Q) = Tr(Sigma(W) Sigma(Q))
    (b)  Tr(W Sigma(Q)) = Tr(Sigma(W) Sigma(Q))

so states with equal Sigma-images ("~-equivalent") are indistinguishable
by symmetric observables, and symmetric states cannot distinguish
observables with equal Sigma-images.  Superselection (pinching by any
projector family that commutes with the observables in play) preserves
all such expectations; the sector family of :mod:`permsym.sectors` is the
physically motivated instance.

satisfies_sp / satisfies_ip decide the two permutation-invariance notions
for states: restriction to the bosonic+fermionic subspace with full
permutation commutation, versus invariance of every Born pairing against
a fixed list of observables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import hilbert
from .hilbert import EPS_ABS, AssemblyConfig
from .sectors import SectorProjectors


def symmetrise(config: AssemblyConfig, a: np.ndarray) -> np.ndarray:
    """Sigma(A): the group average (1/n!) sum_pi P(pi) A P(pi)^dagger."""
    return hilbert.group_average(config, a)


def hs_inner(x: np.ndarray, y: np.ndarray) -> complex:
    """Hilbert-Schmidt inner product Tr(X^dagger Y)."""
    return complex(np.sum(np.asarray(x).conj() * np.asarray(y)))


def sim_equivalent(
    config: AssemblyConfig, a: np.ndarray, b: np.ndarray, tol: float = EPS_ABS
) -> bool:
    """Whether two operators have the same symmetrisation (written A ~ B).

    ~-equivalent states give identical expectations on every symmetric
    observable, and conversely.
    """
    return float(np.max(np.abs(symmetrise(config, a) - symmetrise(config, b)))) <= tol


@dataclass(frozen=True, eq=False)
class SymClass:
    """A ~-equivalence class, keyed by the shared Sigma-image."""

    config: AssemblyConfig
    canonical: np.ndarray = field(repr=False)

    @classmethod
    def of(cls, config: AssemblyConfig, a: np.ndarray) -> "SymClass":
        return cls(config, symmetrise(config, a))

    def contains(self, a: np.ndarray, tol: float = EPS_ABS) -> bool:
        return (
            float(np.max(np.abs(symmetrise(self.config, a) - self.canonical))) <= tol
        )

    def same_class(self, other: "SymClass", tol: float = EPS_ABS) -> bool:
        return float(np.max(np.abs(self.canonical - other.canonical))) <= tol


def block_truncate(sectors: SectorProjectors, a: np.ndarray) -> np.ndarray:
    """E_S A E_S + E_A A E_A + E_P A E_P: kill the cross-sector blocks.

    Agrees with Sigma(A) whenever A is symmetric, and has the same
    expectations against symmetric observables as A itself.
    """
    a = np.asarray(a, dtype=complex)
    out = np.zeros_like(a)
    for e in sectors.family():
        out += e @ a @ e
    return out


def verify_identity_a(config: AssemblyConfig, w: np.ndarray, q: np.ndarray) -> float:
    """Residual of Tr(Sigma(W) Q) = Tr(Sigma(W) Sigma(Q))."""
    sw = symmetrise(config, w)
    sq = symmetrise(config, q)
    return abs(complex(np.sum(sw.T * q)) - complex(np.sum(sw.T * sq)))


def verify_identity_b(config: AssemblyConfig, w: np.ndarray, q: np.ndarray) -> float:
    """Residual of Tr(W Sigma(Q)) = Tr(Sigma(W) Sigma(Q))."""
    sw = symmetrise(config, w)
    sq = symmetrise(config, q)
    return abs(complex(np.sum(w.T * sq)) - complex(np.sum(sw.T * sq)))


@dataclass(frozen=True)
class ProjectorOnOperatorsReport:
    """Numerical evidence that Sigma is an HS-orthogonal projector."""

    samples: int
    seed: int
    tolerance: float
    max_idempotence_residual: float
    max_selfadjoint_residual: float

    @property
    def ok(self) -> bool:
        return (
            self.max_idempotence_residual <= self.tolerance
            and self.max_selfadjoint_residual <= self.tolerance
        )


def is_projector_on_operator_space(
    config: AssemblyConfig, samples: int = 20, seed: int = 0, tol: float = EPS_ABS
) -> ProjectorOnOperatorsReport:
    """Check Sigma(Sigma(A)) = Sigma(A) and <Sigma(X), Y> = <X, Sigma(Y)>
    on seeded random operator pairs."""
    rng = hilbert.rng_for(seed)
    idem = 0.0
    adj = 0.0
    for _ in range(samples):
        x = hilbert.random_observable(config, rng)
        y = hilbert.random_observable(config, rng)
        sx = symmetrise(config, x)
        idem = max(idem, float(np.max(np.abs(symmetrise(config, sx) - sx))))
        adj = max(adj, abs(hs_inner(sx, y) - hs_inner(x, symmetrise(config, y))))
    return ProjectorOnOperatorsReport(samples, seed, tol, idem, adj)


# ---------------------------------------------------------------------------
# superselection

def _validate_family(dim: int, family: list[np.ndarray], tol: float) -> None:
    total = np.zeros((dim, dim), dtype=complex)
    for i, e in enumerate(family):
        if e.shape != (dim, dim):
            raise ValueError(f"projector {i} has shape {e.shape}, expected {(dim, dim)}")
        if hilbert.selfadjoint_residual(e) > tol:
            raise ValueError(f"projector {i} is not self-adjoint within {tol}")
        for j, f in enumerate(family):
            prod = e @ f
            want = e if i == j else 0.0
            if float(np.max(np.abs(prod - want))) > 1e-8:
                raise ValueError(f"family members {i},{j} are not orthogonal projectors")
        total += e
    if float(np.max(np.abs(total - np.eye(dim)))) > 1e-8:
        raise ValueError("projector family does not sum to the identity")


def superselect(w: np.ndarray, family: list[np.ndarray], tol: float = EPS_ABS) -> np.ndarray:
    """Pinch a state by a projector family: W -> sum_alpha E_alpha W E_alpha.

    For any observable commuting with every family member the Born pairing
    is unchanged, so statistics cannot reveal whether the pinch happened
    (no signalling through superselection).
    """
    w = np.asarray(w, dtype=complex)
    _validate_family(w.shape[0], [np.asarray(e, dtype=complex) for e in family], tol)
    out = np.zeros_like(w)
    for e in family:
        out += e @ w @ e
    return out


def sector_superselect(sectors: SectorProjectors, w: np.ndarray) -> np.ndarray:
    return superselect(w, list(sectors.family()))


# ---------------------------------------------------------------------------
# the two invariance notions for states

def satisfies_sp(
    sectors: SectorProjectors, w: np.ndarray, tol: float = EPS_ABS
) -> bool:
    """State permutation invariance: some convex decomposition of W into
    permutation-fixed ray projectors exists.

    Spectrally equivalent formulation (used here): the support of W lies
    inside ran(E_S) + ran(E_A), and W commutes with every P(pi).  The
    maximally mixed state fails this for n >= 3: its support meets the
    paraparticle sector.
    """
    w = np.asarray(w, dtype=complex)
    if float(np.max(np.abs(sectors.para @ w))) > tol:
        return False
    return hilbert.is_symmetric_operator(sectors.config, w, tol=tol)


def satisfies_ip(
    config: AssemblyConfig,
    w: np.ndarray,
    observables: list[np.ndarray],
    tol: float = EPS_ABS,
) -> bool:
    """Invariance of the pairing: Tr(P(pi) W P(pi)^dagger Q) = Tr(W Q) for
    every pi and every supplied observable Q."""
    w = np.asarray(w, dtype=complex)
    for op in hilbert.all_perm_operators(config):
        moved = op.conjugate(w)
        for q in observables:
            q = np.asarray(q, dtype=complex)
            if abs(complex(np.sum(moved.T * q)) - complex(np.sum(w.T * q))) > tol:
                return False
    return True
