"""n-particle Hilbert space with permutation operators.

The assembly space is the n-fold tensor power of a d-dimensional local
space, dimension D = d**n.  Product basis indexing is row-major with slot 1
most significant: the basis vector labelled by letters (i_1, ..., i_n) sits
at flat index sum_k i_k * d**(n-k).

A permutation pi acts by moving the state of slot k to slot pi(k):

    P(pi) (v_1 x ... x v_n) = w_1 x ... x w_n,   w_{pi(k)} = v_k,

so output slot m carries input slot pi^{-1}(m).  With the composition
convention of :mod:`permsym.symgroup` this makes pi -> P(pi) a group
homomorphism, P(p compose q) = P(p) P(q).

All operators here are dense complex numpy arrays; P(pi) is additionally
kept as an index map so applying or conjugating by it costs O(D) / O(D^2)
instead of a matrix product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import symgroup
from .symgroup import Permutation

DIM_CAP = 2**20
EPS_NORM = 1e-10
EPS_ABS = 1e-10


class NumericalIntegrityError(RuntimeError):
    """A quantity that must be real (up to tolerance) came out complex."""


@dataclass(frozen=True)
class AssemblyConfig:
    """n identical subsystems of local dimension d."""

    n: int
    d: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"need n >= 1 subsystems, got {self.n}")
        if self.d < 1:
            raise ValueError(f"need local dimension d >= 1, got {self.d}")
        if self.d**self.n > DIM_CAP:
            raise ValueError(
                f"assembly dimension {self.d}**{self.n} exceeds cap {DIM_CAP}"
            )

    @property
    def dim(self) -> int:
        return self.d**self.n

    def flat_index(self, letters: Sequence[int]) -> int:
        if len(letters) != self.n:
            raise ValueError(f"expected {self.n} letters, got {len(letters)}")
        idx = 0
        for i in letters:
            if not 0 <= i < self.d:
                raise ValueError(f"letter {i} outside 0..{self.d - 1}")
            idx = idx * self.d + i
        return idx

    def letters(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.dim:
            raise ValueError(f"index {index} outside 0..{self.dim - 1}")
        out = []
        for _ in range(self.n):
            index, rem = divmod(index, self.d)
            out.append(rem)
        return tuple(reversed(out))


def _as_square(config: AssemblyConfig, m: np.ndarray) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.shape != (config.dim, config.dim):
        raise ValueError(f"expected shape {(config.dim, config.dim)}, got {m.shape}")
    return m


def _as_vector(config: AssemblyConfig, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape != (config.dim,):
        raise ValueError(f"expected shape {(config.dim,)}, got {v.shape}")
    return v


def selfadjoint_residual(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized vector on the assembly space."""

    config: AssemblyConfig
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        v = _as_vector(self.config, self.amplitudes)
        object.__setattr__(self, "amplitudes", v)
        norm = float(np.linalg.norm(v))
        if abs(norm - 1.0) > EPS_NORM:
            raise ValueError(f"state vector norm {norm} is not 1 within {EPS_NORM}")

    def projector(self) -> np.ndarray:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True, eq=False)
class Observable:
    """Self-adjoint operator on the assembly space."""

    config: AssemblyConfig
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = _as_square(self.config, self.matrix)
        object.__setattr__(self, "matrix", m)
        res = selfadjoint_residual(m)
        if res > EPS_ABS:
            raise ValueError(f"observable self-adjointness residual {res} > {EPS_ABS}")


@dataclass(frozen=True, eq=False)
class DensityOperator:
    """Self-adjoint, positive semidefinite, unit-trace operator."""

    config: AssemblyConfig
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        m = _as_square(self.config, self.matrix)
        object.__setattr__(self, "matrix", m)
        res = selfadjoint_residual(m)
        if res > EPS_ABS:
            raise ValueError(f"density self-adjointness residual {res} > {EPS_ABS}")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > EPS_ABS:
            raise ValueError(f"density trace {tr} is not 1 within {EPS_ABS}")
        lo = float(np.min(np.linalg.eigvalsh(m)))
        if lo < -EPS_ABS:
            raise ValueError(f"density has negative eigenvalue {lo}")

    @classmethod
    def from_mixture(
        cls, weighted: Iterable[tuple[float, StateVector]]
    ) -> "DensityOperator":
        """Density operator sum_i w_i |psi_i><psi_i| from weights and states."""
        weighted = list(weighted)
        if not weighted:
            raise ValueError("empty mixture")
        config = weighted[0][1].config
        m = np.zeros((config.dim, config.dim), dtype=complex)
        for w, psi in weighted:
            if psi.config != config:
                raise ValueError("mixture mixes different assembly configs")
            if w < -EPS_ABS:
                raise ValueError(f"negative mixture weight {w}")
            m += w * psi.projector()
        return cls(config, m)


def product_state(config: AssemblyConfig, factors: Sequence[np.ndarray]) -> StateVector:
    """Tensor product of per-slot local vectors, slot 1 first (leftmost factor
    is most significant in the flat index)."""
    if len(factors) != config.n:
        raise ValueError(f"expected {config.n} factors, got {len(factors)}")
    out = np.ones(1, dtype=complex)
    for f in factors:
        f = np.asarray(f, dtype=complex)
        if f.shape != (config.d,):
            raise ValueError(f"factor shape {f.shape} is not ({config.d},)")
        norm = float(np.linalg.norm(f))
        if norm <= EPS_NORM:
            raise ValueError("zero local factor gives no state")
        out = np.kron(out, f / norm)
    return StateVector(config, out)


def basis_state(config: AssemblyConfig, letters: Sequence[int]) -> StateVector:
    v = np.zeros(config.dim, dtype=complex)
    v[config.flat_index(letters)] = 1.0
    return StateVector(config, v)


# ---------------------------------------------------------------------------
# permutation operators

def _target_map(config: AssemblyConfig, perm: Permutation) -> np.ndarray:
    """target[i] = flat index of P(pi) e_i."""
    n, d, dim = config.n, config.d, config.dim
    strides = d ** np.arange(n - 1, -1, -1, dtype=np.int64)
    digits = (np.arange(dim, dtype=np.int64)[:, None] // strides) % d
    moved = np.empty_like(digits)
    for k in range(1, n + 1):
        moved[:, perm(k) - 1] = digits[:, k - 1]
    return moved @ strides


@dataclass(frozen=True, eq=False)
class PermOperator:
    """Unitary representation P(pi) on the assembly space.

    ``target`` is the basis index map (P e_i = e_target[i]); the 0/1 matrix
    is materialised on demand.
    """

    config: AssemblyConfig
    perm: Permutation
    target: np.ndarray = field(repr=False)

    @classmethod
    def build(cls, config: AssemblyConfig, perm: Permutation) -> "PermOperator":
        if perm.n != config.n:
            raise ValueError(f"permutation of 1..{perm.n} on an n={config.n} assembly")
        return cls(config, perm, _target_map(config, perm))

    @property
    def source(self) -> np.ndarray:
        """source[r] = i with P e_i = e_r (index map of the inverse)."""
        return np.argsort(self.target)

    def matrix(self) -> np.ndarray:
        m = np.zeros((self.config.dim, self.config.dim), dtype=complex)
        m[self.target, np.arange(self.config.dim)] = 1.0
        return m

    def apply_to_vector(self, v: np.ndarray) -> np.ndarray:
        v = _as_vector(self.config, v)
        out = np.empty_like(v)
        out[self.target] = v
        return out

    def conjugate(self, a: np.ndarray) -> np.ndarray:
        """P a P^dagger, an O(D^2) relabelling of matrix entries."""
        a = _as_square(self.config, a)
        src = self.source
        return a[np.ix_(src, src)]


def perm_operator(config: AssemblyConfig, perm: Permutation) -> PermOperator:
    return PermOperator.build(config, perm)


def all_perm_operators(config: AssemblyConfig) -> list[PermOperator]:
    return [perm_operator(config, p) for p in symgroup.all_permutations(config.n)]


def conjugate_by(perm_op: PermOperator, a: np.ndarray) -> np.ndarray:
    return perm_op.conjugate(a)


def is_symmetric_operator(
    config: AssemblyConfig, a: np.ndarray, tol: float = EPS_ABS
) -> bool:
    """True when a commutes with every P(pi), checked as P a P^dagger == a."""
    a = _as_square(config, a)
    return all(
        float(np.max(np.abs(op.conjugate(a) - a))) <= tol
        for op in all_perm_operators(config)
    )


def group_average(config: AssemblyConfig, a: np.ndarray) -> np.ndarray:
    """Twirl over the permutation representation:
    (1/n!) sum_pi P(pi) a P(pi)^dagger.

    Projects End(H) onto the commutant of the representation.
    """
    a = _as_square(config, a)
    acc = np.zeros_like(a)
    ops = all_perm_operators(config)
    for op in ops:
        acc += op.conjugate(a)
    return acc / len(ops)


# ---------------------------------------------------------------------------
# Born-rule pairing

def real_expectation(value: complex, tol: float = EPS_ABS) -> float:
    """Collapse a should-be-real complex scalar, guarding the residue."""
    if abs(value.imag) > tol:
        raise NumericalIntegrityError(
            f"imaginary residue {value.imag} exceeds tolerance {tol}"
        )
    return float(value.real)


def expectation(state: DensityOperator | np.ndarray, obs: Observable | np.ndarray) -> float:
    """Born-rule pairing Tr(W Q)."""
    w = state.matrix if isinstance(state, DensityOperator) else np.asarray(state)
    q = obs.matrix if isinstance(obs, Observable) else np.asarray(obs)
    if w.shape != q.shape:
        raise ValueError(f"shape mismatch {w.shape} vs {q.shape}")
    return real_expectation(complex(np.sum(w.T * q)))


# ---------------------------------------------------------------------------
# seeded sampling (fixed seed => identical draws across runs)

def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_observable(config: AssemblyConfig, rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(config.dim, config.dim)) + 1j * rng.normal(
        size=(config.dim, config.dim)
    )
    return (m + m.conj().T) / 2.0


def random_density(config: AssemblyConfig, rng: np.random.Generator) -> np.ndarray:
    m = rng.normal(size=(config.dim, config.dim)) + 1j * rng.normal(
        size=(config.dim, config.dim)
    )
    w = m @ m.conj().T
    return w / np.trace(w).real


def random_state(config: AssemblyConfig, rng: np.random.Generator) -> np.ndarray:
    v = rng.normal(size=config.dim) + 1j * rng.normal(size=config.dim)
    return v / np.linalg.norm(v)


# ---------------------------------------------------------------------------
# JSON forms: complex matrices and vectors with exact float round-trip.
# Floats serialise via repr (shortest round-trip decimal), so
# serialise -> parse -> serialise is byte-identical.

def matrix_obj(m: np.ndarray) -> dict:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim {m.ndim}")
    rows, cols = m.shape
    data = [[float(x.real), float(x.imag)] for x in m.reshape(-1)]
    return {"rows": rows, "cols": cols, "data": data}


def matrix_to_json(m: np.ndarray) -> str:
    return json.dumps(matrix_obj(m))


def matrix_from_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad matrix JSON: {exc}") from exc
    if rows < 0 or cols < 0 or len(data) != rows * cols:
        raise ValueError(f"matrix JSON claims {rows}x{cols} but has {len(data)} entries")
    flat = np.array([complex(re, im) for re, im in data], dtype=complex)
    return flat.reshape(rows, cols)


def vector_obj(v: np.ndarray) -> dict:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"expected a vector, got ndim {v.ndim}")
    data = [[float(x.real), float(x.imag)] for x in v]
    return {"length": v.shape[0], "data": data}


def vector_to_json(v: np.ndarray) -> str:
    return json.dumps(vector_obj(v))


def vector_from_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
        length, data = int(obj["length"]), obj["data"]
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"bad vector JSON: {exc}") from exc
    if len(data) != length:
        raise ValueError(f"vector JSON claims length {length} but has {len(data)} entries")
    return np.array([complex(re, im) for re, im in data], dtype=complex)
