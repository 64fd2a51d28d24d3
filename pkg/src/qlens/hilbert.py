"""Truncated Hilbert space and the equivariant representation of SU_q(2).

The Hilbert space is spanned by vectors |j mu n up/down> with half-integer
labels, stored as doubled integers:

    |two_mu| <= two_j,      two_mu = two_j (mod 2)
    up:   |two_n| <= two_j + 1,  two_n = two_j + 1 (mod 2)
    down: two_j >= 1 and |two_n| <= two_j - 1, same parity as up

The generators act by explicit sparse matrices connecting j to j +- 1/2,
with all j-dependent phase freedom fixed to 1; the relation residuals
computed by :func:`verify_relations` certify that choice.  The Dirac
operator is diagonal (2j + 3/2 on up, -(2j + 1/2) on down), the reality
operator J is antilinear with fourth-root-of-unity phases, and L_q is the
trace-class weight q^j whose square controls all commutant defects.

Operators drop matrix elements whose target lies beyond the truncation;
every verification therefore restricts to "interior" columns two_j <=
two_jmax - margin, since a word of length L moves two_j by at most L.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np
import scipy.sparse as sp

from .ncalgebra import Letter, Monomial, NCPoly
from .qarith import DomainError, q_number_at

Arrow = Literal["up", "down"]


@dataclass(frozen=True, order=True)
class BasisVector:
    two_j: int
    up: bool
    two_mu: int
    two_n: int

    def __post_init__(self):
        if not is_valid_label(self.two_j, self.two_mu, self.two_n, self.up):
            raise ValueError(f"illegal basis label {self}")

    @property
    def arrow(self) -> Arrow:
        return "up" if self.up else "down"

    def key(self) -> tuple[int, int, int, bool]:
        return (self.two_j, self.two_mu, self.two_n, self.up)


def is_valid_label(two_j: int, two_mu: int, two_n: int, up: bool) -> bool:
    if two_j < 0:
        return False
    if abs(two_mu) > two_j or (two_mu - two_j) % 2 != 0:
        return False
    if (two_n - two_j - 1) % 2 != 0:
        return False
    if up:
        return abs(two_n) <= two_j + 1
    return two_j >= 1 and abs(two_n) <= two_j - 1


class TruncatedBasis:
    """All legal basis vectors with two_j <= two_jmax, in a fixed order.

    The enumeration key is (two_j, arrow, two_mu, two_n) with up before
    down, so each j-level is a contiguous slice.
    """

    def __init__(self, two_jmax: int):
        if two_jmax < 0:
            raise ValueError("two_jmax must be nonnegative")
        self.two_jmax = two_jmax
        vectors: list[BasisVector] = []
        for two_j in range(two_jmax + 1):
            for up in (True, False):
                if not up and two_j == 0:
                    continue
                n_bound = two_j + 1 if up else two_j - 1
                for two_mu in range(-two_j, two_j + 1, 2):
                    for two_n in range(-n_bound, n_bound + 1, 2):
                        vectors.append(BasisVector(two_j, up, two_mu, two_n))
        self.vectors: tuple[BasisVector, ...] = tuple(vectors)
        self.index: dict[tuple[int, int, int, bool], int] = {
            v.key(): i for i, v in enumerate(self.vectors)
        }
        self._j_slices: dict[int, tuple[int, int]] = {}
        lo = 0
        for two_j in range(two_jmax + 1):
            count = (two_j + 1) * (two_j + 2) + (two_j + 1) * two_j
            self._j_slices[two_j] = (lo, lo + count)
            lo += count
        assert lo == len(self.vectors)
        self.two_j_array = np.array([v.two_j for v in self.vectors], dtype=np.int64)
        self._op_cache: dict = {}

    def __len__(self) -> int:
        return len(self.vectors)

    def j_slice(self, two_j: int) -> slice:
        lo, hi = self._j_slices[two_j]
        return slice(lo, hi)

    def interior_mask(self, margin: int) -> np.ndarray:
        return self.two_j_array <= self.two_jmax - margin

    def to_json(self) -> dict:
        return {
            "two_jmax": self.two_jmax,
            "vectors": [
                {"two_j": v.two_j, "arrow": v.arrow, "two_mu": v.two_mu, "two_n": v.two_n}
                for v in self.vectors
            ],
        }


def enumerate_basis(two_jmax: int) -> TruncatedBasis:
    return TruncatedBasis(two_jmax)


def coeff_cs(two_j: int, two_mu: int, q: float) -> tuple[float, float]:
    """Spin-splitting coefficients (C, S) with C^2 + S^2 = 1.

    C = q^{-(j+mu)/2} sqrt([j-mu]/[2j]),  S = q^{(j-mu)/2} sqrt([j+mu]/[2j]).
    """
    if not 0.0 < q <= 1.0:
        raise DomainError(f"q = {q} outside (0, 1]")
    if two_j < 1 or abs(two_mu) > two_j or (two_mu - two_j) % 2 != 0:
        raise DomainError(f"bad labels two_j={two_j}, two_mu={two_mu}")
    jp = (two_j + two_mu) // 2
    jm = (two_j - two_mu) // 2
    c = q ** (-jp / 2) * math.sqrt(q_number_at(jm, q) / q_number_at(two_j, q))
    s = q ** (jm / 2) * math.sqrt(q_number_at(jp, q) / q_number_at(two_j, q))
    return c, s


# ---------------------------------------------------------------------------
# Sparse operators
# ---------------------------------------------------------------------------


@dataclass
class SparseOp:
    """A sparse complex operator attached to a truncated basis."""

    basis: TruncatedBasis
    mat: sp.csr_matrix

    def __matmul__(self, other: "SparseOp") -> "SparseOp":
        return SparseOp(self.basis, (self.mat @ other.mat).tocsr())

    def __add__(self, other: "SparseOp") -> "SparseOp":
        return SparseOp(self.basis, (self.mat + other.mat).tocsr())

    def __sub__(self, other: "SparseOp") -> "SparseOp":
        return SparseOp(self.basis, (self.mat - other.mat).tocsr())

    def scale(self, c: complex) -> "SparseOp":
        return SparseOp(self.basis, (self.mat * c).tocsr())

    def dagger(self) -> "SparseOp":
        return SparseOp(self.basis, self.mat.conj().T.tocsr())

    def commutator(self, other: "SparseOp") -> "SparseOp":
        return SparseOp(self.basis, (self.mat @ other.mat - other.mat @ self.mat).tocsr())

    def interior_residual(self, margin: int) -> float:
        """Max column 2-norm over columns with two_j <= two_jmax - margin."""
        mask = self.basis.interior_mask(margin)
        m = self.mat.tocsc()
        colnorms = np.sqrt(np.asarray(m.multiply(m.conj()).sum(axis=0)).real.ravel())
        return float(colnorms[mask].max()) if mask.any() else 0.0

    def to_json(self) -> dict:
        coo = self.mat.tocoo()
        order = np.lexsort((coo.row, coo.col))
        return {
            "two_jmax": self.basis.two_jmax,
            "shape": list(coo.shape),
            "rows": coo.row[order].tolist(),
            "cols": coo.col[order].tolist(),
            "re": coo.data[order].real.tolist(),
            "im": coo.data[order].imag.tolist(),
        }


def identity_op(basis: TruncatedBasis) -> SparseOp:
    return SparseOp(basis, sp.identity(len(basis), dtype=np.complex128, format="csr"))


def _diag_op(basis: TruncatedBasis, values: np.ndarray) -> SparseOp:
    return SparseOp(basis, sp.diags(values.astype(np.complex128)).tocsr())


# Entry tables for the action of a and b.  Rows/columns are (up, down);
# each function returns the 2x2 block for targets at j +- 1/2 given the
# source labels, *excluding* the common prefactor q^{(mu+n-1/2)/2}.
# Half-integer combinations appear as doubled integers throughout.


def _qn(n: int, q: float) -> float:
    return q_number_at(n, q)


def _family_entries(
    g: str, sign: int, two_j: int, two_n: int, q: float, col_arrow: int
) -> dict[int, float]:
    """Nonzero entries {target_arrow_row: value} for one source column.

    Arrow index 0 is up, 1 is down.  The sqrt([j+mu+1]) / sqrt([j-mu])
    prefactor is handled by the caller.  Only the requested column is
    evaluated: the other column's q-number arguments can be negative for
    labels that do not occur with that arrow.
    """
    tj = two_j
    if g == "a":
        if sign > 0:
            if col_arrow == 0:
                return {
                    0: q ** (-(tj + 1) / 2) * math.sqrt(_qn((tj + two_n + 3) // 2, q)) / _qn(tj + 2, q),
                    1: q**0.5 * math.sqrt(_qn((tj - two_n + 1) // 2, q)) / (_qn(tj + 1, q) * _qn(tj + 2, q)),
                }
            return {1: q ** (-tj / 2) * math.sqrt(_qn((tj + two_n + 1) // 2, q)) / _qn(tj + 1, q)}
        if col_arrow == 0:
            return {0: q ** ((tj + 2) / 2) * math.sqrt(_qn((tj - two_n + 1) // 2, q)) / _qn(tj + 1, q)}
        return {
            0: -(q**0.5) * math.sqrt(_qn((tj + two_n + 1) // 2, q)) / (_qn(tj, q) * _qn(tj + 1, q)),
            1: q ** ((tj + 1) / 2) * math.sqrt(_qn((tj - two_n - 1) // 2, q)) / _qn(tj, q),
        }
    if g == "b":
        if sign > 0:
            if col_arrow == 0:
                return {
                    0: math.sqrt(_qn((tj - two_n + 3) // 2, q)) / _qn(tj + 2, q),
                    1: -(q ** (-(tj + 2) / 2)) * math.sqrt(_qn((tj + two_n + 1) // 2, q)) / (_qn(tj + 1, q) * _qn(tj + 2, q)),
                }
            return {1: q**-0.5 * math.sqrt(_qn((tj - two_n + 1) // 2, q)) / _qn(tj + 1, q)}
        if col_arrow == 0:
            return {0: -(q**-0.5) * math.sqrt(_qn((tj + two_n + 1) // 2, q)) / _qn(tj + 1, q)}
        return {
            0: -(q ** (tj / 2)) * math.sqrt(_qn((tj - two_n + 1) // 2, q)) / (_qn(tj, q) * _qn(tj + 1, q)),
            1: -math.sqrt(_qn((tj + two_n - 1) // 2, q)) / _qn(tj, q),
        }
    raise ValueError(f"no entry table for generator {g!r}")


def generator_op(g: Letter, basis: TruncatedBasis, q: float) -> SparseOp:
    """The representation matrix of a generator on the truncated basis.

    a shifts (j, mu, n) by (+-1/2, +1/2, +1/2), b by (+-1/2, +1/2, -1/2);
    their stars act as the hermitian conjugates.
    """
    if not 0.0 < q <= 1.0:
        raise DomainError(f"q = {q} outside (0, 1]")
    key = (g, q)
    cached = basis._op_cache.get(key)
    if cached is not None:
        return cached
    if g in ("a*", "b*"):
        base = generator_op("a" if g == "a*" else "b", basis, q)
        op = base.dagger()
        basis._op_cache[key] = op
        return op

    dmu = 1
    dn = 1 if g == "a" else -1
    rows: list[int] = []
    cols: list[int] = []
    vals: list[float] = []
    for ci, v in enumerate(basis.vectors):
        tj0, tmu, tn = v.two_j, v.two_mu + dmu, v.two_n + dn
        pref_base = q ** ((v.two_mu + v.two_n - 1) / 4)
        col_arrow = 0 if v.up else 1
        for sign in (1, -1):
            tj = tj0 + sign
            if tj < 0 or tj > basis.two_jmax:
                continue
            bracket = (tj0 + v.two_mu) // 2 + 1 if sign > 0 else (tj0 - v.two_mu) // 2
            if bracket == 0:
                continue
            pref = pref_base * math.sqrt(_qn(bracket, q))
            entries = _family_entries(g, sign, tj0, v.two_n, q, col_arrow)
            for row_arrow, val in entries.items():
                if val == 0.0:
                    continue
                up_t = row_arrow == 0
                if not is_valid_label(tj, tmu, tn, up_t):
                    continue
                ri = basis.index.get((tj, tmu, tn, up_t))
                if ri is None:
                    continue
                rows.append(ri)
                cols.append(ci)
                vals.append(pref * val)
    n = len(basis)
    mat = sp.coo_matrix(
        (np.array(vals, dtype=np.complex128), (rows, cols)), shape=(n, n)
    ).tocsr()
    op = SparseOp(basis, mat)
    basis._op_cache[key] = op
    return op


def word_op(x: NCPoly, basis: TruncatedBasis, q: float) -> SparseOp:
    """Represent an algebra element: sum of generator products per monomial."""
    n = len(basis)
    total = sp.csr_matrix((n, n), dtype=np.complex128)
    for mon, c in x.items():
        m = sp.identity(n, dtype=np.complex128, format="csr")
        for g in mon.letters():
            m = m @ generator_op(g, basis, q).mat
        total = total + c.eval_at(q) * m
    return SparseOp(basis, total.tocsr())


def dirac(basis: TruncatedBasis) -> SparseOp:
    vals = np.array(
        [
            (2 * v.two_j + 3) / 2 if v.up else -(2 * v.two_j + 1) / 2
            for v in basis.vectors
        ]
    )
    return _diag_op(basis, vals)


def dirac_two_lambda(v: BasisVector) -> int:
    """Twice the Dirac eigenvalue on a basis vector (exact integer)."""
    return 2 * v.two_j + 3 if v.up else -(2 * v.two_j + 1)


def lq_weight(basis: TruncatedBasis, q: float) -> SparseOp:
    if not 0.0 < q <= 1.0:
        raise DomainError(f"q = {q} outside (0, 1]")
    vals = np.array([q ** (v.two_j / 2) for v in basis.vectors])
    return _diag_op(basis, vals)


def k_gradings(basis: TruncatedBasis, q: float) -> tuple[SparseOp, SparseOp]:
    """Diagonal grading operators with entries q^mu and q^n."""
    if not 0.0 < q <= 1.0:
        raise DomainError(f"q = {q} outside (0, 1]")
    lam = np.array([q ** (v.two_mu / 2) for v in basis.vectors])
    rho = np.array([q ** (v.two_n / 2) for v in basis.vectors])
    return _diag_op(basis, lam), _diag_op(basis, rho)


# ---------------------------------------------------------------------------
# The antilinear reality operator
# ---------------------------------------------------------------------------

_I_POWERS = (1 + 0j, 1j, -1 + 0j, -1j)


@dataclass
class AntilinearOp:
    """v |-> phase * (permuted conjugate of v); phases are exact i^k."""

    basis: TruncatedBasis
    perm: np.ndarray
    phase: np.ndarray

    def as_matrix(self) -> sp.csr_matrix:
        n = len(self.basis)
        return sp.coo_matrix(
            (self.phase, (self.perm, np.arange(n))), shape=(n, n)
        ).tocsr()

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.as_matrix() @ np.conj(vec)

    def squared_scalar(self) -> complex:
        """J^2 as a scalar, if it is one (raises otherwise)."""
        m = self.as_matrix()
        jj = (m @ m.conj()).tocoo()
        n = len(self.basis)
        if jj.nnz != n or not np.array_equal(np.sort(jj.row), np.arange(n)):
            raise ValueError("J^2 is not diagonal")
        vals = np.zeros(n, dtype=np.complex128)
        vals[jj.row] = jj.data
        first = vals[0]
        if not np.array_equal(vals, np.full(n, first)):
            raise ValueError("J^2 is not scalar")
        return complex(first)

    def sandwich(self, op: SparseOp) -> SparseOp:
        """The linear operator J A J^{-1} (J^{-1} = -J since J^2 = -1)."""
        m = self.as_matrix()
        return SparseOp(self.basis, (-(m @ op.mat.conj() @ m.conj())).tocsr())

    def commutes_exactly_with_diag(self, diag_vals: np.ndarray) -> bool:
        """Exact DJ = JD for a real diagonal D given by diag_vals."""
        return bool(np.array_equal(diag_vals[self.perm], diag_vals))


def reality(basis: TruncatedBasis) -> AntilinearOp:
    """J: (j, mu, n) -> (j, -mu, -n) with phase i^(2(2j +- (mu+n)))."""
    n = len(basis)
    perm = np.zeros(n, dtype=np.int64)
    phase = np.zeros(n, dtype=np.complex128)
    for i, v in enumerate(basis.vectors):
        perm[i] = basis.index[(v.two_j, -v.two_mu, -v.two_n, v.up)]
        e = 2 * v.two_j + (v.two_mu + v.two_n) * (1 if v.up else -1)
        phase[i] = _I_POWERS[e % 4]
    return AntilinearOp(basis, perm, phase)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass
class RelationReport:
    q: float
    two_jmax: int
    margin: int
    residuals: dict[str, float]

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values())

    def passed(self, tol: float = 1e-10) -> bool:
        return self.max_residual < tol

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "two_jmax": self.two_jmax,
            "margin": self.margin,
            "residuals": dict(sorted(self.residuals.items())),
            "max_residual": self.max_residual,
        }


def verify_relations(basis: TruncatedBasis, q: float, margin: int) -> RelationReport:
    """Interior residuals of the five defining relations."""
    if margin < 2:
        raise ValueError("margin must be at least 2 for length-2 words")
    a = generator_op("a", basis, q)
    b = generator_op("b", basis, q)
    astar = generator_op("a*", basis, q)
    bstar = generator_op("b*", basis, q)
    one = identity_op(basis)
    rels = {
        "ba=q.ab": (b @ a) - (a @ b).scale(q),
        "b*a=q.ab*": (bstar @ a) - (a @ bstar).scale(q),
        "bb*=b*b": (b @ bstar) - (bstar @ b),
        "a*a+q2.b*b=1": (astar @ a) + (bstar @ b).scale(q * q) - one,
        "aa*+bb*=1": (a @ astar) + (b @ bstar) - one,
    }
    residuals = {name: op.interior_residual(margin) for name, op in rels.items()}
    return RelationReport(q, basis.two_jmax, margin, residuals)


def adjointness_residual(x: NCPoly, basis: TruncatedBasis, q: float, margin: int) -> float:
    """Interior residual of word_op(x*) - word_op(x)^dagger.

    The adjoint couples rows and columns, so both sides are compared after
    projecting rows *and* columns to the interior.
    """
    r = word_op(x.star(), basis, q) - word_op(x, basis, q).dagger()
    mask = basis.interior_mask(margin).astype(float)
    proj = sp.diags(mask)
    clipped = proj @ r.mat @ proj
    return float(np.abs(clipped.data).max()) if clipped.nnz else 0.0


def _spectral_norm(mat: sp.spmatrix, iters: int = 200, tol: float = 1e-12) -> float:
    """Largest singular value by deterministic power iteration on A A^H."""
    m = mat.tocsr()
    if m.nnz == 0:
        return 0.0
    if min(m.shape) <= 4:
        return float(np.linalg.norm(m.toarray(), 2))
    v = np.ones(m.shape[1], dtype=np.complex128)
    v /= np.linalg.norm(v)
    last = 0.0
    for _ in range(iters):
        w = m @ v
        v2 = m.conj().T @ w
        nrm = np.linalg.norm(v2)
        if nrm == 0.0:
            return 0.0
        v = v2 / nrm
        cur = math.sqrt(nrm)
        if abs(cur - last) <= tol * max(cur, 1.0):
            return cur
        last = cur
    return last


@dataclass
class DecayProfile:
    x: str
    y: str
    mode: str
    q: float
    two_js: list[int]
    norms: list[float]

    @property
    def ratios(self) -> list[float]:
        return [n / self.q**tj for tj, n in zip(self.two_js, self.norms)]

    def bounded_by(self, factor: float, ref_two_j: int) -> bool:
        ratios = dict(zip(self.two_js, self.ratios))
        ref = ratios[ref_two_j]
        return all(r <= factor * ref + 1e-15 for tj, r in ratios.items() if tj >= ref_two_j)

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "mode": self.mode,
            "q": self.q,
            "two_js": self.two_js,
            "norms": self.norms,
            "ratios": self.ratios,
        }


def commutant_decay(
    x: Letter,
    y: Letter,
    basis: TruncatedBasis,
    q: float,
    mode: str = "order0",
    two_j_range: Iterable[int] | None = None,
) -> DecayProfile:
    """Per-j norms of the commutant defect against the opposite algebra.

    order0 measures [pi(x), J pi(y)* J^-1]; order1 measures
    [[D, pi(x)], J pi(y)* J^-1].  Both decay like q^(2j) row-blockwise.
    """
    px = generator_op(x, basis, q)
    j = reality(basis)
    yop = j.sandwich(generator_op(y, basis, q).dagger())
    if mode == "order0":
        c = px.commutator(yop)
    elif mode == "order1":
        d = dirac(basis)
        c = d.commutator(px).commutator(yop)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if two_j_range is None:
        two_j_range = range(0, basis.two_jmax - 1)
    two_js = list(two_j_range)
    mat = c.mat.tocsr()
    norms = [ _spectral_norm(mat[basis.j_slice(tj), :]) for tj in two_js ]
    return DecayProfile(x, y, mode, q, two_js, norms)
