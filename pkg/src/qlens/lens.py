"""Quantum lens spaces: Z/p eigenspaces, Dirac spectra, lattice diagrams.

The cyclic group acts on basis vectors through the phase exponent

    (1+r) mu + (1-r) n + eps(r)/2   (mod p),   eps(r) = (r+1) mod 2,

and H_K collects the vectors where the exponent is K.  Parameters are
always normalized to odd r in (-p, p) (replacing r by r -+ p when r is
even), which makes eps vanish and the exponent an integer on the nose.
Shifting an odd r by p is *not* an identity on the Hilbert space: it
relabels K by p/2 when p is even, so normalization never does it.

Multiplicities come from a brute-force count over (mu, n) ranges; that
count is the authoritative oracle.  The closed-form tables for r = -1 are
reproduced in two variants: ``printed`` copies the published formulas
verbatim, ``corrected`` replaces the families that disagree with direct
enumeration (the negative-eigenvalue multiplicity 2(2k+1)(kp+2l+1), which
the oracle gives as 2(2k+1)(kp+l+1); the family at -(2k+1)p - 2l + 1/2,
which sits at -(2k+1)p - 2l - 3/2; and the even-p K=0 families, which miss
the n = 0 (mod p/2) solutions that are not 0 (mod p)).  Mismatches between
variants and the oracle are reported, never silently patched.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Literal

import numpy as np

from .hilbert import BasisVector, TruncatedBasis, is_valid_label
from .ncalgebra import Monomial

Provenance = Literal["enumerated", "closed_form_printed", "closed_form_corrected"]


class NotCoprime(ValueError):
    """p and r share a factor, so the cyclic action is not free."""


@dataclass(frozen=True)
class LensParams:
    """Normalized parameters (p, r, K): r odd, -p < r < p, gcd(p, r) = 1."""

    p: int
    r: int
    K: int = 0

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be positive")
        if math.gcd(self.p, self.r) != 1:
            raise NotCoprime(f"gcd({self.p}, {self.r}) != 1")
        if self.p > 1 and (self.r % 2 == 0 or not -self.p < self.r < self.p):
            raise ValueError(f"r = {self.r} is not normalized for p = {self.p}")
        if not 0 <= self.K < self.p:
            raise ValueError(f"K = {self.K} outside 0..{self.p - 1}")

    @property
    def epsilon(self) -> int:
        return (self.r + 1) % 2

    def with_K(self, K: int) -> LensParams:
        return LensParams(self.p, self.r, K % self.p)

    def negated(self) -> LensParams:
        """Parameters for the r -> -r equivalent space, same K."""
        if self.p == 1:
            return self
        return LensParams(self.p, -self.r, self.K)


def normalize(p: int, r: int, K: int = 0) -> LensParams:
    """Reduce (p, r) to the canonical odd representative.

    r is first reduced mod 2p into (-p, p); an even r is then shifted by
    -+ p (p is odd in that case, so the result is odd).  The mod-2p
    reduction leaves the phase exponent untouched; the parity shift is the
    usual even-to-odd equivalence.
    """
    if p < 1:
        raise ValueError("p must be positive")
    if math.gcd(p, r) != 1:
        raise NotCoprime(f"gcd({p}, {r}) != 1")
    if p == 1:
        return LensParams(1, 1, 0)
    r = (r + p) % (2 * p) - p  # now in [-p, p), and coprimality excludes -p
    if r % 2 == 0:
        r = r - p if r > 0 else r + p
    return LensParams(p, r, K % p)


def valid_r_values(p: int) -> list[int]:
    """All normalized r for a given p."""
    if p == 1:
        return [1]
    return [r for r in range(-p + 1, p) if r % 2 != 0 and math.gcd(p, r) == 1]


def zp_phase_exponent(v: BasisVector, params: LensParams) -> int:
    """The integer residue (1+r) mu + (1-r) n + eps/2 mod p."""
    num = (1 + params.r) * v.two_mu + (1 - params.r) * v.two_n + params.epsilon
    assert num % 2 == 0
    return (num // 2) % params.p


def _exponent(two_mu: int, two_n: int, params: LensParams) -> int:
    num = (1 + params.r) * two_mu + (1 - params.r) * two_n + params.epsilon
    return (num // 2) % params.p


def subspace(basis: TruncatedBasis, params: LensParams) -> np.ndarray:
    """Indices of the basis vectors spanning H_K."""
    idx = [
        i
        for i, v in enumerate(basis.vectors)
        if _exponent(v.two_mu, v.two_n, params) == params.K
    ]
    return np.array(idx, dtype=np.int64)


def irreducible_structures(p: int) -> list[int]:
    """The K values giving irreducible triples: [0] for odd p, [0, p/2] for even."""
    if p < 1:
        raise ValueError("p must be positive")
    return [0] if p % 2 else [0, p // 2]


def multiplicity(two_j: int, arrow: str, params: LensParams) -> int:
    """Brute-force count of (mu, n) in H_K at level (j, arrow).

    This enumeration is the oracle every closed form is checked against.
    """
    up = arrow == "up"
    if not up and two_j < 1:
        return 0
    n_bound = two_j + 1 if up else two_j - 1
    count = 0
    for two_mu in range(-two_j, two_j + 1, 2):
        for two_n in range(-n_bound, n_bound + 1, 2):
            if _exponent(two_mu, two_n, params) == params.K:
                count += 1
    return count


@dataclass
class SpectrumTable:
    """Dirac eigenvalue -> multiplicity, eigenvalues stored as 2*lambda."""

    p: int
    r: int
    K: int
    two_jmax: int
    provenance: Provenance
    entries: dict[int, int] = field(default_factory=dict)

    def mult(self, two_lambda: int) -> int:
        return self.entries.get(two_lambda, 0)

    def nonzero(self) -> dict[int, int]:
        return {tl: m for tl, m in sorted(self.entries.items()) if m}

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "K": self.K,
            "two_jmax": self.two_jmax,
            "provenance": self.provenance,
            "entries": [
                {"two_lambda": tl, "mult": m} for tl, m in sorted(self.entries.items())
            ],
        }


def spectrum(params: LensParams, two_jmax: int) -> SpectrumTable:
    """Enumerated Dirac spectrum on H_K up to the truncation."""
    entries: dict[int, int] = {}
    for two_j in range(two_jmax + 1):
        up = multiplicity(two_j, "up", params)
        if up:
            entries[2 * two_j + 3] = entries.get(2 * two_j + 3, 0) + up
        if two_j >= 1:
            down = multiplicity(two_j, "down", params)
            if down:
                entries[-(2 * two_j + 1)] = entries.get(-(2 * two_j + 1), 0) + down
    return SpectrumTable(params.p, params.r, params.K, two_jmax, "enumerated", entries)


# ---------------------------------------------------------------------------
# Closed forms for r = -1
# ---------------------------------------------------------------------------


def _emit(entries: dict[int, int], two_lambda: int, mult: int) -> None:
    entries[two_lambda] = entries.get(two_lambda, 0) + mult


def closed_form_spectrum(
    p: int, K: int, two_jmax: int, variant: str = "printed"
) -> SpectrumTable:
    """Closed-form Dirac spectrum of L(p, p-1) (i.e. r = -1) on H_K.

    ``printed`` reproduces the published families verbatim; ``corrected``
    is the oracle-consistent version (see the module docstring for the
    exact replacements).  Emitted eigenvalues are clipped to the window
    reachable with two_j <= two_jmax; zero multiplicities (the lambda = 1/2
    entry at k = l = 0) are kept so the absence is visible.
    """
    if variant not in ("printed", "corrected"):
        raise ValueError(f"unknown variant {variant!r}")
    if K not in irreducible_structures(p):
        raise ValueError(f"closed forms exist only for K in {irreducible_structures(p)}")
    entries: dict[int, int] = {}
    max_pos = 2 * two_jmax + 3  # 2*(2j + 3/2)
    max_neg = 2 * two_jmax + 1  # |2*(-(2j + 1/2))|

    def pos_in_range(two_lambda: int) -> bool:
        return 3 <= two_lambda <= max_pos

    def neg_in_range(two_lambda: int) -> bool:
        return -max_neg <= two_lambda <= -3

    if p % 2 == 1:
        # lambda = 2kp + 2l + 1/2, mult 2(2k+1)(kp + l)
        k = 0
        while 4 * k * p + 1 <= max_pos:
            for l in range(p):
                tl = 4 * k * p + 4 * l + 1
                if pos_in_range(tl) or (k == 0 and l == 0):
                    _emit(entries, tl, 2 * (2 * k + 1) * (k * p + l))
            k += 1
        # lambda = (2k+1)p + 2l + 1/2, mult (2k+2)((2k+1)p + 2l)
        k = 0
        while 2 * (2 * k + 1) * p + 1 <= max_pos:
            for l in range(p):
                tl = 2 * (2 * k + 1) * p + 4 * l + 1
                if pos_in_range(tl):
                    _emit(entries, tl, (2 * k + 2) * ((2 * k + 1) * p + 2 * l))
            k += 1
        # lambda = -2kp - 2l - 3/2
        k = 0
        while -(4 * k * p + 3) >= -max_neg:
            for l in range(p):
                tl = -(4 * k * p + 4 * l + 3)
                if neg_in_range(tl):
                    mult = (
                        2 * (2 * k + 1) * (k * p + 2 * l + 1)
                        if variant == "printed"
                        else 2 * (2 * k + 1) * (k * p + l + 1)
                    )
                    _emit(entries, tl, mult)
            k += 1
        # printed: lambda = -(2k+1)p - 2l + 1/2; corrected: ... - 3/2
        k = 0
        while 2 * (2 * k + 1) * p - 1 <= max_neg + 4 * p:
            for l in range(p):
                if variant == "printed":
                    tl = -(2 * (2 * k + 1) * p + 4 * l - 1)
                else:
                    tl = -(2 * (2 * k + 1) * p + 4 * l + 3)
                if neg_in_range(tl):
                    _emit(entries, tl, (2 * k + 2) * ((2 * k + 1) * p + 2 * l + 2))
            k += 1
    else:
        P = p // 2
        if K == 0:
            if variant == "printed":
                k = 0
                while 4 * k * p + 1 <= max_pos:
                    for l in range(p):
                        tl = 4 * k * p + 4 * l + 1
                        if pos_in_range(tl) or (k == 0 and l == 0):
                            _emit(entries, tl, 2 * (2 * k + 1) * (k * p + l))
                    k += 1
                k = 0
                while -(4 * k * p + 3) >= -max_neg:
                    for l in range(p):
                        tl = -(4 * k * p + 4 * l + 3)
                        if neg_in_range(tl):
                            _emit(entries, tl, 2 * (2 * k + 1) * (k * p + l + 1))
                    k += 1
            else:
                # n = 0 (mod P), n integer, so two_j odd; count floor-style
                for two_j in range(1, two_jmax + 1, 2):
                    n_up = (two_j + 1) // 2 // P * 2 + 1
                    _emit(entries, 2 * two_j + 3, (two_j + 1) * n_up)
                    n_dn = (two_j - 1) // 2 // P * 2 + 1
                    _emit(entries, -(2 * two_j + 1), (two_j + 1) * n_dn)
        else:
            if variant == "printed":
                k = 0
                while 2 * (2 * k + 1) * P + 1 <= max_pos:
                    for l in range(P):
                        tl = 2 * (2 * k + 1) * P + 4 * l + 1
                        if pos_in_range(tl):
                            _emit(entries, tl, (2 * k + 2) * ((2 * k + 1) * p + 2 * l))
                    k += 1
                k = 0
                while -(2 * (2 * k + 1) * P + 3) >= -max_neg:
                    for l in range(P):
                        tl = -(2 * (2 * k + 1) * P + 4 * l + 3)
                        if neg_in_range(tl):
                            _emit(entries, tl, (2 * k + 2) * ((2 * k + 1) * p + 2 * l + 2))
                    k += 1
            else:
                # n = P/2 (mod P); n integer iff P even, half-odd iff P odd
                parity = 1 if P % 2 == 0 else 0  # required two_j parity
                for two_j in range(two_jmax + 1):
                    if two_j % 2 != parity:
                        continue
                    cnt_up = _half_shift_count(two_j + 1, P)
                    if cnt_up:
                        _emit(entries, 2 * two_j + 3, (two_j + 1) * cnt_up)
                    if two_j >= 1:
                        cnt_dn = _half_shift_count(two_j - 1, P)
                        if cnt_dn:
                            _emit(entries, -(2 * two_j + 1), (two_j + 1) * cnt_dn)
    provenance: Provenance = (
        "closed_form_printed" if variant == "printed" else "closed_form_corrected"
    )
    return SpectrumTable(p, -1, K, two_jmax, provenance, entries)


def _half_shift_count(two_bound: int, P: int) -> int:
    """#{n : n = P/2 + tP, t integer, |2n| <= two_bound}."""
    # solutions come in symmetric pairs +-(P/2 + sP), s >= 0
    if two_bound < P:
        return 0
    return 2 * ((two_bound - P) // (2 * P) + 1)


@dataclass
class TableComparison:
    """Where a closed-form table deviates from the enumeration oracle."""

    p: int
    K: int
    variant: str
    two_jmax: int
    mismatches: list[dict]

    @property
    def matches(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "K": self.K,
            "variant": self.variant,
            "two_jmax": self.two_jmax,
            "matches": self.matches,
            "mismatches": self.mismatches,
        }


def compare_with_oracle(p: int, K: int, two_jmax: int, variant: str) -> TableComparison:
    """Check a closed-form table entry-by-entry against enumeration (r = -1)."""
    oracle = spectrum(LensParams(p, -1 if p > 1 else 1, K), two_jmax)
    closed = closed_form_spectrum(p, K, two_jmax, variant)
    mismatches = []
    for tl in sorted(set(oracle.entries) | set(closed.entries)):
        if not (-(2 * two_jmax + 1) <= tl <= 2 * two_jmax + 3):
            continue
        em, cm = oracle.mult(tl), closed.mult(tl)
        if em != cm:
            mismatches.append({"two_lambda": tl, "enumerated": em, "closed_form": cm})
    return TableComparison(p, K, variant, two_jmax, mismatches)


# ---------------------------------------------------------------------------
# The r <-> -r unitary equivalence on labels
# ---------------------------------------------------------------------------


@dataclass
class EquivalenceMap:
    """Label bijection (j, mu, n, up) <-> (j + 1/2, n, mu, down).

    Rows whose image leaves the truncation are dropped and listed.
    """

    mapping: dict[int, int]
    dropped: list[int]


def equivalence_bijection(basis: TruncatedBasis, params: LensParams) -> EquivalenceMap:
    """The label map implementing the r -> -r equivalence on H_K.

    It preserves the phase exponent with r negated, so it maps H_K(p, r)
    onto H_K(p, -r) whenever K = 0 or K = p/2; phases are not tracked.
    """
    mapping: dict[int, int] = {}
    dropped: list[int] = []
    for i, v in enumerate(basis.vectors):
        if v.up:
            tj, up_t = v.two_j + 1, False
        else:
            tj, up_t = v.two_j - 1, True
        tmu, tn = v.two_n, v.two_mu
        if tj > basis.two_jmax:
            dropped.append(i)
            continue
        assert is_valid_label(tj, tmu, tn, up_t)
        mapping[i] = basis.index[(tj, tmu, tn, up_t)]
    return EquivalenceMap(mapping, dropped)


# ---------------------------------------------------------------------------
# Lattice diagrams
# ---------------------------------------------------------------------------

Marker = Literal["star", "diamond", "circle", "empty"]


@dataclass
class LatticeDiagram:
    """Markers on the (mu, n) lattice: which sites of H land in H_K.

    A cell holds basis vectors iff two_mu + two_n is odd; all vectors at a
    cell share the parity of two_j = two_mu (mod 2), so a cell is a star
    (integer j) or a diamond (half-integer j) when it satisfies the
    congruence, and a small circle otherwise.
    """

    params: LensParams
    extent: int
    cells: dict[tuple[int, int], Marker]

    def marker(self, two_mu: int, two_n: int) -> Marker:
        return self.cells.get((two_mu, two_n), "empty")


def lattice_diagram(params: LensParams, extent: int) -> LatticeDiagram:
    """Diagram over |two_mu| <= extent, |two_n| <= extent + 1."""
    if extent < 1:
        raise ValueError("extent must be at least 1")
    cells: dict[tuple[int, int], Marker] = {}
    for two_mu in range(-extent, extent + 1):
        for two_n in range(-extent - 1, extent + 2):
            if (two_mu + two_n) % 2 == 0:
                cells[(two_mu, two_n)] = "empty"
            elif _exponent(two_mu, two_n, params) == params.K:
                cells[(two_mu, two_n)] = "star" if two_mu % 2 == 0 else "diamond"
            else:
                cells[(two_mu, two_n)] = "circle"
    return LatticeDiagram(params, extent, cells)


_ASCII = {"star": "*", "diamond": "#", "circle": ".", "empty": " "}


def render_ascii(diagram: LatticeDiagram) -> str:
    """Rows run from n = +max down to -max, columns from mu = -max to +max."""
    ext = diagram.extent
    lines = []
    for two_n in range(ext + 1, -ext - 2, -1):
        row = [_ASCII[diagram.marker(two_mu, two_n)] for two_mu in range(-ext, ext + 1)]
        lines.append(" ".join(row).rstrip())
    return "\n".join(lines) + "\n"


def render_svg(diagram: LatticeDiagram) -> str:
    """Standalone SVG 1.1 with the marker legend and dashed j-windows."""
    ext = diagram.extent
    cell = 24
    pad = 40
    width = (2 * ext) * cell // 1 + 2 * pad
    height = (2 * ext + 2) * cell + 2 * pad
    ox = pad + ext * cell
    oy = pad + (ext + 1) * cell

    def x(two_mu: int) -> float:
        return ox + two_mu * cell / 2

    def y(two_n: int) -> float:
        return oy - two_n * cell / 2

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    p = diagram.params
    parts.append(
        f'<text x="{pad}" y="{pad - 16}" font-size="13" font-family="sans-serif">'
        f"H_{p.K} for p={p.p}, r={p.r} (star: integer j, diamond: half-integer j, "
        f"dot: excluded)</text>"
    )
    # dashed rectangles: the (mu, n) window of the up-spinors at level j
    for two_j in range(0, min(2 * ext, 6) + 1, 2):
        hw = two_j * cell / 4
        hh = (two_j + 1) * cell / 4
        parts.append(
            f'<rect x="{ox - hw - cell / 4:.1f}" y="{oy - hh - cell / 4:.1f}" '
            f'width="{2 * hw + cell / 2:.1f}" height="{2 * hh + cell / 2:.1f}" '
            f'fill="none" stroke="#999" stroke-dasharray="4 3"/>'
        )
    parts.append(f'<circle cx="{ox:.1f}" cy="{oy:.1f}" r="{cell / 3:.1f}" fill="none" stroke="black"/>')
    for (two_mu, two_n), marker in sorted(diagram.cells.items()):
        cx, cy = x(two_mu), y(two_n)
        if marker == "star":
            pts = []
            for i in range(10):
                rad = cell / 3 if i % 2 == 0 else cell / 8
                ang = math.pi / 2 + i * math.pi / 5
                pts.append(f"{cx + rad * math.cos(ang):.2f},{cy - rad * math.sin(ang):.2f}")
            parts.append(f'<polygon points="{" ".join(pts)}" fill="black"/>')
        elif marker == "diamond":
            r = cell / 3
            parts.append(
                f'<polygon points="{cx:.2f},{cy - r:.2f} {cx + r:.2f},{cy:.2f} '
                f'{cx:.2f},{cy + r:.2f} {cx - r:.2f},{cy:.2f}" fill="black"/>'
            )
        elif marker == "circle":
            parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{cell / 9:.2f}" fill="#aaa"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
