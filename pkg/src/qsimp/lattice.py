"""Rational lattices between Z^d and Q^d, and their integer annihilators.

A RationalLattice models a finite subgroup of the d-torus as its full
preimage L under R^d -> T^d, so Z^d is a sublattice of L by construction.
The canonical form is the pair (minimal denominator D, row Hermite form of
D*L); two equal subgroups always produce identical representations, which
is what stabilization detection in the chain iteration keys on.

Throughout, lattice bases are stored as row stacks and matrices act on
column vectors, so applying an endomorphism T to a lattice multiplies the
basis on the right by T transpose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, SingularMatrix
from .intmat import IntMatrix, adjugate, det, hnf_rows


@dataclass(frozen=True)
class RationalLattice:
    """Full-rank lattice L with Z^d <= L <= Q^d in canonical form.

    `basis` is the row HNF of denom * L, an integer lattice squeezed
    between denom * Z^d and Z^d.
    """

    dim: int
    denom: int
    basis: IntMatrix


@dataclass(frozen=True)
class IntegerSublattice:
    """Full-rank sublattice M <= Z^d with a row HNF basis."""

    dim: int
    basis: IntMatrix


def _canonical(dim: int, denom: int, int_rows: Sequence[Sequence[int]]) -> RationalLattice:
    """Canonicalize the lattice generated by int_rows / denom plus Z^d."""
    stacked = [list(row) for row in int_rows]
    for i in range(dim):
        stacked.append([denom if j == i else 0 for j in range(dim)])
    h = hnf_rows(stacked, dim)
    g = 0
    for row in h.rows:
        for x in row:
            g = math.gcd(g, x)
    if g > 1:
        # dividing an HNF matrix by a common factor keeps it in HNF
        h = IntMatrix([[x // g for x in row] for row in h.rows])
        denom //= g
    return RationalLattice(dim, denom, h)


def standard(dim: int) -> RationalLattice:
    """Z^d, the bottom of every chain."""
    return RationalLattice(dim, 1, IntMatrix.identity(dim))


def from_rational_rows(dim: int, denom: int, int_rows: Sequence[Sequence[int]]) -> RationalLattice:
    """Lattice generated by int_rows / denom together with Z^d."""
    if denom <= 0:
        raise ValueError("denominator must be positive")
    return _canonical(dim, denom, int_rows)


def from_kernel(g: IntMatrix) -> RationalLattice:
    """G^{-1} Z^d, whose image in the torus is the kernel of the G-endomorphism."""
    dg = det(g)
    if dg == 0:
        raise SingularMatrix("kernel lattice needs det != 0")
    rows = adjugate(g).transpose().rows
    return _canonical(g.dim, abs(dg), rows)


def join(l1: RationalLattice, l2: RationalLattice) -> RationalLattice:
    """Smallest lattice containing both operands."""
    if l1.dim != l2.dim:
        raise DimensionMismatch("join of lattices of different dimensions")
    d = math.lcm(l1.denom, l2.denom)
    s1 = d // l1.denom
    s2 = d // l2.denom
    rows = [[x * s1 for x in row] for row in l1.basis.rows]
    rows += [[x * s2 for x in row] for row in l2.basis.rows]
    return _canonical(l1.dim, d, rows)


def pushforward(f: IntMatrix, l: RationalLattice) -> RationalLattice:
    """F*L + Z^d, the image of L under the F-endomorphism plus the base lattice."""
    if det(f) == 0:
        raise SingularMatrix("pushforward needs det != 0")
    if f.dim != l.dim:
        raise DimensionMismatch("pushforward dimension mismatch")
    rows = (l.basis @ f.transpose()).rows
    return _canonical(l.dim, l.denom, rows)


def preimage(g: IntMatrix, l: RationalLattice) -> RationalLattice:
    """G^{-1} L, the full preimage of L under the G-endomorphism."""
    dg = det(g)
    if dg == 0:
        raise SingularMatrix("preimage needs det != 0")
    if g.dim != l.dim:
        raise DimensionMismatch("preimage dimension mismatch")
    rows = (l.basis @ adjugate(g).transpose()).rows
    return _canonical(l.dim, l.denom * abs(dg), rows)


def index(l: RationalLattice) -> int:
    """[L : Z^d], the order of the modeled torus subgroup."""
    d = det(l.basis)
    num = l.denom**l.dim
    assert num % d == 0
    return num // d


def contains(l: RationalLattice, x: Sequence) -> bool:
    """Membership of a rational vector, exact."""
    if len(x) != l.dim:
        raise DimensionMismatch("vector length does not match lattice dimension")
    v = []
    for xi in x:
        s = Fraction(xi) * l.denom
        if s.denominator != 1:
            return False
        v.append(s.numerator)
    return _member_rows(l.basis, v)


def equals(l1: RationalLattice, l2: RationalLattice) -> bool:
    return l1 == l2


def _member_rows(basis: IntMatrix, v: list[int]) -> bool:
    # back-substitution against an upper-triangular HNF row basis
    v = list(v)
    d = basis.dim
    for i in range(d):
        piv = basis.rows[i][i]
        if v[i] % piv:
            return False
        q = v[i] // piv
        if q:
            for j in range(i, d):
                v[j] -= q * basis.rows[i][j]
    return True


def dual_annihilator(l: RationalLattice) -> IntegerSublattice:
    """Characters m in Z^d with <m, L> <= Z.

    With B the basis of D*L, the annihilator is the column lattice of
    D*B^{-1}, which is integral precisely because D*Z^d <= D*L.
    """
    b = l.basis
    dt = det(b)
    adj_t = adjugate(b).transpose()
    rows = []
    for row in adj_t.rows:
        out = []
        for x in row:
            num = l.denom * x
            assert num % dt == 0
            out.append(num // dt)
        rows.append(out)
    return IntegerSublattice(l.dim, hnf_rows(rows, l.dim))


def dual_lattice(m: IntegerSublattice) -> RationalLattice:
    """The rational lattice of vectors pairing integrally with M.

    Inverse of dual_annihilator: dual_lattice(dual_annihilator(l)) == l.
    """
    b = m.basis
    rows = adjugate(b.transpose()).rows
    return _canonical(m.dim, det(b), rows)


def sublattice_from_rows(dim: int, rows: Sequence[Sequence[int]]) -> IntegerSublattice:
    return IntegerSublattice(dim, hnf_rows(rows, dim))


def sublattice_index(m: IntegerSublattice) -> int:
    """[Z^d : M]."""
    return det(m.basis)


def sublattice_contains(m: IntegerSublattice, v: Sequence[int]) -> bool:
    if len(v) != m.dim:
        raise DimensionMismatch("vector length does not match lattice dimension")
    return _member_rows(m.basis, [int(x) for x in v])


def sublattice_transform(m: IntegerSublattice, t: IntMatrix) -> IntegerSublattice:
    """Image {T x : x in M}; requires det(T) != 0 to stay full rank."""
    if det(t) == 0:
        raise SingularMatrix("transform needs det != 0")
    rows = (m.basis @ t.transpose()).rows
    return IntegerSublattice(m.dim, hnf_rows(rows, m.dim))


def sublattice_intersect(m1: IntegerSublattice, m2: IntegerSublattice) -> IntegerSublattice:
    """M1 and M2 meet where their duals join."""
    if m1.dim != m2.dim:
        raise DimensionMismatch("intersection of different dimensions")
    return dual_annihilator(join(dual_lattice(m1), dual_lattice(m2)))
