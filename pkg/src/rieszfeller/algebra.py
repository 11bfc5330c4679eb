"""Complexified universal Clifford algebra Cl(0,n) with the Banach-algebra norm.

Blades e_A are indexed by subsets A of {1..n} packed as bit masks (bit j-1
set iff generator e_j belongs to A), so a multivector is a flat array of
2**n complex coefficients.  The generators anticommute and square to -1:

    e_j e_k + e_k e_j = -2 delta_jk e_0

The norm used throughout is |lam|_0 = 2**(n/2) * sqrt(sum_A |lam_A|^2),
which is submultiplicative and makes the algebra a Banach algebra (note
|e_0|_0 = 2**(n/2), not 1).
"""

from __future__ import annotations

import numpy as np

MAX_GENERATORS = 12  # dense storage: 2**n coefficients per element


def _popcount_table(dim: int) -> np.ndarray:
    return np.array([bin(i).count("1") for i in range(dim)], dtype=np.int64)


class CliffordAlgebra:
    """The algebra Cl(0,n) over the complex numbers, one shared instance per n.

    Holds the precomputed blade-product sign table.  The product of basis
    blades is e_A e_B = sign(A,B) e_{A xor B}, where sign counts the
    transpositions needed to sort the concatenated generator list plus one
    factor -1 per repeated generator (e_j**2 = -1).
    """

    _instances: dict[int, "CliffordAlgebra"] = {}

    def __new__(cls, n: int):
        if not 1 <= n <= MAX_GENERATORS:
            raise ValueError(f"generator count must be in [1, {MAX_GENERATORS}], got {n}")
        inst = cls._instances.get(n)
        if inst is None:
            inst = super().__new__(cls)
            cls._instances[n] = inst
        return inst

    def __init__(self, n: int):
        if getattr(self, "_ready", False):
            return
        self.n = int(n)
        self.dim = 1 << n
        self._pop = _popcount_table(self.dim)
        self.sign_table = self._build_sign_table()
        grades = self._pop
        # Clifford conjugate: bar(e_A) = (-1)**(|A|(|A|+1)/2) e_A
        self.dagger_signs = np.where((grades * (grades + 1) // 2) % 2, -1, 1).astype(np.int8)
        self.blade_indices = np.arange(self.dim)
        self._ready = True

    def _build_sign_table(self) -> np.ndarray:
        dim = self.dim
        a = np.arange(dim)[:, None]
        b = np.arange(dim)[None, :]
        swaps = np.zeros((dim, dim), dtype=np.int64)
        for j in range(self.n):
            # generators of B at position j hop over the generators of A above j
            swaps += ((b >> j) & 1) * self._pop[a >> (j + 1)]
        swaps += self._pop[a & b]  # each repeated generator contributes e_j**2 = -1
        table = np.where(swaps & 1, -1, 1).astype(np.int8)
        table.setflags(write=False)
        return table

    def grade(self, index: int) -> int:
        return int(self._pop[index])

    # -- element constructors -------------------------------------------------

    def multivector(self, coeffs) -> "Multivector":
        return Multivector(self, coeffs)

    def zero(self) -> "Multivector":
        return Multivector(self, np.zeros(self.dim, dtype=complex))

    def scalar(self, value: complex) -> "Multivector":
        c = np.zeros(self.dim, dtype=complex)
        c[0] = value
        return Multivector(self, c)

    def blade(self, index: int, value: complex = 1.0) -> "Multivector":
        if not 0 <= index < self.dim:
            raise ValueError(f"blade index {index} out of range for n={self.n}")
        c = np.zeros(self.dim, dtype=complex)
        c[index] = value
        return Multivector(self, c)

    def generator(self, j: int) -> "Multivector":
        """The generator e_j, 1-based."""
        if not 1 <= j <= self.n:
            raise ValueError(f"generator index must be in [1, {self.n}], got {j}")
        return self.blade(1 << (j - 1))

    def vector(self, coords) -> "Multivector":
        coords = np.asarray(coords)
        if coords.shape != (self.n,):
            raise ValueError(f"expected {self.n} coordinates, got shape {coords.shape}")
        c = np.zeros(self.dim, dtype=complex)
        for j in range(self.n):
            c[1 << j] = coords[j]
        return Multivector(self, c)

    def random(self, rng: np.random.Generator, scale: float = 1.0) -> "Multivector":
        c = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        return Multivector(self, scale * c)

    def __repr__(self) -> str:
        return f"CliffordAlgebra(n={self.n})"


def blade_product(a: int, b: int, n: int) -> tuple[int, int]:
    """Product of basis blades: e_a e_b = sign * e_c with c = a xor b.

    Returns (sign, c).  Total function on valid indices.
    """
    alg = CliffordAlgebra(n)
    if not (0 <= a < alg.dim and 0 <= b < alg.dim):
        raise ValueError(f"blade indices must be below 2**{n}")
    return int(alg.sign_table[a, b]), a ^ b


def left_multiply_array(alg: CliffordAlgebra, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Clifford product a*b on coefficient arrays whose last axis is the blade axis.

    `a` and `b` broadcast against each other on the leading axes; `a` acts
    from the left.  Skips blades of `a` that vanish identically, so sparse
    left factors (scalars, vectors, paravectors) cost O(active * dim).
    """
    a = np.asarray(a)
    b = np.asarray(b)
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape, dtype=complex)
    all_blades = alg.blade_indices
    for blade in range(alg.dim):
        col = a[..., blade]
        if not np.any(col):
            continue
        perm = blade ^ all_blades  # permutation of the blade axis: no collisions
        out[..., perm] += alg.sign_table[blade] * col[..., None] * b
    return out


def norm0_array(alg: CliffordAlgebra, coeffs: np.ndarray) -> np.ndarray:
    """|.|_0 over the last (blade) axis: 2**(n/2) * euclidean coefficient norm."""
    return 2.0 ** (alg.n / 2.0) * np.sqrt(np.sum(np.abs(coeffs) ** 2, axis=-1))


def dagger_array(alg: CliffordAlgebra, coeffs: np.ndarray) -> np.ndarray:
    """Dagger conjugation over the last axis: blade conjugation + complex conjugate."""
    return alg.dagger_signs * np.conj(coeffs)


class Multivector:
    """Immutable element of the complexified Cl(0,n).

    Coefficients are stored as a read-only complex array of length 2**n
    indexed by blade bit masks; index 0 is the scalar part.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: CliffordAlgebra, coeffs):
        coeffs = np.asarray(coeffs, dtype=complex)
        if coeffs.shape != (algebra.dim,):
            raise ValueError(
                f"expected {algebra.dim} coefficients for n={algebra.n}, got shape {coeffs.shape}"
            )
        coeffs = coeffs.copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "algebra", algebra)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("Multivector is immutable")

    def _check_same(self, other: "Multivector") -> None:
        if self.algebra is not other.algebra:
            raise ValueError(
                f"signature mismatch: n={self.algebra.n} vs n={other.algebra.n}"
            )

    @property
    def scalar_part(self) -> complex:
        return complex(self.coeffs[0])

    def __add__(self, other: "Multivector") -> "Multivector":
        self._check_same(other)
        return Multivector(self.algebra, self.coeffs + other.coeffs)

    def __sub__(self, other: "Multivector") -> "Multivector":
        self._check_same(other)
        return Multivector(self.algebra, self.coeffs - other.coeffs)

    def __neg__(self) -> "Multivector":
        return Multivector(self.algebra, -self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Multivector):
            self._check_same(other)
            return Multivector(
                self.algebra, left_multiply_array(self.algebra, self.coeffs, other.coeffs)
            )
        return Multivector(self.algebra, self.coeffs * other)

    def __rmul__(self, other):
        # scalar * multivector; multivector * multivector goes through __mul__
        return Multivector(self.algebra, other * self.coeffs)

    def dagger(self) -> "Multivector":
        return Multivector(self.algebra, dagger_array(self.algebra, self.coeffs))

    def norm0(self) -> float:
        return float(norm0_array(self.algebra, self.coeffs))

    def inner(self, other: "Multivector") -> complex:
        """(lam, mu)_0 = 2**n sum_A lam_A conj(mu_A); the second argument is conjugated."""
        self._check_same(other)
        return complex(self.algebra.dim * np.sum(self.coeffs * np.conj(other.coeffs)))

    def isclose(self, other: "Multivector", atol: float = 1e-12) -> bool:
        self._check_same(other)
        return bool(np.allclose(self.coeffs, other.coeffs, rtol=0.0, atol=atol))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.algebra is other.algebra and bool(
            np.array_equal(self.coeffs, other.coeffs)
        )

    def __hash__(self):
        return hash((self.algebra.n, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        terms = []
        for idx in range(self.algebra.dim):
            c = self.coeffs[idx]
            if c == 0:
                continue
            gens = [j + 1 for j in range(self.algebra.n) if idx >> j & 1]
            label = "e0" if not gens else "e" + "".join(str(g) for g in gens)
            terms.append(f"({c:.6g})*{label}")
        body = " + ".join(terms) if terms else "0"
        return f"Multivector[n={self.algebra.n}]({body})"


def mv_multiply(lam: Multivector, mu: Multivector) -> Multivector:
    return lam * mu


def mv_dagger(lam: Multivector) -> Multivector:
    return lam.dagger()


def mv_norm0(lam: Multivector) -> float:
    return lam.norm0()


def mv_inner(lam: Multivector, mu: Multivector) -> complex:
    return lam.inner(mu)
